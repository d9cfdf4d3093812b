#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <vector>

#include "maskgrid/errors.hpp"
#include "maskgrid/geometry.hpp"
#include "maskgrid/masker.hpp"
#include "maskgrid/reduce.hpp"
#include "maskgrid/statespace.hpp"

// Descent over isometries: minimize the spread of both reduced matrices
// across a target state set. Columns are re-orthonormalized after every
// Euclidean step, with backtracking keeping the objective monotone.

namespace maskgrid {

struct SearchConfig {
  double step = 0.5;
  int max_iterations = 2000;
  double tol = 1e-10;
  std::uint64_t seed = 1;
};

struct SearchResult {
  Masker masker;
  double objective = 0.0;
  std::vector<double> trace;  // objective after each accepted iterate, trace[0] at the start
  bool converged = false;
};

// J = sum over states of the squared Frobenius distance of each side's
// reduced matrix from the set mean; zero exactly on masked sets.
inline double masking_objective(const Masker& m, const std::vector<PureState>& states) {
  require(!states.empty(), Errc::invalid_argument, "objective needs at least one state");
  const std::size_t S = states.size();
  std::vector<Mat> rhoA(S), rhoB(S);
  Mat meanA = Mat::Zero(m.dA, m.dA), meanB = Mat::Zero(m.dB, m.dB);
  for (std::size_t s = 0; s < S; ++s) {
    const BipartiteState img = apply(m, states[s]);
    rhoA[s] = partial_trace_B(img);
    rhoB[s] = partial_trace_A(img);
    meanA += rhoA[s];
    meanB += rhoB[s];
  }
  meanA /= static_cast<double>(S);
  meanB /= static_cast<double>(S);
  double j = 0.0;
  for (std::size_t s = 0; s < S; ++s)
    j += (rhoA[s] - meanA).squaredNorm() + (rhoB[s] - meanB).squaredNorm();
  return j;
}

// Gradient of J with respect to the conjugated coefficients, so a plain
// step against it is steepest descent. The mean's own dependence on the
// coefficients drops out because the deviations sum to zero.
inline Mat objective_gradient(const Masker& m, const std::vector<PureState>& states) {
  require(!states.empty(), Errc::invalid_argument, "gradient needs at least one state");
  const std::size_t S = states.size();
  const int dA = m.dA, dB = m.dB;

  std::vector<Mat> M(S), rhoA(S), rhoB(S);
  Mat meanA = Mat::Zero(dA, dA), meanB = Mat::Zero(dB, dB);
  for (std::size_t s = 0; s < S; ++s) {
    require(states[s].dim() == dA, Errc::dimension_mismatch, "state dimension does not match masker");
    const Vec psi = m.V * states[s].amps;
    M[s] = Eigen::Map<const Mat>(psi.data(), dB, dA).transpose();  // M[s](j, mm) = psi(j*dB+mm)
    rhoA[s] = M[s] * M[s].adjoint();
    rhoB[s] = M[s].transpose() * M[s].conjugate();
    meanA += rhoA[s];
    meanB += rhoB[s];
  }
  meanA /= static_cast<double>(S);
  meanB /= static_cast<double>(S);

  Mat W = Mat::Zero(static_cast<Eigen::Index>(dA) * dB, dA);
  for (std::size_t s = 0; s < S; ++s) {
    const Mat G = 2.0 * ((rhoA[s] - meanA) * M[s] + M[s] * (rhoB[s] - meanB).conjugate());
    for (int j = 0; j < dA; ++j)
      for (int mm = 0; mm < dB; ++mm) {
        const Eigen::Index r = static_cast<Eigen::Index>(j) * dB + mm;
        for (int k = 0; k < dA; ++k) W(r, k) += std::conj(states[s].amps(k)) * G(j, mm);
      }
  }
  return W;
}

inline SearchResult optimize_masker(const std::vector<PureState>& states, int dA, int dB,
                                    const SearchConfig& config) {
  require(config.step > 0.0, Errc::invalid_argument, "step size must be positive");
  require(config.max_iterations >= 1, Errc::invalid_argument, "need at least one iteration");
  for (const PureState& p : states)
    require(p.dim() == dA, Errc::dimension_mismatch, "state dimension does not match search dims");

  Masker m = random_isometry(dA, dB, config.seed);
  double j = masking_objective(m, states);

  SearchResult result;
  result.trace.push_back(j);
  double eta = config.step;
  int stalled = 0;

  for (int it = 0; it < config.max_iterations && j > config.tol; ++it) {
    const Mat W = objective_gradient(m, states);
    if (W.norm() == 0.0) break;

    bool accepted = false;
    Masker trial = m;
    double jt = j;
    for (int bt = 0; bt < 60; ++bt) {
      trial.V = qr_orthonormalize(m.V - eta * W);
      jt = masking_objective(trial, states);
      if (jt <= j) {
        accepted = true;
        break;
      }
      eta *= 0.5;
    }
    if (!accepted) break;

    stalled = (j - jt <= 1e-18 * std::max(1.0, j)) ? stalled + 1 : 0;
    m = trial;
    j = jt;
    result.trace.push_back(j);
    eta = std::min(eta * 1.5, 1e3);
    if (stalled >= 20) break;
  }

  result.masker = std::move(m);
  result.objective = j;
  result.converged = j <= config.tol;
  return result;
}

namespace detail {

// Gauss-Newton projection of a box sample onto the constraint set, in the
// raw angle parameters. The embedded point stays a unit state throughout,
// so only the hyperplane part needs solving.
inline bool project_to_circle(const std::vector<LinearConstraint>& constraints, HyperAngles& h) {
  const int nv = 2 * (h.dim() - 1);
  const auto residual = [&](const HyperAngles& a) {
    const XiVector xi = xi_embed(PureState{angles_to_amplitudes(a)});
    Eigen::VectorXd r(static_cast<Eigen::Index>(constraints.size()));
    for (std::size_t i = 0; i < constraints.size(); ++i)
      r(static_cast<Eigen::Index>(i)) = constraint_residual(constraints[i], xi);
    return r;
  };
  const auto get = [&](HyperAngles& a, int c) -> double& {
    const std::size_t half = a.x.size();
    return c < static_cast<int>(half) ? a.x[static_cast<std::size_t>(c)]
                                      : a.y[static_cast<std::size_t>(c) - half];
  };

  Eigen::VectorXd r = residual(h);
  for (int outer = 0; outer < 50; ++outer) {
    if (r.lpNorm<Eigen::Infinity>() < 1e-11) return true;
    const double hstep = 1e-7;
    Eigen::MatrixXd J(r.size(), nv);
    for (int c = 0; c < nv; ++c) {
      HyperAngles plus = h, minus = h;
      get(plus, c) += hstep;
      get(minus, c) -= hstep;
      J.col(c) = (residual(plus) - residual(minus)) / (2.0 * hstep);
    }
    Eigen::VectorXd delta = J.colPivHouseholderQr().solve(-r);

    double scale = 1.0;
    bool improved = false;
    for (int bt = 0; bt < 30; ++bt) {
      HyperAngles trial = h;
      for (int c = 0; c < nv; ++c) get(trial, c) += scale * delta(c);
      for (double& x : trial.x) x = std::min(std::max(x, 1e-9), half_pi - 1e-9);
      for (double& y : trial.y) {
        y = std::fmod(y, two_pi);
        if (y < 0.0) y += two_pi;
      }
      const Eigen::VectorXd rt = residual(trial);
      if (rt.lpNorm<Eigen::Infinity>() <= r.lpNorm<Eigen::Infinity>()) {
        h = trial;
        r = rt;
        improved = true;
        break;
      }
      scale *= 0.5;
    }
    if (!improved) return false;
  }
  return r.lpNorm<Eigen::Infinity>() < 1e-11;
}

}  // namespace detail

// Sample states on the spherical circle cut out by the given constraint
// rows, then search for an isometry masking them. Failures at dimension
// three and up are findings, not errors; an empty circle is an error.
inline SearchResult find_masker_for_circle(const std::vector<LinearConstraint>& constraints, int n,
                                           const SearchConfig& config) {
  require(n >= 2, Errc::invalid_argument, "need dimension at least two");
  for (const LinearConstraint& c : constraints)
    require(c.A.size() == xi_dim(n), Errc::dimension_mismatch, "constraint length does not match dimension");

  const ParamBox box{static_cast<std::size_t>(n), 1e-3};
  std::vector<PureState> states;
  const std::size_t target = 24, max_trials = 400;
  for (std::size_t trial = 0; trial < max_trials && states.size() < target; ++trial) {
    HyperAngles h = sample_at_index(box, config.seed ^ 0x5ca1ab1eULL, trial);
    if (detail::project_to_circle(constraints, h))
      states.push_back(PureState{angles_to_amplitudes(h)});
  }
  require(states.size() >= 2, Errc::sampling_failed, "could not sample two states on the circle");

  SearchResult best;
  bool have = false;
  for (std::uint64_t restart = 0; restart < 6; ++restart) {
    SearchConfig c = config;
    c.seed = config.seed + restart;
    SearchResult r = optimize_masker(states, n, n, c);
    if (!have || r.objective < best.objective) {
      best = std::move(r);
      have = true;
    }
    if (best.converged) break;
  }
  return best;
}

}  // namespace maskgrid
