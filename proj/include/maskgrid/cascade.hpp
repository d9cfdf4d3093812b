#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "maskgrid/errors.hpp"
#include "maskgrid/masker.hpp"
#include "maskgrid/reduce.hpp"
#include "maskgrid/statespace.hpp"

// Classifier deciding, for any isometry, which obstruction rules out
// masking the whole state space: a solvable phase variable, a solvable
// amplitude variable, or degeneration to product form followed by the
// same analysis on the other share. Exactly one branch fires.

namespace maskgrid {

// Single-phase structure of one reduced-matrix entry: with every other
// angle frozen, the entry is rest + mu cos y_j + nu sin y_j exactly.
struct PhaseDecomposition {
  int k = 1;
  int l = 1;
  int j = 1;  // phase index, 1-based like the entry tags
  cplx rest{0.0, 0.0};
  cplx mu{0.0, 0.0};
  cplx nu{0.0, 0.0};
};

inline cplx reconstruct(const PhaseDecomposition& d, double y) {
  return d.rest + d.mu * std::cos(y) + d.nu * std::sin(y);
}

// Extract (rest, mu, nu) by probing y_j at 0, pi/2, pi with the other
// angles held at the probe point. Exact, not a fit: the dependence on a
// single phase is trigonometric of degree one.
inline PhaseDecomposition phase_coeffs(const Masker& m, int k, int l, int j,
                                       const HyperAngles& probe) {
  require(k >= 1 && k <= m.dA && l >= 1 && l <= m.dA, Errc::index_out_of_range,
          "entry tag outside the reduced matrix");
  require(j >= 1 && j <= probe.dim() - 1, Errc::index_out_of_range, "phase index out of range");
  require(probe.dim() == m.dA, Errc::dimension_mismatch, "probe dimension does not match masker");

  HyperAngles h = probe;
  const auto entry = [&](double y) {
    h.y[static_cast<std::size_t>(j - 1)] = y;
    return f_matrix(m, h)(k - 1, l - 1);
  };
  const cplx f0 = entry(0.0);
  const cplx fq = entry(half_pi);
  const cplx fp = entry(pi);

  PhaseDecomposition d;
  d.k = k;
  d.l = l;
  d.j = j;
  d.rest = 0.5 * (f0 + fp);
  d.mu = 0.5 * (f0 - fp);
  d.nu = fq - d.rest;
  return d;
}

// Root of rest + mu cos y + nu sin y = target on [0, 2pi), for one real
// component. Bisection on the half period where the cosine form falls
// from its maximum; nullopt when the target is out of reach.
inline std::optional<double> materialize_phase(double rest, double mu, double nu, double target) {
  const double amp = std::hypot(mu, nu);
  if (std::abs(target - rest) > amp || amp == 0.0) return std::nullopt;
  const double phi = std::atan2(nu, mu);
  double lo = phi, hi = phi + pi;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double v = rest + mu * std::cos(mid) + nu * std::sin(mid);
    if (v >= target)
      lo = mid;
    else
      hi = mid;
  }
  double y = std::fmod(0.5 * (lo + hi), two_pi);
  if (y < 0.0) y += two_pi;
  return y;
}

enum class CascadeBranch {
  solvable_phase,
  solvable_phase_shifted,
  solvable_amplitude,
  product_form_contradiction
};

inline const char* branch_name(CascadeBranch b) {
  switch (b) {
    case CascadeBranch::solvable_phase: return "SOLVABLE_PHASE";
    case CascadeBranch::solvable_phase_shifted: return "SOLVABLE_PHASE_SHIFTED";
    case CascadeBranch::solvable_amplitude: return "SOLVABLE_AMPLITUDE";
    case CascadeBranch::product_form_contradiction: return "PRODUCT_FORM_CONTRADICTION";
  }
  return "?";
}

// Columns factor as a common left vector c tensored with per-column unit
// rows; lambda holds the block ratios relative to c's first significant
// entry.
struct ProductFormData {
  Vec c;
  Mat factors;  // row k = the right factor of column k
  Vec lambda;
};

struct PairTag {
  int s = 0;
  int t = 0;  // 1-based
};

struct CascadeReport {
  CascadeBranch branch = CascadeBranch::solvable_phase;
  PairTag pair;                       // surviving pair for the phase branches
  int amplitude_index = 0;            // first diagonal disagreeing with block 1
  std::vector<PairTag> vanishing_pairs;
  std::optional<ProductFormData> product_form;
  // findings of the rerun on the other share, set only for the terminal branch
  PairTag contradiction_pair;
  int contradiction_amplitude_index = 0;
};

inline std::optional<ProductFormData> product_form_extract(const Masker& m, double tol = 1e-10) {
  const int dA = m.dA, dB = m.dB;
  // stack the column reshapes side by side; product form <=> rank one
  Mat X(dA, static_cast<Eigen::Index>(dA) * dB);
  for (int k = 0; k < dA; ++k)
    for (int j = 0; j < dA; ++j)
      for (int mm = 0; mm < dB; ++mm) X(j, static_cast<Eigen::Index>(k) * dB + mm) = m.a(k, j, mm);

  Eigen::Index j0 = 0;
  double best = -1.0;
  for (Eigen::Index j = 0; j < dA; ++j) {
    const double nrm = X.row(j).norm();
    if (nrm > best) {
      best = nrm;
      j0 = j;
    }
  }
  if (!(best > 0.0)) return std::nullopt;
  Eigen::RowVectorXcd v = X.row(j0) / best;
  Vec c(dA);
  for (Eigen::Index j = 0; j < dA; ++j) c(j) = (X.row(j) * v.adjoint())(0, 0);
  if ((X - c * v).cwiseAbs().maxCoeff() >= tol) return std::nullopt;

  // gauge: first nonvanishing right factor gets unit norm, then c's first
  // significant entry is rotated real positive
  double scale = 1.0;
  for (int k = 0; k < dA; ++k) {
    const double nrm = v.segment(static_cast<Eigen::Index>(k) * dB, dB).norm();
    if (nrm > tol) {
      scale = nrm;
      break;
    }
  }
  v /= scale;
  c *= scale;
  cplx phase{1.0, 0.0};
  Eigen::Index ref = -1;
  for (Eigen::Index j = 0; j < dA; ++j)
    if (std::abs(c(j)) > tol) {
      phase = c(j) / std::abs(c(j));
      ref = j;
      break;
    }
  if (ref < 0) return std::nullopt;
  c /= phase;
  v *= phase;

  ProductFormData out;
  out.c = c;
  out.factors = Mat(dA, dB);
  for (int k = 0; k < dA; ++k) out.factors.row(k) = v.segment(static_cast<Eigen::Index>(k) * dB, dB);
  out.lambda = c / c(ref);
  return out;
}

namespace detail {

struct TensorScan {
  bool phase_found = false;
  bool shifted = false;
  PairTag pair;
  bool amplitude_found = false;
  int amplitude_index = 0;
  std::vector<PairTag> vanishing;
};

inline bool pair_survives(const GramTensor& g, int s, int t, double tol) {
  for (int l = 0; l < g.ne; ++l)
    for (int k = 0; k < g.ne; ++k)
      if (std::abs(g(t, s, l, k)) > tol || std::abs(g(s, t, l, k)) > tol) return true;
  return false;
}

// Walk the obstruction order on one Gram tensor: pairs against index 1
// carry a bare phase, remaining pairs a phase difference, and with all
// cross blocks gone any diagonal disagreement pins an amplitude.
inline TensorScan scan_tensor(const GramTensor& g, double tol) {
  TensorScan r;
  const int n = g.ns;
  for (int s = 0; s < n; ++s)
    for (int t = s + 1; t < n; ++t) {
      if (pair_survives(g, s, t, tol)) {
        if (!r.phase_found) {
          r.phase_found = true;
          r.shifted = s > 0;
          r.pair = PairTag{s + 1, t + 1};
        }
      } else {
        r.vanishing.push_back(PairTag{s + 1, t + 1});
      }
    }
  if (r.phase_found) return r;
  for (int l = 0; l < g.ne && !r.amplitude_found; ++l)
    for (int k = 0; k < g.ne && !r.amplitude_found; ++k) {
      const cplx base = g(0, 0, l, k);
      for (int j = 1; j < n; ++j)
        if (std::abs(g(j, j, l, k) - base) > tol) {
          r.amplitude_found = true;
          r.amplitude_index = j + 1;
          break;
        }
    }
  return r;
}

}  // namespace detail

inline CascadeReport cascade_scan(const Masker& m, double tol = 1e-10) {
  require(is_isometry(m, 1e-9), Errc::not_isometry, "cascade input must be an isometry");

  CascadeReport report;
  const detail::TensorScan a = detail::scan_tensor(gram(m), tol);
  report.vanishing_pairs = a.vanishing;
  if (a.phase_found) {
    report.branch = a.shifted ? CascadeBranch::solvable_phase_shifted : CascadeBranch::solvable_phase;
    report.pair = a.pair;
    return report;
  }
  if (a.amplitude_found) {
    report.branch = CascadeBranch::solvable_amplitude;
    report.amplitude_index = a.amplitude_index;
    return report;
  }

  // columns degenerate to product form; the same scan on the other share
  // must then expose an obstruction, since its factors stay orthonormal
  report.product_form = product_form_extract(m, 1e-8);
  const detail::TensorScan b = detail::scan_tensor(gram_b_side(m), tol);
  if (b.phase_found || b.amplitude_found) {
    report.branch = CascadeBranch::product_form_contradiction;
    report.contradiction_pair = b.phase_found ? b.pair : PairTag{};
    report.contradiction_amplitude_index = b.amplitude_found ? b.amplitude_index : 0;
    return report;
  }
  fail(Errc::not_isometry, "both shares fell through the cascade; operator cannot be an isometry");
}

}  // namespace maskgrid
