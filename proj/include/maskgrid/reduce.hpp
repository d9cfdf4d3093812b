#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <string>
#include <vector>

#include "maskgrid/errors.hpp"
#include "maskgrid/masker.hpp"
#include "maskgrid/statespace.hpp"

namespace maskgrid {

inline Mat partial_trace_B(const BipartiteState& s) {
  Mat rho = Mat::Zero(s.dA, s.dA);
  for (int j = 0; j < s.dA; ++j)
    for (int jp = 0; jp < s.dA; ++jp) {
      cplx acc = 0.0;
      for (int m = 0; m < s.dB; ++m)
        acc += s.amps(static_cast<Eigen::Index>(j) * s.dB + m) *
               std::conj(s.amps(static_cast<Eigen::Index>(jp) * s.dB + m));
      rho(j, jp) = acc;
    }
  return rho;
}

inline Mat partial_trace_A(const BipartiteState& s) {
  Mat rho = Mat::Zero(s.dB, s.dB);
  for (int m = 0; m < s.dB; ++m)
    for (int mp = 0; mp < s.dB; ++mp) {
      cplx acc = 0.0;
      for (int j = 0; j < s.dA; ++j)
        acc += s.amps(static_cast<Eigen::Index>(j) * s.dB + m) *
               std::conj(s.amps(static_cast<Eigen::Index>(j) * s.dB + mp));
      rho(m, mp) = acc;
    }
  return rho;
}

// A-side reduced matrix assembled from the Gram tensor instead of the
// applied state: diagonal term sum_j r_j^2 G[j][j][l][k] plus the two
// conjugate cross sums carrying exp(+-i(y_{s-1} - y_{t-1})). Entry (k,l)
// of the result is f_kl. The partial-trace route above is the
// independent cross-check.
inline Mat f_matrix(const Masker& m, const HyperAngles& a) {
  require(static_cast<int>(a.dim()) == m.dA, Errc::dimension_mismatch,
          "angle dimension does not match masker input dimension");
  const int n = m.dA;
  const GramTensor g = gram(m);
  const std::vector<double> r = angle_radii(a.x);
  Mat f = Mat::Zero(n, n);
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) {
      cplx acc = 0.0;
      for (int j = 0; j < n; ++j) acc += r[static_cast<std::size_t>(j)] * r[static_cast<std::size_t>(j)] * g(j, j, l, k);
      for (int s = 0; s < n; ++s)
        for (int t = s + 1; t < n; ++t) {
          const double ys = s == 0 ? 0.0 : a.y[static_cast<std::size_t>(s - 1)];
          const double yt = a.y[static_cast<std::size_t>(t - 1)];
          const cplx ph = std::polar(1.0, ys - yt);
          acc += r[static_cast<std::size_t>(s)] * r[static_cast<std::size_t>(t)] *
                 (ph * g(t, s, l, k) + std::conj(ph) * g(s, t, l, k));
        }
      f(k, l) = acc;
    }
  return f;
}

// Amplitude form of the same evaluation, f_kl = sum_{s,t} p_s conj(p_t)
// G[t][s][l][k]; agrees with the angle form and accepts any phase gauge.
inline Mat f_matrix(const Masker& m, const PureState& p) {
  require(p.dim() == m.dA, Errc::dimension_mismatch, "state dimension does not match masker input dimension");
  const int n = m.dA;
  const GramTensor g = gram(m);
  Mat f = Mat::Zero(n, n);
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) {
      cplx acc = 0.0;
      for (int s = 0; s < n; ++s)
        for (int t = 0; t < n; ++t) acc += p.amps(s) * std::conj(p.amps(t)) * g(t, s, l, k);
      f(k, l) = acc;
    }
  return f;
}

inline Mat g_matrix(const Masker& m, const PureState& p) {
  require(p.dim() == m.dA, Errc::dimension_mismatch, "state dimension does not match masker input dimension");
  return partial_trace_A(apply(m, p));
}

struct ResidualReport {
  Mat anchor_A;
  Mat anchor_B;
  std::vector<double> per_state;
  double overall = 0.0;
  char side = 'A';          // side of the worst entry deviation
  std::size_t worst_state = 0;
};

namespace detail {

inline double entry_deviation(const Mat& rho, const Mat& anchor) {
  return (rho - anchor).cwiseAbs().maxCoeff();
}

}  // namespace detail

// Per-state deviation is the max-abs entry difference from the anchor's
// reduced matrices, taken over both sides.
inline ResidualReport masking_residual(const Masker& m, const std::vector<PureState>& states,
                                       const PureState& anchor) {
  ResidualReport rep;
  const BipartiteState anchored = apply(m, anchor);
  rep.anchor_A = partial_trace_B(anchored);
  rep.anchor_B = partial_trace_A(anchored);
  rep.per_state.resize(states.size());
  for (std::size_t i = 0; i < states.size(); ++i) {
    const BipartiteState s = apply(m, states[i]);
    const double dev_a = detail::entry_deviation(partial_trace_B(s), rep.anchor_A);
    const double dev_b = detail::entry_deviation(partial_trace_A(s), rep.anchor_B);
    rep.per_state[i] = dev_a > dev_b ? dev_a : dev_b;
    if (rep.per_state[i] > rep.overall) {
      rep.overall = rep.per_state[i];
      rep.side = dev_a >= dev_b ? 'A' : 'B';
      rep.worst_state = i;
    }
  }
  return rep;
}

inline bool is_masked_set(const Masker& m, const std::vector<PureState>& states, double tol = 1e-9) {
  if (states.size() <= 1) return true;
  return masking_residual(m, states, states.front()).overall < tol;
}

inline bool is_density_matrix(const Mat& rho, double tol = 1e-12) {
  if (rho.rows() != rho.cols()) return false;
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() >= tol) return false;
  if (std::abs(rho.trace().real() - 1.0) >= tol || std::abs(rho.trace().imag()) >= tol) return false;
  Eigen::SelfAdjointEigenSolver<Mat> es(rho, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() >= -1e-10;
}

}  // namespace maskgrid
