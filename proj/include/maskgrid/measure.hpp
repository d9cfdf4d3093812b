#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <mutex>
#include <vector>

#include "maskgrid/errors.hpp"
#include "maskgrid/masker.hpp"
#include "maskgrid/parallel.hpp"
#include "maskgrid/reduce.hpp"
#include "maskgrid/statespace.hpp"

// Monte Carlo estimates of how much of the parameter box sits within a
// residual tolerance of an anchor's reduced matrices. Near-maskable sets
// are graphs of solved variables, so the fraction must die with epsilon;
// the sweep fits the decay rate.

namespace maskgrid {

struct MeasureEstimate {
  double epsilon = 0.0;
  double fraction = 0.0;
  double stderr_binomial = 0.0;
  std::uint64_t hits = 0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  double delta = 0.0;
};

struct SweepReport {
  std::vector<MeasureEstimate> estimates;  // epsilon strictly decreasing
  double slope = std::numeric_limits<double>::quiet_NaN();
  double slope_stderr = 0.0;
  int fit_points = 0;
  bool degenerate_statistics = false;  // some grid point had zero hits
};

namespace detail {

// Deviation of one bipartite image from the anchor's two reduced
// matrices, without materializing the sample's matrices. Hermitian
// symmetry makes the upper triangles sufficient.
struct AnchorContext {
  const Masker& m;
  Mat rhoA0, rhoB0;

  AnchorContext(const Masker& mm, const PureState& anchor) : m(mm) {
    const BipartiteState img = apply(mm, anchor);
    rhoA0 = partial_trace_B(img);
    rhoB0 = partial_trace_A(img);
  }

  double residual(const Vec& psi) const {
    const int dA = m.dA, dB = m.dB;
    double worst = 0.0;
    for (int j = 0; j < dA; ++j)
      for (int j2 = j; j2 < dA; ++j2) {
        cplx acc = 0.0;
        for (int mm = 0; mm < dB; ++mm)
          acc += psi(static_cast<Eigen::Index>(j) * dB + mm) *
                 std::conj(psi(static_cast<Eigen::Index>(j2) * dB + mm));
        worst = std::max(worst, std::abs(acc - rhoA0(j, j2)));
      }
    for (int mm = 0; mm < dB; ++mm)
      for (int m2 = mm; m2 < dB; ++m2) {
        cplx acc = 0.0;
        for (int j = 0; j < dA; ++j)
          acc += psi(static_cast<Eigen::Index>(j) * dB + mm) *
                 std::conj(psi(static_cast<Eigen::Index>(j) * dB + m2));
        worst = std::max(worst, std::abs(acc - rhoB0(mm, m2)));
      }
    return worst;
  }
};

inline MeasureEstimate make_estimate(double epsilon, std::uint64_t hits, std::uint64_t samples,
                                     std::uint64_t seed, double delta) {
  MeasureEstimate e;
  e.epsilon = epsilon;
  e.hits = hits;
  e.samples = samples;
  e.seed = seed;
  e.delta = delta;
  e.fraction = samples ? static_cast<double>(hits) / static_cast<double>(samples) : 0.0;
  e.stderr_binomial = samples ? std::sqrt(e.fraction * (1.0 - e.fraction) / static_cast<double>(samples)) : 0.0;
  return e;
}

}  // namespace detail

inline MeasureEstimate residual_fraction(const Masker& m, const PureState& anchor, double epsilon,
                                         std::uint64_t samples, std::uint64_t seed,
                                         double delta = 1e-3) {
  require(epsilon > 0.0, Errc::invalid_argument, "epsilon must be positive");
  require(samples >= 1, Errc::invalid_argument, "need at least one sample");
  const detail::AnchorContext ctx(m, anchor);
  const ParamBox box{static_cast<std::size_t>(m.dA), delta};

  std::uint64_t hits = 0;
  std::mutex merge;
  parallel_chunks(samples, [&](std::size_t begin, std::size_t end) {
    std::uint64_t local = 0;
    Vec psi(static_cast<Eigen::Index>(m.dA) * m.dB);
    for (std::size_t i = begin; i < end; ++i) {
      const HyperAngles h = sample_at_index(box, seed, i);
      psi.noalias() = m.V * angles_to_amplitudes(h).amps;
      if (ctx.residual(psi) < epsilon) ++local;
    }
    const std::lock_guard<std::mutex> lock(merge);
    hits += local;
  });
  return detail::make_estimate(epsilon, hits, samples, seed, delta);
}

// One pass over the samples serves every epsilon, which also makes the
// monotonicity of fractions in epsilon exact rather than statistical.
inline SweepReport epsilon_sweep(const Masker& m, const PureState& anchor,
                                 const std::vector<double>& eps_grid, std::uint64_t samples,
                                 std::uint64_t seed, double delta = 1e-3) {
  require(eps_grid.size() >= 4, Errc::invalid_argument, "sweep grid needs at least four points");
  for (std::size_t i = 0; i < eps_grid.size(); ++i) {
    require(eps_grid[i] > 0.0, Errc::invalid_argument, "epsilon must be positive");
    require(i == 0 || eps_grid[i] < eps_grid[i - 1], Errc::invalid_argument,
            "sweep grid must be strictly decreasing");
  }
  require(samples >= 1, Errc::invalid_argument, "need at least one sample");

  const detail::AnchorContext ctx(m, anchor);
  const ParamBox box{static_cast<std::size_t>(m.dA), delta};
  const std::size_t ne = eps_grid.size();

  std::vector<std::uint64_t> hits(ne, 0);
  std::mutex merge;
  parallel_chunks(samples, [&](std::size_t begin, std::size_t end) {
    std::vector<std::uint64_t> local(ne, 0);
    Vec psi(static_cast<Eigen::Index>(m.dA) * m.dB);
    for (std::size_t i = begin; i < end; ++i) {
      const HyperAngles h = sample_at_index(box, seed, i);
      psi.noalias() = m.V * angles_to_amplitudes(h).amps;
      const double r = ctx.residual(psi);
      for (std::size_t e = 0; e < ne; ++e) {
        if (r >= eps_grid[e]) break;
        ++local[e];
      }
    }
    const std::lock_guard<std::mutex> lock(merge);
    for (std::size_t e = 0; e < ne; ++e) hits[e] += local[e];
  });

  SweepReport report;
  for (std::size_t e = 0; e < ne; ++e) {
    report.estimates.push_back(detail::make_estimate(eps_grid[e], hits[e], samples, seed, delta));
    if (hits[e] == 0) report.degenerate_statistics = true;
  }

  // least-squares decay rate over the small-epsilon half, skipping
  // zero-hit points which have no log
  const std::size_t half = ne - (ne + 1) / 2;
  std::vector<double> lx, ly;
  for (std::size_t e = half; e < ne; ++e)
    if (hits[e] > 0) {
      lx.push_back(std::log(eps_grid[e]));
      ly.push_back(std::log(report.estimates[e].fraction));
    }
  report.fit_points = static_cast<int>(lx.size());
  if (lx.size() >= 2) {
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
      mx += lx[i];
      my += ly[i];
    }
    mx /= static_cast<double>(lx.size());
    my /= static_cast<double>(lx.size());
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
      sxx += (lx[i] - mx) * (lx[i] - mx);
      sxy += (lx[i] - mx) * (ly[i] - my);
    }
    report.slope = sxy / sxx;
    if (lx.size() >= 3) {
      double ss = 0.0;
      for (std::size_t i = 0; i < lx.size(); ++i) {
        const double resid = ly[i] - my - report.slope * (lx[i] - mx);
        ss += resid * resid;
      }
      report.slope_stderr = std::sqrt(ss / (static_cast<double>(lx.size()) - 2.0) / sxx);
    }
  }
  return report;
}

inline std::vector<double> geometric_grid(double hi, double lo, int count) {
  require(count >= 2 && hi > lo && lo > 0.0, Errc::invalid_argument, "bad geometric grid");
  const double ratio = std::pow(lo / hi, 1.0 / (count - 1));
  std::vector<double> grid(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) grid[static_cast<std::size_t>(i)] = hi * std::pow(ratio, i);
  grid.back() = lo;
  return grid;
}

// Positive-measure control: the band |r_1 - r_1(anchor)| < eps. Its box
// probability has a closed form, so the estimator can be audited against
// a set that genuinely does not vanish.
inline MeasureEstimate control_band_fraction(const HyperAngles& anchor, double epsilon,
                                             std::uint64_t samples, std::uint64_t seed,
                                             double delta = 1e-3) {
  require(epsilon > 0.0, Errc::invalid_argument, "epsilon must be positive");
  require(samples >= 1, Errc::invalid_argument, "need at least one sample");
  const double c0 = std::cos(anchor.x.at(0));
  const ParamBox box{anchor.dim(), delta};

  std::uint64_t hits = 0;
  std::mutex merge;
  parallel_chunks(samples, [&](std::size_t begin, std::size_t end) {
    std::uint64_t local = 0;
    for (std::size_t i = begin; i < end; ++i) {
      const HyperAngles h = sample_at_index(box, seed, i);
      if (std::abs(std::cos(h.x[0]) - c0) < epsilon) ++local;
    }
    const std::lock_guard<std::mutex> lock(merge);
    hits += local;
  });
  return detail::make_estimate(epsilon, hits, samples, seed, delta);
}

inline double control_band_expected(const HyperAngles& anchor, double epsilon, double delta = 1e-3) {
  const double c0 = std::cos(anchor.x.at(0));
  const double lo = std::acos(std::min(1.0, c0 + epsilon));
  const double hi = std::acos(std::max(-1.0, c0 - epsilon));
  const double a = std::max(lo, delta);
  const double b = std::min(hi, half_pi - delta);
  return b > a ? (b - a) / (half_pi - 2.0 * delta) : 0.0;
}

}  // namespace maskgrid
