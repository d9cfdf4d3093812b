#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "maskgrid/errors.hpp"
#include "maskgrid/parallel.hpp"
#include "maskgrid/rng.hpp"

namespace maskgrid {

using cplx = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;

inline constexpr double pi = 3.14159265358979323846264338327950288;
inline constexpr double two_pi = 2.0 * pi;
inline constexpr double half_pi = 0.5 * pi;

// Hyperspherical coordinates of an n-dimensional pure state:
// n-1 polar angles x in [0, pi/2] and n-1 phases y in [0, 2pi).
struct HyperAngles {
  std::vector<double> x;
  std::vector<double> y;
  std::size_t dim() const { return x.size() + 1; }
};

struct PureState {
  Vec amps;
  Eigen::Index dim() const { return amps.size(); }
};

// Sampling domain: the full box when delta = 0, otherwise shrunk by delta
// on every side so samples stay off the degenerate boundary.
struct ParamBox {
  std::size_t dim;
  double delta = 0.0;
};

// r_1 = cos x_1, r_k = sin x_1 ... sin x_{k-1} cos x_k, r_n = sin x_1 ... sin x_{n-1}.
inline std::vector<double> angle_radii(const std::vector<double>& x) {
  std::size_t n = x.size() + 1;
  std::vector<double> r(n);
  double prefix = 1.0;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    r[k] = prefix * std::cos(x[k]);
    prefix *= std::sin(x[k]);
  }
  r[n - 1] = prefix;
  return r;
}

// amps_k = r_k exp(i y_{k-1}), with the first phase pinned to zero.
inline PureState angles_to_amplitudes(const HyperAngles& a) {
  require(!a.x.empty() && a.x.size() == a.y.size(), Errc::invalid_argument,
          "angle tuple needs n-1 polar angles and n-1 phases");
  std::vector<double> r = angle_radii(a.x);
  Vec amps(static_cast<Eigen::Index>(r.size()));
  amps(0) = r[0];
  for (std::size_t k = 1; k < r.size(); ++k) amps(static_cast<Eigen::Index>(k)) = r[k] * std::polar(1.0, a.y[k - 1]);
  return PureState{std::move(amps)};
}

struct AngleDecomposition {
  HyperAngles angles;
  bool degenerate = false;
};

// Inverts angles_to_amplitudes. The global phase is fixed by rotating the
// first nonzero amplitude to the real nonnegative axis, so the round trip
// reproduces the input only up to a global phase. When an amplitude past
// the first vanishes, its phase (and any fully trailing polar angles) is
// undetermined; those angles are set to 0 and the result is flagged.
inline AngleDecomposition amplitudes_to_angles(const PureState& p) {
  const Eigen::Index n = p.amps.size();
  require(n >= 2, Errc::invalid_argument, "state needs dimension >= 2");
  constexpr double zero_tol = 1e-13;

  Eigen::Index first = -1;
  for (Eigen::Index k = 0; k < n; ++k) {
    if (std::abs(p.amps(k)) > zero_tol) {
      first = k;
      break;
    }
  }
  require(first >= 0, Errc::invalid_argument, "zero vector has no angle decomposition");

  const cplx phase = p.amps(first) / std::abs(p.amps(first));
  Vec q = p.amps * std::conj(phase);

  std::vector<double> r(static_cast<std::size_t>(n));
  for (Eigen::Index k = 0; k < n; ++k) r[static_cast<std::size_t>(k)] = std::abs(q(k));

  AngleDecomposition out;
  out.angles.x.resize(static_cast<std::size_t>(n - 1));
  out.angles.y.resize(static_cast<std::size_t>(n - 1));

  // tail[k] = norm of (r_{k+1}, ..., r_n); built backward so no prefix division
  // is ever needed and boundary states stay exact.
  std::vector<double> tail(static_cast<std::size_t>(n), 0.0);
  for (Eigen::Index k = n - 2; k >= 0; --k) {
    auto ku = static_cast<std::size_t>(k);
    tail[ku] = std::hypot(tail[ku + 1], r[ku + 1]);
  }
  for (std::size_t k = 0; k + 1 < static_cast<std::size_t>(n); ++k)
    out.angles.x[k] = std::atan2(tail[k], r[k]);

  for (Eigen::Index k = 1; k < n; ++k) {
    auto ku = static_cast<std::size_t>(k);
    if (r[ku] <= zero_tol) {
      out.angles.y[ku - 1] = 0.0;
      out.degenerate = true;
    } else {
      double arg = std::arg(q(k));
      if (arg < 0.0) arg += two_pi;
      if (arg >= two_pi) arg = 0.0;
      out.angles.y[ku - 1] = arg;
    }
  }
  return out;
}

// One deterministic draw per (seed, index); the index keys its own
// counter substream, so batches agree no matter how workers split them.
inline HyperAngles sample_at_index(const ParamBox& box, std::uint64_t seed, std::uint64_t index) {
  require(box.dim >= 2, Errc::invalid_argument, "box dimension must be >= 2");
  require(box.delta >= 0.0 && box.delta < pi / 4.0, Errc::invalid_argument, "box margin must lie in [0, pi/4)");
  CounterRng rng(seed, index);
  HyperAngles a;
  a.x.resize(box.dim - 1);
  a.y.resize(box.dim - 1);
  for (double& v : a.x) v = rng.uniform(box.delta, half_pi - box.delta);
  for (double& v : a.y) v = rng.uniform(box.delta, two_pi - box.delta);
  return a;
}

inline std::vector<HyperAngles> sample_uniform(const ParamBox& box, std::size_t count, std::uint64_t seed) {
  std::vector<HyperAngles> out(count);
  parallel_chunks(count, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) out[i] = sample_at_index(box, seed, i);
  });
  return out;
}

inline double box_volume(std::size_t n) {
  require(n >= 2, Errc::invalid_argument, "box dimension must be >= 2");
  return std::pow(pi, 2.0 * static_cast<double>(n - 1));
}

inline PureState random_state(Eigen::Index n, std::uint64_t seed, std::uint64_t index = 0) {
  require(n >= 2, Errc::invalid_argument, "state needs dimension >= 2");
  CounterRng rng(seed, index ^ 0xa5a5a5a5a5a5a5a5ULL);
  Vec v(n);
  for (Eigen::Index k = 0; k < n; ++k) v(k) = cplx(rng.gaussian(), rng.gaussian());
  v /= v.norm();
  return PureState{std::move(v)};
}

}  // namespace maskgrid
