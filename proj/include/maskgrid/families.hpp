#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "maskgrid/errors.hpp"
#include "maskgrid/masker.hpp"
#include "maskgrid/parallel.hpp"
#include "maskgrid/rng.hpp"
#include "maskgrid/statespace.hpp"

// Closed-form maskable families of the built-in maskers, with samplers
// that stay exactly on each family. All samplers are counter-seeded per
// output index, so batches are reproducible under any worker split.

namespace maskgrid {

inline double wrap_phase(double y) {
  y = std::fmod(y, two_pi);
  if (y < 0.0) y += two_pi;
  return y;
}

// ---- three-dimensional family: cos x1 and sin(2 x2) cos(y1 - y2) fixed ----

inline double family3_a(const HyperAngles& p) { return std::cos(p.x[0]); }

inline double family3_b(const HyperAngles& p) {
  return std::sin(2.0 * p.x[1]) * std::cos(p.y[0] - p.y[1]);
}

// Common reduced matrix of the 3-dim masker on this family:
// diag(a^2, (1-a^2)(1+b)/2, (1-a^2)(1-b)/2), identical on both sides.
inline Mat family3_rho(const HyperAngles& anchor) {
  const double a2 = family3_a(anchor) * family3_a(anchor);
  const double b = family3_b(anchor);
  Mat rho = Mat::Zero(3, 3);
  rho(0, 0) = a2;
  rho(1, 1) = 0.5 * (1.0 - a2) * (1.0 + b);
  rho(2, 2) = 0.5 * (1.0 - a2) * (1.0 - b);
  return rho;
}

inline HyperAngles sample_family3_at(const HyperAngles& anchor, std::uint64_t seed, std::uint64_t index) {
  const double b = family3_b(anchor);
  CounterRng rng(seed, index);
  HyperAngles p;
  p.x = {anchor.x[0], 0.0};
  p.y = {0.0, 0.0};
  double s2;
  do {
    p.x[1] = rng.uniform(0.0, half_pi);
    s2 = std::sin(2.0 * p.x[1]);
  } while (s2 < std::abs(b));
  const double spread = std::acos(s2 > 0.0 ? b / s2 : 0.0);
  const double sign = rng.next_double() < 0.5 ? 1.0 : -1.0;
  p.y[1] = rng.uniform(0.0, two_pi);
  p.y[0] = wrap_phase(p.y[1] + sign * spread);
  return p;
}

inline std::vector<HyperAngles> sample_family3(const HyperAngles& anchor, std::size_t count,
                                               std::uint64_t seed) {
  require(anchor.dim() == 3, Errc::dimension_mismatch, "family anchor must be 3-dimensional");
  std::vector<HyperAngles> out(count);
  parallel_chunks(count, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) out[i] = sample_family3_at(anchor, seed, i);
  });
  return out;
}

// ---- four-dimensional family over the half-and-half split -----------------
// r1^2 + r2^2 = r3^2 + r4^2 = 1/2, parameterized by two block angles.

struct ZetaAngles {
  double z1 = 0.0, z2 = 0.0;
  double y1 = 0.0, y2 = 0.0, y3 = 0.0;
};

// amps = (cos z1, sin z1 e^{iy1}, cos z2 e^{iy2}, sin z2 e^{iy3}) / sqrt2.
// z2 past pi/2 just folds a sign into the third amplitude; the family
// constants below stay valid for any real z2.
inline PureState zeta_state(const ZetaAngles& z) {
  const double s = std::sqrt(2.0) / 2.0;
  Vec amps(4);
  amps(0) = s * std::cos(z.z1);
  amps(1) = s * std::sin(z.z1) * std::polar(1.0, z.y1);
  amps(2) = s * std::cos(z.z2) * std::polar(1.0, z.y2);
  amps(3) = s * std::sin(z.z2) * std::polar(1.0, z.y3);
  return PureState{std::move(amps)};
}

inline double family4_c(const ZetaAngles& z) { return std::sin(2.0 * z.z1) * std::cos(z.y1); }

inline double family4_d(const ZetaAngles& z) {
  return 0.5 * std::cos(2.0 * z.z2) -
         (std::sqrt(3.0) / 2.0) * std::sin(2.0 * z.z2) * std::cos(z.y3 - z.y2);
}

inline Mat family4_rho_A(double c, double d) {
  Mat rho = Mat::Zero(4, 4);
  rho(0, 0) = 0.25 * (1.0 + c);
  rho(1, 1) = 0.25 * (1.0 - c);
  rho(2, 2) = 0.25 * (1.0 + d);
  rho(3, 3) = 0.25 * (1.0 - d);
  return rho;
}

inline Mat family4_rho_B(double c, double d) {
  Mat rho = 0.25 * Mat::Identity(4, 4);
  rho(0, 1) = 0.25 * c;
  rho(1, 0) = 0.25 * c;
  rho(2, 3) = 0.25 * d;
  rho(3, 2) = 0.25 * d;
  return rho;
}

inline ZetaAngles sample_family4_at(const ZetaAngles& anchor, std::uint64_t seed, std::uint64_t index) {
  const double c = family4_c(anchor);
  const double d = family4_d(anchor);
  CounterRng rng(seed, index);
  ZetaAngles z;

  double s1;
  do {
    z.z1 = rng.uniform(0.0, half_pi);
    s1 = std::sin(2.0 * z.z1);
  } while (s1 < std::abs(c));
  const double sign1 = rng.next_double() < 0.5 ? 1.0 : -1.0;
  z.y1 = wrap_phase(sign1 * std::acos(s1 > 0.0 ? c / s1 : 0.0));

  // solve cos(y3 - y2) from the second family constant; reject block
  // angles whose coefficient cannot reach d
  double q;
  do {
    z.z2 = rng.uniform(0.0, pi);
    const double denom = (std::sqrt(3.0) / 2.0) * std::sin(2.0 * z.z2);
    q = std::abs(denom) > 1e-12 ? (0.5 * std::cos(2.0 * z.z2) - d) / denom : 2.0;
  } while (std::abs(q) > 1.0);
  const double sign2 = rng.next_double() < 0.5 ? 1.0 : -1.0;
  z.y2 = rng.uniform(0.0, two_pi);
  z.y3 = wrap_phase(z.y2 + sign2 * std::acos(q));
  return z;
}

inline std::vector<ZetaAngles> sample_family4(const ZetaAngles& anchor, std::size_t count,
                                              std::uint64_t seed) {
  std::vector<ZetaAngles> out(count);
  parallel_chunks(count, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) out[i] = sample_family4_at(anchor, seed, i);
  });
  return out;
}

// ---- qubit circle family: sin(2x) cos(y - alpha) fixed ---------------------

inline double qubit_circle_value(const HyperAngles& p, double alpha) {
  return std::sin(2.0 * p.x[0]) * std::cos(p.y[0] - alpha);
}

inline HyperAngles sample_qubit_circle_at(double value, double alpha, std::uint64_t seed,
                                          std::uint64_t index) {
  require(std::abs(value) <= 1.0, Errc::invalid_argument, "circle value must lie in [-1, 1]");
  CounterRng rng(seed, index);
  HyperAngles p;
  p.x.resize(1);
  p.y.resize(1);
  double s2;
  do {
    p.x[0] = rng.uniform(0.0, half_pi);
    s2 = std::sin(2.0 * p.x[0]);
  } while (s2 < std::abs(value));
  const double sign = rng.next_double() < 0.5 ? 1.0 : -1.0;
  p.y[0] = wrap_phase(alpha + sign * std::acos(s2 > 0.0 ? value / s2 : 0.0));
  return p;
}

inline std::vector<HyperAngles> sample_qubit_circle(double value, double alpha, std::size_t count,
                                                    std::uint64_t seed) {
  std::vector<HyperAngles> out(count);
  parallel_chunks(count, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) out[i] = sample_qubit_circle_at(value, alpha, seed, i);
  });
  return out;
}

// ---- block family for composite maskers ------------------------------------
// Fixed per-block weights, each block's qubit on its own circle, free
// per-block phases. Matches the masked set of compose_even_odd.

inline PureState sample_block_family_at(const std::vector<double>& weights,
                                        const std::vector<double>& circle_values,
                                        const std::vector<double>& alphas, bool odd,
                                        std::uint64_t seed, std::uint64_t index) {
  const std::size_t blocks = circle_values.size();
  require(alphas.size() == blocks, Errc::block_count_mismatch, "one alpha per block");
  require(weights.size() == blocks + (odd ? 1 : 0), Errc::block_count_mismatch,
          "one weight per block plus one for the odd head");
  const int n = static_cast<int>(2 * blocks + (odd ? 1 : 0));
  CounterRng rng(seed, index ^ 0x3c6ef372fe94f82bULL);
  Vec amps = Vec::Zero(n);
  int base = 0;
  if (odd) {
    amps(0) = weights[0] * std::polar(1.0, rng.uniform(0.0, two_pi));
    base = 1;
  }
  for (std::size_t b = 0; b < blocks; ++b) {
    const HyperAngles q = sample_qubit_circle_at(circle_values[b], alphas[b], seed ^ 0x9e01u,
                                                 index * blocks + b);
    const double w = weights[b + (odd ? 1 : 0)];
    const cplx block_phase = std::polar(1.0, rng.uniform(0.0, two_pi));
    amps(base + 2 * static_cast<int>(b)) = w * block_phase * std::cos(q.x[0]);
    amps(base + 2 * static_cast<int>(b) + 1) = w * block_phase * std::sin(q.x[0]) * std::polar(1.0, q.y[0]);
  }
  return PureState{std::move(amps)};
}

}  // namespace maskgrid
