#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "maskgrid/errors.hpp"
#include "maskgrid/rng.hpp"
#include "maskgrid/statespace.hpp"

namespace maskgrid {

struct BipartiteState {
  int dA = 0;
  int dB = 0;
  Vec amps;  // flat index j*dB + m for |j>_A |m>_B, zero-based
};

// Isometry from the dA-dimensional input space into A x B. Column k of V
// is the image of basis state |k>; entry a(k,j,m) is the coefficient of
// |j>_A |m>_B in that image.
struct Masker {
  int dA = 0;
  int dB = 0;
  Mat V;  // (dA*dB) x dA

  cplx a(int k, int j, int m) const { return V(static_cast<Eigen::Index>(j) * dB + m, k); }

  // B-side component vector of column k at A-index j.
  Vec u_vector(int k, int j) const { return V.col(k).segment(static_cast<Eigen::Index>(j) * dB, dB); }
};

inline bool is_isometry(const Masker& m, double tol = 1e-12) {
  Mat g = m.V.adjoint() * m.V;
  g -= Mat::Identity(m.dA, m.dA);
  return g.cwiseAbs().maxCoeff() < tol;
}

inline BipartiteState apply(const Masker& m, const PureState& p) {
  require(p.dim() == m.dA, Errc::dimension_mismatch, "state dimension does not match masker input dimension");
  return BipartiteState{m.dA, m.dB, m.V * p.amps};
}

// All inner products of B-side component vectors. For the A side both
// index pairs run over the input dimension; the B-side variant scanned by
// the cascade has entry indices running over dB instead.
struct GramTensor {
  int ns = 0;  // range of the first two (state) indices
  int ne = 0;  // range of the last two (entry) indices
  std::vector<cplx> e;

  cplx operator()(int t, int s, int l, int k) const {
    return e[static_cast<std::size_t>(((t * ns + s) * ne + l) * ne + k)];
  }
  cplx& at(int t, int s, int l, int k) {
    return e[static_cast<std::size_t>(((t * ns + s) * ne + l) * ne + k)];
  }
};

// G[t][s][l][k] = <u_tl | u_sk>
inline GramTensor gram(const Masker& m) {
  const int n = m.dA;
  GramTensor g{n, n, std::vector<cplx>(static_cast<std::size_t>(n) * n * n * n)};
  for (int t = 0; t < n; ++t)
    for (int s = 0; s < n; ++s)
      for (int l = 0; l < n; ++l)
        for (int k = 0; k < n; ++k) {
          cplx acc = 0.0;
          for (int mm = 0; mm < m.dB; ++mm) acc += std::conj(m.a(t, l, mm)) * m.a(s, k, mm);
          g.at(t, s, l, k) = acc;
        }
  return g;
}

// Same construction with the A and B tensor factors exchanged: the state
// indices still run over the input dimension, the entry indices over dB.
// Scanning this tensor reruns any A-side analysis on the B side.
inline GramTensor gram_b_side(const Masker& m) {
  const int n = m.dA;
  const int d = m.dB;
  GramTensor g{n, d, std::vector<cplx>(static_cast<std::size_t>(n) * n * d * d)};
  for (int t = 0; t < n; ++t)
    for (int s = 0; s < n; ++s)
      for (int l = 0; l < d; ++l)
        for (int k = 0; k < d; ++k) {
          cplx acc = 0.0;
          for (int j = 0; j < m.dA; ++j) acc += std::conj(m.a(t, j, l)) * m.a(s, j, k);
          g.at(t, s, l, k) = acc;
        }
  return g;
}

inline Masker builtin_example_3d() {
  Masker m{3, 3, Mat::Zero(9, 3)};
  const double s = std::sqrt(2.0) / 2.0;
  m.V(0 * 3 + 0, 0) = 1.0;       // |1> -> |1>|1>
  m.V(1 * 3 + 1, 1) = s;         // |2> -> s|2>|2> - s|3>|3>
  m.V(2 * 3 + 2, 1) = -s;
  m.V(1 * 3 + 1, 2) = s;         // |3> -> s|2>|2> + s|3>|3>
  m.V(2 * 3 + 2, 2) = s;
  return m;
}

inline Masker builtin_example_4d() {
  Masker m{4, 4, Mat::Zero(16, 4)};
  const cplx ep = std::polar(1.0, pi / 4.0);
  const cplx en = std::polar(1.0, -pi / 4.0);
  const double q6 = std::sqrt(6.0) / 4.0;
  const double q2 = std::sqrt(2.0) / 4.0;

  // first block: a Hadamard-type spread over the {1,2} x {1,2} corner,
  // giving flat B-side diagonals and a c/4 off-diagonal coherence
  m.V(0 * 4 + 0, 0) = 0.5;
  m.V(0 * 4 + 1, 0) = 0.5;
  m.V(1 * 4 + 0, 0) = 0.5;
  m.V(1 * 4 + 1, 0) = -0.5;
  m.V(0 * 4 + 0, 1) = 0.5;
  m.V(0 * 4 + 1, 1) = 0.5;
  m.V(1 * 4 + 0, 1) = -0.5;
  m.V(1 * 4 + 1, 1) = 0.5;

  // second block on the {3,4} corner with pi/4 phases
  m.V(2 * 4 + 2, 2) = q6 * ep;
  m.V(2 * 4 + 3, 2) = q6 * ep;
  m.V(3 * 4 + 2, 2) = q2 * en;
  m.V(3 * 4 + 3, 2) = -q2 * en;
  m.V(2 * 4 + 2, 3) = -q2 * ep;
  m.V(2 * 4 + 3, 3) = -q2 * ep;
  m.V(3 * 4 + 2, 3) = q6 * en;
  m.V(3 * 4 + 3, 3) = -q6 * en;
  return m;
}

// |0> -> (|00> - e^{ia}|11>)/sqrt2, |1> -> (e^{-ia}|00> + |11>)/sqrt2.
// Masks every set of qubit states with sin(2x)cos(y - alpha) fixed. An
// optional input unitary is pre-composed, tilting the masked circle.
inline Masker qubit_circle_masker(double alpha, const Mat& input_unitary = Mat()) {
  Masker m{2, 2, Mat::Zero(4, 2)};
  const double s = std::sqrt(2.0) / 2.0;
  m.V(0, 0) = s;
  m.V(3, 0) = -s * std::polar(1.0, alpha);
  m.V(0, 1) = s * std::polar(1.0, -alpha);
  m.V(3, 1) = s;
  if (input_unitary.size() != 0) {
    require(input_unitary.rows() == 2 && input_unitary.cols() == 2, Errc::dimension_mismatch,
            "input unitary must be 2x2");
    Mat g = input_unitary.adjoint() * input_unitary - Mat::Identity(2, 2);
    require(g.cwiseAbs().maxCoeff() < 1e-10, Errc::not_isometry, "input matrix is not unitary");
    m.V = m.V * input_unitary;
  }
  return m;
}

// Block-diagonal assembly of qubit maskers: input block k feeds qubit
// masker k, whose output lands in A-block k tensor B-block k. Odd input
// dimensions prepend the fixed column |1> -> |1>|1>.
inline Masker compose_even_odd(const std::vector<Masker>& qubit_maskers, int n) {
  require(n >= 2, Errc::invalid_argument, "composite needs dimension >= 2");
  const bool odd = (n % 2) != 0;
  const std::size_t blocks = static_cast<std::size_t>(odd ? (n - 1) / 2 : n / 2);
  require(qubit_maskers.size() == blocks, Errc::block_count_mismatch,
          "need one qubit masker per two input dimensions");
  for (const Masker& q : qubit_maskers)
    require(q.dA == 2 && q.dB == 2, Errc::dimension_mismatch, "composite blocks must be qubit maskers");

  Masker m{n, n, Mat::Zero(static_cast<Eigen::Index>(n) * n, n)};
  const int offset = odd ? 1 : 0;
  if (odd) m.V(0, 0) = 1.0;
  for (std::size_t b = 0; b < blocks; ++b) {
    const int base = offset + 2 * static_cast<int>(b);
    for (int q = 0; q < 2; ++q)
      for (int ja = 0; ja < 2; ++ja)
        for (int mb = 0; mb < 2; ++mb)
          m.V(static_cast<Eigen::Index>(base + ja) * n + (base + mb), base + q) =
              qubit_maskers[b].a(q, ja, mb);
  }
  return m;
}

// Thin QR with each Q column rotated by the phase of the matching R
// diagonal, making the factorization unique and the map smooth.
inline Mat qr_orthonormalize(const Mat& g) {
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ() * Mat::Identity(g.rows(), g.cols());
  Mat r = qr.matrixQR().topRows(g.cols()).triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < g.cols(); ++j) {
    const cplx d = r(j, j);
    if (std::abs(d) > 0.0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

// Haar-distributed isometry from the QR of a complex Gaussian matrix.
inline Masker random_isometry(int dA, int dB, std::uint64_t seed) {
  require(dA >= 2 && dB >= 1, Errc::invalid_argument, "isometry needs dA >= 2, dB >= 1");
  require(dA <= dA * dB, Errc::dimension_mismatch, "target space too small for an isometry");
  CounterRng rng(seed, 0x150e7b1ULL);
  Mat g(static_cast<Eigen::Index>(dA) * dB, dA);
  for (Eigen::Index i = 0; i < g.rows(); ++i)
    for (Eigen::Index j = 0; j < g.cols(); ++j) g(i, j) = cplx(rng.gaussian(), rng.gaussian());
  return Masker{dA, dB, qr_orthonormalize(g)};
}

}  // namespace maskgrid
