#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <utility>
#include <vector>

#include "maskgrid/errors.hpp"
#include "maskgrid/masker.hpp"
#include "maskgrid/reduce.hpp"
#include "maskgrid/statespace.hpp"

// Two-party secret sharing on top of a masker: messages are codewords of
// a masked family, each share alone carries the common reduced matrix
// and nothing else, and the parties decode jointly via the adjoint.

namespace maskgrid {

inline double state_fidelity(const PureState& p, const PureState& q) {
  require(p.dim() == q.dim(), Errc::dimension_mismatch, "fidelity needs equal dimensions");
  return std::norm(p.amps.dot(q.amps));
}

inline double trace_distance(const Mat& rho, const Mat& sigma) {
  require(rho.rows() == sigma.rows() && rho.cols() == sigma.cols(), Errc::dimension_mismatch,
          "trace distance needs equal shapes");
  Eigen::SelfAdjointEigenSolver<Mat> es(rho - sigma);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

struct SecretFamily {
  Masker masker;
  std::vector<PureState> codebook;
  PureState anchor;
};

inline SecretFamily make_secret_family(Masker masker, std::vector<PureState> codebook,
                                       PureState anchor, double tol = 1e-9) {
  require(!codebook.empty(), Errc::invalid_argument, "codebook must not be empty");
  std::vector<PureState> all;
  all.reserve(codebook.size() + 1);
  all.push_back(anchor);
  for (const PureState& p : codebook) all.push_back(p);
  require(is_masked_set(masker, all, tol), Errc::invalid_argument,
          "codebook does not share the anchor's reduced matrices");
  return SecretFamily{std::move(masker), std::move(codebook), std::move(anchor)};
}

inline BipartiteState encode(const SecretFamily& family, std::size_t index) {
  require(index < family.codebook.size(), Errc::index_out_of_range, "codeword index out of range");
  return apply(family.masker, family.codebook[index]);
}

struct LeakageAudit {
  double side_a = 0.0;
  double side_b = 0.0;
};

// What a single share reveals: the worst pairwise distinguishability of
// its reduced states across the codebook. Zero means the share is blind.
inline LeakageAudit single_share_leakage(const SecretFamily& family) {
  const std::size_t S = family.codebook.size();
  require(S >= 1, Errc::invalid_argument, "codebook must not be empty");
  std::vector<Mat> rhoA(S), rhoB(S);
  for (std::size_t i = 0; i < S; ++i) {
    const BipartiteState img = encode(family, i);
    rhoA[i] = partial_trace_B(img);
    rhoB[i] = partial_trace_A(img);
  }
  LeakageAudit audit;
  for (std::size_t i = 0; i < S; ++i)
    for (std::size_t j = i + 1; j < S; ++j) {
      audit.side_a = std::max(audit.side_a, trace_distance(rhoA[i], rhoA[j]));
      audit.side_b = std::max(audit.side_b, trace_distance(rhoB[i], rhoB[j]));
    }
  return audit;
}

// Joint decoding: the adjoint inverts the encoding on its range; states
// off the range are rejected rather than silently projected.
inline PureState joint_decode(const BipartiteState& state, const Masker& m) {
  require(state.dA == m.dA && state.dB == m.dB, Errc::dimension_mismatch,
          "share dimensions do not match masker");
  Vec p = m.V.adjoint() * state.amps;
  require((m.V * p - state.amps).norm() <= 1e-6, Errc::out_of_range,
          "state is not in the masker's range");
  const double nrm = p.norm();
  require(nrm > 0.0, Errc::out_of_range, "state is orthogonal to the masker's range");
  p /= nrm;
  return PureState{std::move(p)};
}

}  // namespace maskgrid
