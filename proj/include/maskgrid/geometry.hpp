#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cmath>
#include <vector>

#include "maskgrid/errors.hpp"
#include "maskgrid/masker.hpp"
#include "maskgrid/statespace.hpp"

// Quadratic embedding of pure states onto the unit sphere in n^2 real
// dimensions, where every reduced-matrix entry becomes a linear form.
// Maskable sets land on intersections of that sphere with hyperplanes.

namespace maskgrid {

struct XiVector {
  int n = 0;
  Eigen::VectorXd coords;  // (xi_1..xi_n, then per pair s<t: cos coord, sin coord)
};

inline int xi_dim(int n) { return n * n; }

// flat position of the pair block (s,t), s < t zero-based; the cos
// coordinate sits at the returned index, the sin coordinate follows it
inline int xi_pair_offset(int n, int s, int t) {
  return n + 2 * (s * n - s * (s + 1) / 2 + (t - s - 1));
}

inline XiVector xi_embed(const PureState& p) {
  const int n = p.dim();
  XiVector xi{n, Eigen::VectorXd::Zero(xi_dim(n))};
  for (int j = 0; j < n; ++j) xi.coords(j) = std::norm(p.amps(j));
  const double rt2 = std::sqrt(2.0);
  for (int s = 0; s < n; ++s)
    for (int t = s + 1; t < n; ++t) {
      const cplx w = p.amps(s) * std::conj(p.amps(t));
      const int o = xi_pair_offset(n, s, t);
      xi.coords(o) = rt2 * std::real(w);
      xi.coords(o + 1) = rt2 * std::imag(w);
    }
  return xi;
}

enum class ChiPart { re, im };

inline double chi(ChiPart part, cplx z) { return part == ChiPart::re ? std::real(z) : std::imag(z); }

// One real linear condition A . xi + D = 0 tagged by the reduced-matrix
// entry (k, l), 1-based, and the Re/Im selector it came from.
struct LinearConstraint {
  int k = 1;
  int l = 1;
  ChiPart part = ChiPart::re;
  Eigen::VectorXd A;
  double D = 0.0;
};

inline double constraint_residual(const LinearConstraint& c, const XiVector& xi) {
  return c.A.dot(xi.coords) + c.D;
}

// Rows of the linear system expressing every entry of the reduced matrix
// described by a Gram tensor as a form in xi. With an anchor, D is set so
// the anchor satisfies every row; identically-zero rows are dropped.
inline std::vector<LinearConstraint> gram_constraints(const GramTensor& g,
                                                      const Vec* anchor = nullptr) {
  const int n = g.ns;
  const int ne = g.ne;
  const double inv = 1.0 / std::sqrt(2.0);
  std::vector<LinearConstraint> out;
  for (int k = 0; k < ne; ++k)
    for (int l = k; l < ne; ++l) {
      cplx entry0 = 0.0;
      if (anchor)
        for (int s = 0; s < n; ++s)
          for (int t = 0; t < n; ++t)
            entry0 += (*anchor)(s) * std::conj((*anchor)(t)) * g(t, s, l, k);
      for (ChiPart part : {ChiPart::re, ChiPart::im}) {
        Eigen::VectorXd A = Eigen::VectorXd::Zero(xi_dim(n));
        for (int j = 0; j < n; ++j) A(j) = chi(part, g(j, j, l, k));
        for (int s = 0; s < n; ++s)
          for (int t = s + 1; t < n; ++t) {
            const cplx sum = g(t, s, l, k) + g(s, t, l, k);
            const cplx dif = g(t, s, l, k) - g(s, t, l, k);
            const int o = xi_pair_offset(n, s, t);
            if (part == ChiPart::re) {
              A(o) = std::real(sum) * inv;
              A(o + 1) = -std::imag(dif) * inv;
            } else {
              A(o) = std::imag(sum) * inv;
              A(o + 1) = std::real(dif) * inv;
            }
          }
        if (A.lpNorm<Eigen::Infinity>() < 1e-14) continue;
        LinearConstraint c;
        c.k = k + 1;
        c.l = l + 1;
        c.part = part;
        c.A = std::move(A);
        c.D = anchor ? -chi(part, entry0) : 0.0;
        out.push_back(std::move(c));
      }
    }
  return out;
}

inline std::vector<LinearConstraint> masking_constraints(const Masker& m) {
  return gram_constraints(gram(m));
}

inline std::vector<LinearConstraint> masking_constraints(const Masker& m, const PureState& anchor) {
  require(anchor.dim() == m.dA, Errc::dimension_mismatch, "anchor dimension does not match masker");
  return gram_constraints(gram(m), &anchor.amps);
}

// Same rows for the other share of the output; together with the A-side
// rows these cut out the full masked set.
inline std::vector<LinearConstraint> b_side_constraints(const Masker& m) {
  return gram_constraints(gram_b_side(m));
}

inline std::vector<LinearConstraint> b_side_constraints(const Masker& m, const PureState& anchor) {
  require(anchor.dim() == m.dA, Errc::dimension_mismatch, "anchor dimension does not match masker");
  return gram_constraints(gram_b_side(m), &anchor.amps);
}

struct BlochVector {
  Eigen::Vector3d eta;
};

inline BlochVector bloch_embed(const PureState& p) {
  require(p.dim() == 2, Errc::dimension_mismatch, "Bloch reduction needs a qubit");
  const cplx w = std::conj(p.amps(0)) * p.amps(1);
  BlochVector b;
  b.eta << std::norm(p.amps(0)) - std::norm(p.amps(1)), 2.0 * std::real(w), 2.0 * std::imag(w);
  return b;
}

// dimension of the affine hull via singular values of the centered point
// matrix, thresholded relative to the largest
inline int affine_rank(const std::vector<XiVector>& points, double tol = 1e-8) {
  require(points.size() >= 2, Errc::invalid_argument, "affine rank needs at least two points");
  const Eigen::Index rows = static_cast<Eigen::Index>(points.size()) - 1;
  const Eigen::Index cols = points.front().coords.size();
  Eigen::MatrixXd M(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    require(points[static_cast<std::size_t>(i) + 1].coords.size() == cols, Errc::dimension_mismatch,
            "mixed embedding dimensions");
    M.row(i) = (points[static_cast<std::size_t>(i) + 1].coords - points.front().coords).transpose();
  }
  Eigen::BDCSVD<Eigen::MatrixXd> svd(M);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || !(sv(0) > 0.0)) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > tol * sv(0)) ++rank;
  return rank;
}

inline bool spherical_circle_check(const std::vector<PureState>& states,
                                   const std::vector<LinearConstraint>& constraints, double tol) {
  for (const PureState& p : states) {
    const XiVector xi = xi_embed(p);
    if (std::abs(xi.coords.norm() - 1.0) >= tol) return false;
    for (const LinearConstraint& c : constraints)
      if (std::abs(constraint_residual(c, xi)) >= tol) return false;
  }
  return true;
}

}  // namespace maskgrid
