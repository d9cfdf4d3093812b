#include "catch_amalgamated.hpp"

#include <cmath>

#include "helpers.hpp"
#include "maskgrid/errors.hpp"
#include "maskgrid/families.hpp"
#include "maskgrid/figures.hpp"
#include "maskgrid/geometry.hpp"
#include "maskgrid/masker.hpp"
#include "maskgrid/reduce.hpp"

using namespace maskgrid;

TEST_CASE("sphere embedding of reference states") {
  SECTION("equal superposition with quarter phase") {
    HyperAngles h;
    h.x = {pi / 4.0};
    h.y = {pi / 2.0};
    const XiVector xi = xi_embed(angles_to_amplitudes(h));
    REQUIRE(xi.coords.size() == 4);
    CHECK(xi.coords(0) == Catch::Approx(0.5).margin(1e-14));
    CHECK(xi.coords(1) == Catch::Approx(0.5).margin(1e-14));
    CHECK(std::abs(xi.coords(2)) < 1e-14);
    CHECK(xi.coords(3) == Catch::Approx(-std::sqrt(2.0) / 2.0).margin(1e-14));
  }
  SECTION("basis state sits at a sphere pole") {
    Vec v = Vec::Zero(4);
    v(0) = 1.0;
    const XiVector xi = xi_embed(PureState{v});
    CHECK(xi.coords(0) == Catch::Approx(1.0).margin(1e-15));
    CHECK(xi.coords.tail(15).cwiseAbs().maxCoeff() < 1e-15);
  }
}

TEST_CASE("embedding is exactly unit norm") {
  for (int n = 2; n <= 6; ++n)
    for (int i = 0; i < 300; ++i) {
      const XiVector xi = xi_embed(random_state(n, 700 + n, i));
      REQUIRE(xi.coords.size() == xi_dim(n));
      CHECK(std::abs(xi.coords.norm() - 1.0) < 1e-12);
    }
}

TEST_CASE("pair offsets enumerate the off-diagonal block") {
  CHECK(xi_pair_offset(3, 0, 1) == 3);
  CHECK(xi_pair_offset(3, 0, 2) == 5);
  CHECK(xi_pair_offset(3, 1, 2) == 7);
  CHECK(xi_pair_offset(4, 2, 3) == 14);
  CHECK(xi_dim(3) == 9);
  CHECK(xi_dim(4) == 16);
}

TEST_CASE("constraint rows reproduce the entry functions linearly") {
  // the defining property: A . xi equals the chosen part of the reduced entry
  for (int n = 2; n <= 4; ++n) {
    const Masker m = random_isometry(n, n, 810 + n);
    const std::vector<LinearConstraint> rows = masking_constraints(m);
    REQUIRE(!rows.empty());
    for (int i = 0; i < 250; ++i) {
      const PureState p = random_state(n, 20 + n, i);
      const Mat f = f_matrix(m, p);
      const XiVector xi = xi_embed(p);
      for (const LinearConstraint& c : rows) {
        const cplx entry = f(c.k - 1, c.l - 1);
        const double want = c.part == ChiPart::re ? entry.real() : entry.imag();
        CHECK(std::abs(c.A.dot(xi.coords) - want) < 1e-10);
      }
    }
  }
}

TEST_CASE("b-side constraint rows reproduce the other share") {
  const Masker m = random_isometry(3, 3, 831);
  const std::vector<LinearConstraint> rows = b_side_constraints(m);
  REQUIRE(!rows.empty());
  for (int i = 0; i < 100; ++i) {
    const PureState p = random_state(3, 21, i);
    const Mat g = g_matrix(m, p);
    const XiVector xi = xi_embed(p);
    for (const LinearConstraint& c : rows) {
      const cplx entry = g(c.k - 1, c.l - 1);
      const double want = c.part == ChiPart::re ? entry.real() : entry.imag();
      CHECK(std::abs(c.A.dot(xi.coords) - want) < 1e-10);
    }
  }
}

TEST_CASE("anchored constraints vanish on the whole family") {
  const HyperAngles anchor = testhelp::anchor3();
  const Masker m = builtin_example_3d();
  const std::vector<LinearConstraint> rows = masking_constraints(m, angles_to_amplitudes(anchor));
  CHECK(rows.size() == 3);

  for (int i = 0; i < 200; ++i) {
    const XiVector xi = xi_embed(angles_to_amplitudes(sample_family3_at(anchor, 45, i)));
    for (const LinearConstraint& c : rows) CHECK(std::abs(constraint_residual(c, xi)) < 1e-12);
  }
  // a generic state violates at least one row
  const XiVector off = xi_embed(random_state(3, 46, 0));
  double worst = 0.0;
  for (const LinearConstraint& c : rows)
    worst = std::max(worst, std::abs(constraint_residual(c, off)));
  CHECK(worst > 1e-3);
}

TEST_CASE("first diagonal row of the 3-dim builtin depends only on the first weight") {
  const std::vector<LinearConstraint> rows = masking_constraints(builtin_example_3d());
  bool found = false;
  for (const LinearConstraint& c : rows) {
    if (c.k == 1 && c.l == 1 && c.part == ChiPart::re) {
      found = true;
      CHECK(c.A(0) == Catch::Approx(1.0).margin(1e-14));
      CHECK(c.A.tail(8).cwiseAbs().maxCoeff() < 1e-14);
    }
  }
  CHECK(found);
}

TEST_CASE("zero tensor yields no constraints") {
  GramTensor g;
  g.ns = 3;
  g.ne = 3;
  g.e.assign(81, cplx(0, 0));
  CHECK(gram_constraints(g).empty());
}

TEST_CASE("affine ranks of the known families") {
  SECTION("generic states fill the simplex hyperplane") {
    std::vector<XiVector> pts;
    for (int i = 0; i < 300; ++i) pts.push_back(xi_embed(random_state(3, 99, i)));
    CHECK(affine_rank(pts) == 8);  // weights sum to one: one affine relation
  }
  SECTION("3-dim maskable family loses two more directions") {
    std::vector<XiVector> pts;
    const HyperAngles a = testhelp::anchor3();
    for (int i = 0; i < 300; ++i)
      pts.push_back(xi_embed(angles_to_amplitudes(sample_family3_at(a, 17, i))));
    CHECK(affine_rank(pts) == 6);
  }
  SECTION("4-dim maskable family") {
    std::vector<XiVector> pts;
    const ZetaAngles a = fig2_default_anchor();
    for (int i = 0; i < 400; ++i) pts.push_back(xi_embed(zeta_state(sample_family4_at(a, 21, i))));
    CHECK(affine_rank(pts) == 12);
  }
  SECTION("qubit circle is one-dimensional in the generic qubit hyperplane") {
    std::vector<XiVector> generic, circle;
    for (int i = 0; i < 200; ++i) generic.push_back(xi_embed(random_state(2, 98, i)));
    CHECK(affine_rank(generic) == 3);
    for (int i = 0; i < 200; ++i)
      circle.push_back(xi_embed(angles_to_amplitudes(sample_qubit_circle_at(0.4, 0.3, 5, i))));
    CHECK(affine_rank(circle) == 2);
  }
  CHECK_THROWS_AS(affine_rank({}), Error);
  CHECK_THROWS_AS(affine_rank({xi_embed(random_state(2, 1, 0))}), Error);
}

TEST_CASE("qubit identity ties the embedding to a small sphere") {
  for (int i = 0; i < 500; ++i) {
    const XiVector xi = xi_embed(random_state(2, 55, i));
    const double lhs = 4.0 * (xi.coords(0) - 0.5) * (xi.coords(0) - 0.5) +
                       2.0 * xi.coords(2) * xi.coords(2) + 2.0 * xi.coords(3) * xi.coords(3);
    CHECK(std::abs(lhs - 1.0) < 1e-12);
  }
}

TEST_CASE("bloch embedding of reference states") {
  HyperAngles h;
  h.x = {pi / 4.0};
  h.y = {pi / 2.0};
  const BlochVector b = bloch_embed(angles_to_amplitudes(h));
  CHECK(std::abs(b.eta(0)) < 1e-14);
  CHECK(std::abs(b.eta(1)) < 1e-14);
  CHECK(b.eta(2) == Catch::Approx(1.0).margin(1e-14));

  Vec v = Vec::Zero(2);
  v(0) = 1.0;
  const BlochVector pole = bloch_embed(PureState{v});
  CHECK(pole.eta(0) == Catch::Approx(1.0).margin(1e-15));
  CHECK(std::abs(pole.eta(1)) < 1e-15);
  CHECK(std::abs(pole.eta(2)) < 1e-15);
  CHECK(std::abs(pole.eta.norm() - 1.0) < 1e-14);

  CHECK_THROWS_AS(bloch_embed(random_state(3, 1, 0)), Error);
}

TEST_CASE("spherical circle check verdicts") {
  const HyperAngles anchor = testhelp::anchor3();
  const Masker m = builtin_example_3d();
  const std::vector<LinearConstraint> rows = masking_constraints(m, angles_to_amplitudes(anchor));

  std::vector<PureState> family;
  for (int i = 0; i < 50; ++i)
    family.push_back(angles_to_amplitudes(sample_family3_at(anchor, 47, i)));
  CHECK(spherical_circle_check(family, rows, 1e-9));

  std::vector<PureState> off = family;
  off.front().amps *= 1.001;  // embedding leaves the sphere
  CHECK(!spherical_circle_check(off, rows, 1e-9));

  // unit states stay on the sphere but generic ones break the circle rows
  const std::vector<PureState> generic{random_state(3, 48, 0)};
  CHECK(!spherical_circle_check(generic, rows, 1e-9));
  CHECK(spherical_circle_check(generic, {}, 1e-9));

  // with no constraint rows the check degenerates to the sphere test
  CHECK(spherical_circle_check(family, {}, 1e-9));
}
