#include "catch_amalgamated.hpp"

#include <cmath>
#include <vector>

#include "maskgrid/errors.hpp"
#include "maskgrid/families.hpp"
#include "maskgrid/figures.hpp"
#include "maskgrid/masker.hpp"
#include "maskgrid/reduce.hpp"
#include "maskgrid/statespace.hpp"

using namespace maskgrid;

TEST_CASE("default 4-dim anchor pins the two invariants") {
  const ZetaAngles z = fig2_default_anchor();
  CHECK(family4_c(z) == Catch::Approx(std::sqrt(3.0) / 2.0).margin(1e-14));
  const double d = -0.25 + 0.75 * std::cos(5.0 * pi / 12.0);
  CHECK(family4_d(z) == Catch::Approx(d).margin(1e-14));
}

TEST_CASE("curve solver inverts the first invariant") {
  const double c = std::sqrt(3.0) / 2.0;

  // cos(y1) equals c itself, so sin(2 zeta1) = 1 and both branches meet
  const auto both = fig2a_solve(c, pi / 6.0);
  REQUIRE(both.has_value());
  CHECK(both->first == Catch::Approx(pi / 4.0).margin(1e-12));
  CHECK(both->second == Catch::Approx(pi / 4.0).margin(1e-12));

  CHECK_FALSE(fig2a_solve(c, half_pi).has_value());    // cos factor vanishes
  CHECK_FALSE(fig2a_solve(0.99, 1.0).has_value());     // would need sin(2 zeta1) > 1
  CHECK_FALSE(fig2a_solve(0.5, 2.0).has_value());      // negative cos, no branch
}

TEST_CASE("surface solver inverts the second invariant") {
  const double d = family4_d(fig2_default_anchor());
  const auto both = fig2b_solve(d, 2.0 * pi / 3.0, 2.0 * pi / 3.0);
  REQUIRE(both.has_value());

  // spread is acos(cos(5 pi/12)); the minus branch lands on pi/4
  CHECK(both->second == Catch::Approx(pi / 4.0).margin(1e-12));
  CHECK(both->first == Catch::Approx(wrap_phase(2.0 * pi / 3.0 + 5.0 * pi / 12.0)).margin(1e-12));

  for (const double y3 : {both->first, both->second}) {
    ZetaAngles z = fig2_default_anchor();
    z.z2 = 2.0 * pi / 3.0;
    z.y2 = 2.0 * pi / 3.0;
    z.y3 = y3;
    CHECK(family4_d(z) == Catch::Approx(d).margin(1e-12));
  }

  CHECK_FALSE(fig2b_solve(d, half_pi, 1.0).has_value());   // sin(2 zeta2) = 0
  CHECK_FALSE(fig2b_solve(0.9, pi / 4.0, 1.0).has_value());  // |cos| would exceed 1
}

TEST_CASE("curve grid stays on the level set") {
  const ZetaAngles anchor = fig2_default_anchor();
  const Fig2aData data = figure_2a(anchor, 48);
  CHECK(static_cast<int>(data.rows.size()) / 2 + data.omitted == 48);
  CHECK(data.rows.size() % 2 == 0);
  for (const Fig2aRow& row : data.rows) {
    ZetaAngles z = anchor;
    z.z1 = row.zeta1;
    z.y1 = row.y1;
    CHECK(family4_c(z) == Catch::Approx(data.c).margin(1e-12));
  }
}

TEST_CASE("surface grid stays on the level set") {
  const ZetaAngles anchor = fig2_default_anchor();
  const Fig2bData data = figure_2b(anchor, 12);
  CHECK(static_cast<int>(data.rows.size()) / 2 + data.omitted == 12 * 12);
  for (const Fig2bRow& row : data.rows) {
    ZetaAngles z = anchor;
    z.z2 = row.zeta2;
    z.y2 = row.y2;
    z.y3 = row.y3;
    CHECK(family4_d(z) == Catch::Approx(data.d).margin(1e-12));
  }
}

TEST_CASE("grid rows survive the closed loop through the masker") {
  const ZetaAngles anchor = fig2_default_anchor();
  const Masker m = builtin_example_4d();
  const PureState ref = zeta_state(anchor);

  std::vector<PureState> curve{ref};
  for (const Fig2aRow& row : figure_2a(anchor, 16).rows) curve.push_back(fig2a_state(anchor, row));
  CHECK(masking_residual(m, curve, ref).overall < 1e-9);

  std::vector<PureState> surface{ref};
  for (const Fig2bRow& row : figure_2b(anchor, 8).rows) surface.push_back(fig2b_state(anchor, row));
  CHECK(masking_residual(m, surface, ref).overall < 1e-9);
}

TEST_CASE("slab grid covers the box with the right endpoints") {
  const Fig1Data data = figure_1(fig1_default_anchor(), 5);
  REQUIRE(data.rows.size() == 125);

  double x2_max = 0.0, y1_max = 0.0;
  for (const Fig1Row& row : data.rows) {
    x2_max = std::max(x2_max, row.x2);
    y1_max = std::max(y1_max, row.y1);
  }
  CHECK(data.rows.front().x2 == 0.0);
  CHECK(x2_max == Catch::Approx(half_pi).margin(1e-15));  // inclusive polar edge
  CHECK(y1_max < two_pi);                                 // exclusive phase edge

  // the slab sits at x_1 = 0, so every state is the first basis vector
  const PureState s = fig1_state(data.rows[77]);
  CHECK(std::abs(s.amps(0) - cplx(1.0, 0.0)) < 1e-15);
  CHECK(s.amps.norm() == Catch::Approx(1.0).margin(1e-15));
}

TEST_CASE("slab rows decode as masked states") {
  const Fig1Data data = figure_1(fig1_default_anchor(), 3);
  const Masker m = builtin_example_3d();
  std::vector<PureState> states;
  for (const Fig1Row& row : data.rows) states.push_back(fig1_state(row));
  CHECK(masking_residual(m, states, states.front()).overall < 1e-12);
}

TEST_CASE("grid builders validate their inputs") {
  CHECK_THROWS_AS(figure_1(fig1_default_anchor(), 1), Error);
  CHECK_THROWS_AS(figure_2a(fig2_default_anchor(), 0), Error);
  CHECK_THROWS_AS(figure_2b(fig2_default_anchor(), 1), Error);

  HyperAngles four;
  four.x = {0.1, 0.2, 0.3};
  four.y = {0.0, 0.0, 0.0};
  CHECK_THROWS_AS(figure_1(four, 4), Error);
}
