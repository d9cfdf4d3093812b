#pragma once

#include <cmath>
#include <optional>
#include <utility>
#include <vector>

#include "maskgrid/errors.hpp"
#include "maskgrid/families.hpp"
#include "maskgrid/statespace.hpp"

// Grid data behind the two illustration sets: the solved curve
// zeta_1 = f(y_1) and the solved surface y_3 = F(y_2, zeta_2) of the
// 4-dim family, plus the parameter slab of the 3-dim family. Every
// emitted row lies exactly on its family, so rows can be pushed back
// through the masker as a closed-loop check.

namespace maskgrid {

inline ZetaAngles fig2_default_anchor() {
  return ZetaAngles{pi / 4.0, 2.0 * pi / 3.0, pi / 6.0, pi / 4.0, 2.0 * pi / 3.0};
}

inline HyperAngles fig1_default_anchor() {
  HyperAngles h;
  h.x = {0.0, pi / 6.0};
  h.y = {2.0 * pi / 3.0, pi / 4.0};
  return h;
}

// both zeta_1 branches with sin(2 zeta_1) cos(y_1) = c, if any
inline std::optional<std::pair<double, double>> fig2a_solve(double c, double y1) {
  const double cy = std::cos(y1);
  if (cy == 0.0) return std::nullopt;
  const double q = c / cy;
  if (q < 0.0 || q > 1.0) return std::nullopt;
  const double half = 0.5 * std::asin(q);
  return std::make_pair(half, half_pi - half);
}

// both y_3 branches with cos(2 zeta_2)/2 - (sqrt3/2) sin(2 zeta_2) cos(y_3 - y_2) = d
inline std::optional<std::pair<double, double>> fig2b_solve(double d, double zeta2, double y2) {
  const double denom = (std::sqrt(3.0) / 2.0) * std::sin(2.0 * zeta2);
  if (std::abs(denom) < 1e-12) return std::nullopt;
  const double q = (0.5 * std::cos(2.0 * zeta2) - d) / denom;
  if (std::abs(q) > 1.0) return std::nullopt;
  const double spread = std::acos(q);
  return std::make_pair(wrap_phase(y2 + spread), wrap_phase(y2 - spread));
}

struct Fig2aRow {
  double y1 = 0.0;
  double zeta1 = 0.0;
};

struct Fig2aData {
  double c = 0.0;
  ZetaAngles anchor;
  std::vector<Fig2aRow> rows;
  int omitted = 0;  // grid points with no real solution
};

inline Fig2aData figure_2a(const ZetaAngles& anchor, int grid) {
  require(grid >= 2, Errc::invalid_argument, "grid resolution must be at least 2");
  Fig2aData data;
  data.c = family4_c(anchor);
  data.anchor = anchor;
  for (int i = 0; i < grid; ++i) {
    const double y1 = two_pi * i / grid;
    const auto branches = fig2a_solve(data.c, y1);
    if (!branches) {
      ++data.omitted;
      continue;
    }
    data.rows.push_back(Fig2aRow{y1, branches->first});
    data.rows.push_back(Fig2aRow{y1, branches->second});
  }
  return data;
}

struct Fig2bRow {
  double y2 = 0.0;
  double zeta2 = 0.0;
  double y3 = 0.0;
};

struct Fig2bData {
  double d = 0.0;
  ZetaAngles anchor;
  std::vector<Fig2bRow> rows;
  int omitted = 0;
};

inline Fig2bData figure_2b(const ZetaAngles& anchor, int grid) {
  require(grid >= 2, Errc::invalid_argument, "grid resolution must be at least 2");
  Fig2bData data;
  data.d = family4_d(anchor);
  data.anchor = anchor;
  for (int i = 0; i < grid; ++i) {
    const double zeta2 = pi * (i + 0.5) / grid;  // midpoints dodge the degenerate edges
    for (int j = 0; j < grid; ++j) {
      const double y2 = two_pi * j / grid;
      const auto branches = fig2b_solve(data.d, zeta2, y2);
      if (!branches) {
        ++data.omitted;
        continue;
      }
      data.rows.push_back(Fig2bRow{y2, zeta2, branches->first});
      data.rows.push_back(Fig2bRow{y2, zeta2, branches->second});
    }
  }
  return data;
}

// full states for the closed loop: the row replaces its own block's
// parameters, the anchor supplies the other block
inline PureState fig2a_state(const ZetaAngles& anchor, const Fig2aRow& row) {
  ZetaAngles z = anchor;
  z.z1 = row.zeta1;
  z.y1 = row.y1;
  return zeta_state(z);
}

inline PureState fig2b_state(const ZetaAngles& anchor, const Fig2bRow& row) {
  ZetaAngles z = anchor;
  z.z2 = row.zeta2;
  z.y2 = row.y2;
  z.y3 = row.y3;
  return zeta_state(z);
}

struct Fig1Row {
  double x2 = 0.0;
  double y1 = 0.0;
  double y2 = 0.0;
};

struct Fig1Data {
  HyperAngles anchor;
  std::vector<Fig1Row> rows;
};

// the 3-dim set through an x_1 = 0 anchor is the whole slab over
// (x_2, y_1, y_2); emit a regular grid of it
inline Fig1Data figure_1(const HyperAngles& anchor, int grid) {
  require(grid >= 2, Errc::invalid_argument, "grid resolution must be at least 2");
  require(anchor.dim() == 3, Errc::dimension_mismatch, "slab figure needs a 3-dim anchor");
  Fig1Data data;
  data.anchor = anchor;
  for (int i = 0; i < grid; ++i)
    for (int j = 0; j < grid; ++j)
      for (int k = 0; k < grid; ++k)
        data.rows.push_back(Fig1Row{half_pi * i / (grid - 1), two_pi * j / grid, two_pi * k / grid});
  return data;
}

inline PureState fig1_state(const Fig1Row& row) {
  HyperAngles h;
  h.x = {0.0, row.x2};
  h.y = {row.y1, row.y2};
  return PureState{angles_to_amplitudes(h)};
}

}  // namespace maskgrid
