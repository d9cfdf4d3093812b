#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "maskgrid/cascade.hpp"
#include "maskgrid/errors.hpp"
#include "maskgrid/geometry.hpp"
#include "maskgrid/masker.hpp"
#include "maskgrid/measure.hpp"
#include "maskgrid/statespace.hpp"
#include "maskgrid/version.hpp"

// File formats: JSON for structured objects (complex numbers as [re, im]
// pairs), CSV with 17 significant digits for grid data. Both round-trip
// doubles exactly.

namespace maskgrid {

using Json = nlohmann::json;

inline Json complex_to_json(cplx z) { return Json::array({z.real(), z.imag()}); }

inline cplx complex_from_json(const Json& j) {
  require(j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number(),
          Errc::invalid_argument, "complex entries must be [re, im] pairs");
  return cplx(j[0].get<double>(), j[1].get<double>());
}

inline Json masker_to_json(const Masker& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.V.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.V.cols(); ++c) row.push_back(complex_to_json(m.V(r, c)));
    rows.push_back(std::move(row));
  }
  return Json{{"dA", m.dA}, {"dB", m.dB}, {"V", std::move(rows)}};
}

inline Masker masker_from_json(const Json& j, bool allow_non_isometry = false) {
  require(j.contains("dA") && j.contains("dB") && j.contains("V"), Errc::invalid_argument,
          "masker JSON needs dA, dB and V");
  Masker m;
  m.dA = j.at("dA").get<int>();
  m.dB = j.at("dB").get<int>();
  require(m.dA >= 1 && m.dB >= 1, Errc::invalid_argument, "masker dimensions must be positive");
  const Json& rows = j.at("V");
  require(rows.is_array() && static_cast<int>(rows.size()) == m.dA * m.dB, Errc::dimension_mismatch,
          "masker matrix must have dA*dB rows");
  m.V = Mat(static_cast<Eigen::Index>(m.dA) * m.dB, m.dA);
  for (Eigen::Index r = 0; r < m.V.rows(); ++r) {
    const Json& row = rows[static_cast<std::size_t>(r)];
    require(row.is_array() && static_cast<int>(row.size()) == m.dA, Errc::dimension_mismatch,
            "masker matrix must have dA columns");
    for (Eigen::Index c = 0; c < m.V.cols(); ++c)
      m.V(r, c) = complex_from_json(row[static_cast<std::size_t>(c)]);
  }
  if (!allow_non_isometry)
    require(is_isometry(m, 1e-9), Errc::not_isometry,
            "matrix columns are not orthonormal; pass the override to load anyway");
  return m;
}

inline Json states_to_json(const std::vector<PureState>& states) {
  Json list = Json::array();
  int dim = states.empty() ? 0 : states.front().dim();
  for (const PureState& p : states) {
    Json amps = Json::array();
    for (Eigen::Index i = 0; i < p.amps.size(); ++i) amps.push_back(complex_to_json(p.amps(i)));
    list.push_back(std::move(amps));
  }
  return Json{{"dim", dim}, {"states", std::move(list)}};
}

inline std::vector<PureState> states_from_json(const Json& j) {
  require(j.contains("dim") && j.contains("states"), Errc::invalid_argument,
          "states JSON needs dim and states");
  const int dim = j.at("dim").get<int>();
  require(dim >= 2, Errc::invalid_argument, "state dimension must be at least 2");
  std::vector<PureState> out;
  for (const Json& entry : j.at("states")) {
    require(entry.is_array() && static_cast<int>(entry.size()) == dim, Errc::dimension_mismatch,
            "state length does not match dim");
    PureState p{Vec(dim)};
    for (int i = 0; i < dim; ++i) p.amps(i) = complex_from_json(entry[static_cast<std::size_t>(i)]);
    const double nrm = p.amps.norm();
    require(std::abs(nrm - 1.0) < 1e-6, Errc::invalid_argument, "states must be unit vectors");
    p.amps /= nrm;
    out.push_back(std::move(p));
  }
  return out;
}

inline Json constraints_to_json(const std::vector<LinearConstraint>& constraints) {
  Json list = Json::array();
  for (const LinearConstraint& c : constraints) {
    Json a = Json::array();
    for (Eigen::Index i = 0; i < c.A.size(); ++i) a.push_back(c.A(i));
    list.push_back(Json{{"k", c.k},
                        {"l", c.l},
                        {"part", c.part == ChiPart::re ? "re" : "im"},
                        {"A", std::move(a)},
                        {"D", c.D}});
  }
  return list;
}

inline std::vector<LinearConstraint> constraints_from_json(const Json& j) {
  require(j.is_array(), Errc::invalid_argument, "constraints JSON must be an array");
  std::vector<LinearConstraint> out;
  for (const Json& entry : j) {
    LinearConstraint c;
    c.k = entry.at("k").get<int>();
    c.l = entry.at("l").get<int>();
    const std::string part = entry.at("part").get<std::string>();
    require(part == "re" || part == "im", Errc::invalid_argument, "part must be re or im");
    c.part = part == "re" ? ChiPart::re : ChiPart::im;
    const Json& a = entry.at("A");
    c.A = Eigen::VectorXd(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c.A(static_cast<Eigen::Index>(i)) = a[i].get<double>();
    c.D = entry.at("D").get<double>();
    out.push_back(std::move(c));
  }
  return out;
}

inline Json pair_to_json(const PairTag& p) { return Json::array({p.s, p.t}); }

inline Json cascade_report_to_json(const CascadeReport& r) {
  Json j;
  j["branch"] = branch_name(r.branch);
  if (r.branch == CascadeBranch::solvable_phase || r.branch == CascadeBranch::solvable_phase_shifted)
    j["pair"] = pair_to_json(r.pair);
  if (r.branch == CascadeBranch::solvable_amplitude) j["amplitude_index"] = r.amplitude_index;
  Json vanish = Json::array();
  for (const PairTag& p : r.vanishing_pairs) vanish.push_back(pair_to_json(p));
  j["vanishing_pairs"] = std::move(vanish);
  if (r.branch == CascadeBranch::product_form_contradiction) {
    Json side;
    if (r.contradiction_pair.s != 0) side["pair"] = pair_to_json(r.contradiction_pair);
    if (r.contradiction_amplitude_index != 0)
      side["amplitude_index"] = r.contradiction_amplitude_index;
    j["other_share_finding"] = std::move(side);
    if (r.product_form) {
      Json c = Json::array(), lambda = Json::array(), factors = Json::array();
      for (Eigen::Index i = 0; i < r.product_form->c.size(); ++i)
        c.push_back(complex_to_json(r.product_form->c(i)));
      for (Eigen::Index i = 0; i < r.product_form->lambda.size(); ++i)
        lambda.push_back(complex_to_json(r.product_form->lambda(i)));
      for (Eigen::Index k = 0; k < r.product_form->factors.rows(); ++k) {
        Json row = Json::array();
        for (Eigen::Index mm = 0; mm < r.product_form->factors.cols(); ++mm)
          row.push_back(complex_to_json(r.product_form->factors(k, mm)));
        factors.push_back(std::move(row));
      }
      j["product_form"] = Json{{"c", std::move(c)},
                               {"lambda", std::move(lambda)},
                               {"factors", std::move(factors)}};
    }
  }
  return j;
}

inline Json estimate_to_json(const MeasureEstimate& e) {
  return Json{{"epsilon", e.epsilon},   {"fraction", e.fraction},
              {"stderr", e.stderr_binomial}, {"hits", e.hits},
              {"samples", e.samples},   {"seed", e.seed},
              {"delta", e.delta}};
}

inline Json sweep_report_to_json(const SweepReport& r) {
  Json grid = Json::array();
  for (const MeasureEstimate& e : r.estimates) grid.push_back(estimate_to_json(e));
  Json j{{"estimates", std::move(grid)},
         {"fit_points", r.fit_points},
         {"degenerate_statistics", r.degenerate_statistics}};
  if (std::isfinite(r.slope)) {
    j["slope"] = r.slope;
    j["slope_stderr"] = r.slope_stderr;
  }
  return j;
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), Errc::invalid_argument, "cannot open file: " + path);
  Json j = Json::parse(in, nullptr, false);
  require(!j.is_discarded(), Errc::invalid_argument, "file is not valid JSON: " + path);
  return j;
}

inline void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path, std::ios::binary);  // binary keeps LF on every platform
  require(out.good(), Errc::invalid_argument, "cannot write file: " + path);
  out << j.dump(2) << '\n';
}

inline Masker load_masker(const std::string& path, bool allow_non_isometry = false) {
  return masker_from_json(read_json_file(path), allow_non_isometry);
}

inline void save_masker(const std::string& path, const Masker& m) {
  write_json_file(path, masker_to_json(m));
}

inline std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void write_csv(const std::string& path, const std::vector<std::string>& header,
                      const std::vector<std::vector<double>>& rows) {
  std::ofstream out(path, std::ios::binary);
  require(out.good(), Errc::invalid_argument, "cannot write file: " + path);
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << '\n';
  for (const std::vector<double>& row : rows) {
    require(row.size() == header.size(), Errc::dimension_mismatch, "CSV row width mismatch");
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_g17(row[i]);
    out << '\n';
  }
}

}  // namespace maskgrid
