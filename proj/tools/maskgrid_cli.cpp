// Command-line surface: sample and verify the built-in examples, emit
// figure grids and sweep data, classify maskers, search for maskers, and
// run the secret-sharing demo. Every output file carries a manifest and
// identical command lines produce byte-identical outputs.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "maskgrid/cascade.hpp"
#include "maskgrid/errors.hpp"
#include "maskgrid/families.hpp"
#include "maskgrid/figures.hpp"
#include "maskgrid/geometry.hpp"
#include "maskgrid/io.hpp"
#include "maskgrid/masker.hpp"
#include "maskgrid/measure.hpp"
#include "maskgrid/protocol.hpp"
#include "maskgrid/reduce.hpp"
#include "maskgrid/search.hpp"
#include "maskgrid/statespace.hpp"
#include "maskgrid/version.hpp"

namespace {

using namespace maskgrid;

std::vector<double> parse_double_list(const std::string& csv) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= csv.size()) {
    const std::size_t comma = csv.find(',', pos);
    const std::string tok = csv.substr(pos, comma == std::string::npos ? csv.size() - pos : comma - pos);
    try {
      std::size_t used = 0;
      out.push_back(std::stod(tok, &used));
      require(used == tok.size(), Errc::invalid_argument, "bad number: " + tok);
    } catch (const Error&) {
      throw;
    } catch (const std::exception&) {
      fail(Errc::invalid_argument, "bad number in list: '" + tok + "'");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

HyperAngles angles_from_list(const std::vector<double>& v, int n) {
  require(static_cast<int>(v.size()) == 2 * (n - 1), Errc::invalid_argument,
          "anchor needs 2(n-1) angles: x values then y values");
  HyperAngles h;
  h.x.assign(v.begin(), v.begin() + (n - 1));
  h.y.assign(v.begin() + (n - 1), v.end());
  return h;
}

ZetaAngles zeta_from_list(const std::vector<double>& v) {
  require(v.size() == 5, Errc::invalid_argument,
          "anchor needs 5 values: zeta1, zeta2, y1, y2, y3");
  return ZetaAngles{v[0], v[1], v[2], v[3], v[4]};
}

Masker resolve_masker(const std::string& spec, bool allow_non_isometry = false) {
  if (spec == "builtin3") return builtin_example_3d();
  if (spec == "builtin4") return builtin_example_4d();
  if (spec.rfind("qubit:", 0) == 0) {
    const std::string arg = spec.substr(6);
    try {
      std::size_t used = 0;
      const double alpha = std::stod(arg, &used);
      require(used == arg.size(), Errc::invalid_argument, "bad qubit angle: " + arg);
      return qubit_circle_masker(alpha);
    } catch (const Error&) {
      throw;
    } catch (const std::exception&) {
      fail(Errc::invalid_argument, "bad qubit angle: '" + arg + "'");
    }
  }
  return load_masker(spec, allow_non_isometry);
}

Json make_manifest(const std::string& command, const std::vector<std::string>& args,
                   const std::vector<std::string>& outputs) {
  return Json{{"command", command},
              {"arguments", args},
              {"version", MASKGRID_VERSION},
              {"outputs", outputs}};
}

void write_manifest_sidecar(const std::string& out_path, const Json& manifest) {
  write_json_file(out_path + ".manifest.json", manifest);
}

void write_csv_text(const std::string& path, const std::vector<std::string>& header,
                    const std::vector<std::vector<std::string>>& rows) {
  std::ofstream out(path, std::ios::binary);
  require(out.good(), Errc::invalid_argument, "cannot write file: " + path);
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
    out << '\n';
  }
}

HyperAngles default_anchor3() {
  HyperAngles h;
  h.x = {pi / 4.0, pi / 6.0};
  h.y = {2.0 * pi / 3.0, pi / 4.0};
  return h;
}

HyperAngles generic_anchor(int n) {
  if (n == 3) return default_anchor3();
  HyperAngles h;
  h.x.assign(static_cast<std::size_t>(n - 1), pi / 4.0);
  h.y.assign(static_cast<std::size_t>(n - 1), pi / 4.0);
  return h;
}

double entry_deviation(const Mat& a, const Mat& b) { return (a - b).cwiseAbs().maxCoeff(); }

// ---- example ---------------------------------------------------------------

int run_example(const std::string& which, const std::vector<double>& anchor_values, int count,
                std::uint64_t seed, double tol) {
  double worst = 0.0;
  if (which == "3d") {
    const HyperAngles anchor =
        anchor_values.empty() ? default_anchor3() : angles_from_list(anchor_values, 3);
    const Masker m = builtin_example_3d();
    const Mat rho0 = family3_rho(anchor);
    for (const HyperAngles& h : sample_family3(anchor, static_cast<std::size_t>(count), seed)) {
      const BipartiteState img = apply(m, PureState{angles_to_amplitudes(h)});
      worst = std::max(worst, entry_deviation(partial_trace_B(img), rho0));
      worst = std::max(worst, entry_deviation(partial_trace_A(img), rho0));
    }
  } else {
    const ZetaAngles anchor =
        anchor_values.empty() ? fig2_default_anchor() : zeta_from_list(anchor_values);
    const Masker m = builtin_example_4d();
    const double c = family4_c(anchor), d = family4_d(anchor);
    const Mat rhoA0 = family4_rho_A(c, d), rhoB0 = family4_rho_B(c, d);
    for (const ZetaAngles& z : sample_family4(anchor, static_cast<std::size_t>(count), seed)) {
      const BipartiteState img = apply(m, zeta_state(z));
      worst = std::max(worst, entry_deviation(partial_trace_B(img), rhoA0));
      worst = std::max(worst, entry_deviation(partial_trace_A(img), rhoB0));
    }
  }
  const bool pass = worst < tol;
  std::cout << "example " << which << ": " << count << " states, max deviation "
            << format_g17(worst) << (pass ? " -> PASS" : " -> FAIL") << "\n";
  return pass ? 0 : 1;
}

// ---- figure ----------------------------------------------------------------

int run_figure(const std::string& which, const std::vector<double>& anchor_values, int grid,
               double tol, const std::string& out, const Json& manifest) {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
  std::vector<PureState> states;
  Masker m;
  PureState anchor_state{Vec()};
  int omitted = 0;

  if (which == "fig1") {
    const HyperAngles anchor =
        anchor_values.empty() ? fig1_default_anchor() : angles_from_list(anchor_values, 3);
    require(std::abs(anchor.x[0]) < 1e-12, Errc::invalid_argument,
            "the slab figure expects an anchor with x1 = 0");
    const Fig1Data data = figure_1(anchor, grid);
    m = builtin_example_3d();
    anchor_state = PureState{angles_to_amplitudes(anchor)};
    header = {"x2", "y1", "y2"};
    for (const Fig1Row& r : data.rows) {
      rows.push_back({r.x2, r.y1, r.y2});
      states.push_back(fig1_state(r));
    }
  } else if (which == "fig2a") {
    const ZetaAngles anchor =
        anchor_values.empty() ? fig2_default_anchor() : zeta_from_list(anchor_values);
    const Fig2aData data = figure_2a(anchor, grid);
    m = builtin_example_4d();
    anchor_state = zeta_state(anchor);
    omitted = data.omitted;
    header = {"y1", "zeta1"};
    for (const Fig2aRow& r : data.rows) {
      rows.push_back({r.y1, r.zeta1});
      states.push_back(fig2a_state(anchor, r));
    }
  } else {
    const ZetaAngles anchor =
        anchor_values.empty() ? fig2_default_anchor() : zeta_from_list(anchor_values);
    const Fig2bData data = figure_2b(anchor, grid);
    m = builtin_example_4d();
    anchor_state = zeta_state(anchor);
    omitted = data.omitted;
    header = {"y2", "zeta2", "y3"};
    for (const Fig2bRow& r : data.rows) {
      rows.push_back({r.y2, r.zeta2, r.y3});
      states.push_back(fig2b_state(anchor, r));
    }
  }

  double worst = 0.0;
  if (!states.empty()) {
    const ResidualReport report = masking_residual(m, states, anchor_state);
    for (std::size_t i = 0; i < rows.size(); ++i) rows[i].push_back(report.per_state[i]);
    worst = report.overall;
  }
  header.push_back("residual");
  write_csv(out, header, rows);
  write_manifest_sidecar(out, manifest);

  const bool pass = worst < tol;
  std::cout << "figure " << which << ": " << rows.size() << " rows (" << omitted
            << " grid points without real solution), worst closed-loop residual "
            << format_g17(worst) << (pass ? " -> PASS" : " -> FAIL") << "\n";
  return pass ? 0 : 1;
}

// ---- sweep -----------------------------------------------------------------

int run_sweep(const Masker& m, const std::vector<double>& anchor_values,
              const std::vector<double>& eps, std::uint64_t samples, std::uint64_t seed,
              double delta, const std::string& out, const std::string& json_out,
              const Json& manifest) {
  const HyperAngles anchor =
      anchor_values.empty() ? generic_anchor(m.dA) : angles_from_list(anchor_values, m.dA);
  const PureState anchor_state{angles_to_amplitudes(anchor)};
  const SweepReport report = epsilon_sweep(m, anchor_state, eps, samples, seed, delta);

  std::vector<std::vector<std::string>> rows;
  for (const MeasureEstimate& e : report.estimates)
    rows.push_back({format_g17(e.epsilon), format_g17(e.fraction), format_g17(e.stderr_binomial),
                    std::to_string(e.samples), std::to_string(e.seed), format_g17(e.delta)});
  write_csv_text(out, {"epsilon", "fraction", "stderr", "samples", "seed", "delta"}, rows);
  write_manifest_sidecar(out, manifest);
  if (!json_out.empty()) {
    Json j = sweep_report_to_json(report);
    j["manifest"] = manifest;
    write_json_file(json_out, j);
  }
  std::cout << "sweep: " << eps.size() << " grid points, " << samples << " samples, slope "
            << (std::isfinite(report.slope) ? format_g17(report.slope) : std::string("n/a"))
            << (report.degenerate_statistics ? " (DEGENERATE_STATISTICS: zero hits at some epsilon)"
                                             : "")
            << "\n";
  return 0;
}

// ---- embed -----------------------------------------------------------------

int run_embed(const std::string& states_path, const std::string& out, const Json& manifest) {
  const std::vector<PureState> states = states_from_json(read_json_file(states_path));
  require(!states.empty(), Errc::invalid_argument, "states file is empty");
  const int n = states.front().dim();
  std::vector<std::string> header;
  for (int j = 1; j <= n; ++j) header.push_back("xi_" + std::to_string(j));
  for (int s = 1; s <= n; ++s)
    for (int t = s + 1; t <= n; ++t) {
      header.push_back("xi_" + std::to_string(s) + "_" + std::to_string(t));
      header.push_back("xi_" + std::to_string(t) + "_" + std::to_string(s));
    }
  std::vector<std::vector<double>> rows;
  for (const PureState& p : states) {
    const XiVector xi = xi_embed(p);
    rows.emplace_back(xi.coords.data(), xi.coords.data() + xi.coords.size());
  }
  write_csv(out, header, rows);
  write_manifest_sidecar(out, manifest);
  std::cout << "embed: " << rows.size() << " states -> " << out << "\n";
  return 0;
}

// ---- classify --------------------------------------------------------------

int run_classify(const Masker& m, double tol, const std::string& out, const Json& manifest) {
  const CascadeReport report = cascade_scan(m, tol);
  Json j = cascade_report_to_json(report);
  std::cout << j.dump(2) << "\n";
  if (!out.empty()) {
    j["manifest"] = manifest;
    write_json_file(out, j);
  }
  return 0;
}

// ---- search ----------------------------------------------------------------

int run_search(const std::string& states_path, const std::string& circle_path, int n,
               const SearchConfig& config, const std::string& out, const std::string& trace_path,
               const Json& manifest) {
  SearchResult result;
  if (!states_path.empty()) {
    const std::vector<PureState> states = states_from_json(read_json_file(states_path));
    require(!states.empty(), Errc::invalid_argument, "states file is empty");
    const int dim = states.front().dim();
    result = optimize_masker(states, dim, dim, config);
  } else {
    require(n >= 2, Errc::invalid_argument, "circle search needs --n");
    const std::vector<LinearConstraint> constraints =
        constraints_from_json(read_json_file(circle_path));
    result = find_masker_for_circle(constraints, n, config);
  }

  if (!out.empty()) {
    Json j = masker_to_json(result.masker);
    j["objective"] = result.objective;
    j["converged"] = result.converged;
    j["iterations"] = result.trace.empty() ? 0 : result.trace.size() - 1;
    j["manifest"] = manifest;
    write_json_file(out, j);
  }
  if (!trace_path.empty()) {
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < result.trace.size(); ++i)
      rows.push_back({static_cast<double>(i), result.trace[i]});
    write_csv(trace_path, {"iteration", "objective"}, rows);
    write_manifest_sidecar(trace_path, manifest);
  }
  std::cout << "search: objective " << format_g17(result.objective) << ", iterations "
            << (result.trace.empty() ? 0 : result.trace.size() - 1)
            << (result.converged ? ", converged" : ", not converged") << "\n";
  return 0;
}

// ---- share -----------------------------------------------------------------

int run_share(const std::string& masker_spec, const std::vector<double>& anchor_values,
              const std::string& states_path, int count, std::uint64_t seed, double leak_tol,
              double fid_tol, const std::string& out, const Json& manifest) {
  const Masker m = resolve_masker(masker_spec);
  std::vector<PureState> codebook;
  PureState anchor{Vec()};

  if (!states_path.empty()) {
    codebook = states_from_json(read_json_file(states_path));
    require(!codebook.empty(), Errc::invalid_argument, "states file is empty");
    anchor = codebook.front();
  } else if (masker_spec == "builtin3") {
    const HyperAngles a =
        anchor_values.empty() ? default_anchor3() : angles_from_list(anchor_values, 3);
    anchor = PureState{angles_to_amplitudes(a)};
    for (const HyperAngles& h : sample_family3(a, static_cast<std::size_t>(count), seed))
      codebook.push_back(PureState{angles_to_amplitudes(h)});
  } else if (masker_spec == "builtin4") {
    const ZetaAngles a =
        anchor_values.empty() ? fig2_default_anchor() : zeta_from_list(anchor_values);
    anchor = zeta_state(a);
    for (const ZetaAngles& z : sample_family4(a, static_cast<std::size_t>(count), seed))
      codebook.push_back(zeta_state(z));
  } else if (masker_spec.rfind("qubit:", 0) == 0) {
    const HyperAngles a = anchor_values.empty() ? generic_anchor(2) : angles_from_list(anchor_values, 2);
    anchor = PureState{angles_to_amplitudes(a)};
    const double alpha = std::stod(masker_spec.substr(6));
    const double value = qubit_circle_value(a, alpha);
    for (const HyperAngles& h :
         sample_qubit_circle(value, alpha, static_cast<std::size_t>(count), seed))
      codebook.push_back(PureState{angles_to_amplitudes(h)});
  } else {
    fail(Errc::invalid_argument, "share needs a builtin masker or an explicit --states codebook");
  }

  const SecretFamily family = make_secret_family(m, std::move(codebook), std::move(anchor));
  const LeakageAudit audit = single_share_leakage(family);

  std::vector<double> fidelities;
  double min_fid = 1.0;
  for (std::size_t i = 0; i < family.codebook.size(); ++i) {
    const PureState decoded = joint_decode(encode(family, i), family.masker);
    fidelities.push_back(state_fidelity(decoded, family.codebook[i]));
    min_fid = std::min(min_fid, fidelities.back());
  }

  const bool pass = audit.side_a < leak_tol && audit.side_b < leak_tol && min_fid >= 1.0 - fid_tol;
  if (!out.empty()) {
    Json j{{"codebook_size", family.codebook.size()},
           {"leakage", Json{{"side_a", audit.side_a}, {"side_b", audit.side_b}}},
           {"decode_fidelities", fidelities},
           {"decode_fidelity_min", min_fid},
           {"pass", pass},
           {"manifest", manifest}};
    write_json_file(out, j);
  }
  std::cout << "share: " << family.codebook.size() << " codewords, leakage "
            << format_g17(audit.side_a) << " / " << format_g17(audit.side_b)
            << ", min decode fidelity " << format_g17(min_fid) << (pass ? " -> PASS" : " -> FAIL")
            << "\n";
  return pass ? 0 : 1;
}

// ---- mask-check ------------------------------------------------------------

int run_mask_check(const std::string& masker_spec, bool allow_non_isometry,
                   const std::string& states_path, double tol, const std::string& out,
                   const Json& manifest) {
  const Masker m = resolve_masker(masker_spec, allow_non_isometry);
  const std::vector<PureState> states = states_from_json(read_json_file(states_path));
  require(!states.empty(), Errc::invalid_argument, "states file is empty");
  const ResidualReport report = masking_residual(m, states, states.front());
  const bool masked = report.overall < tol;
  if (!out.empty()) {
    Json j{{"masked", masked},
           {"overall_residual", report.overall},
           {"worst_state", report.worst_state},
           {"tol", tol},
           {"manifest", manifest}};
    write_json_file(out, j);
  }
  std::cout << "mask-check: residual " << format_g17(report.overall) << " over " << states.size()
            << " states -> " << (masked ? "MASKED" : "NOT MASKED") << "\n";
  return masked ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for masking by isometries"};
  app.require_subcommand(1);
  std::vector<std::string> raw_args(argv + 1, argv + argc);

  std::string anchor_csv, eps_csv, masker_spec = "builtin3";
  std::string out, json_out, states_path, circle_path, trace_path, which;
  int count = 200, grid = 64, n = 0;
  std::uint64_t seed = 7, samples = 1000000;
  double tol = 1e-9, delta = 1e-3, leak_tol = 1e-12, fid_tol = 1e-10;
  SearchConfig config;
  bool allow_non_isometry = false;

  CLI::App* c_example = app.add_subcommand("example", "sample a builtin family, verify closed forms");
  c_example->add_option("which", which, "3d or 4d")->required()->check(CLI::IsMember({"3d", "4d"}));
  c_example->add_option("--anchor", anchor_csv, "anchor angles, comma separated radians");
  c_example->add_option("--count", count, "number of sampled states");
  c_example->add_option("--seed", seed, "sampler seed");
  c_example->add_option("--tol", tol, "pass tolerance on max deviation");

  CLI::App* c_figure = app.add_subcommand("figure", "emit figure grid data with closed-loop residuals");
  c_figure->add_option("--which", which, "fig1, fig2a or fig2b")
      ->required()
      ->check(CLI::IsMember({"fig1", "fig2a", "fig2b"}));
  c_figure->add_option("--grid", grid, "grid resolution")->check(CLI::Range(2, 100000));
  c_figure->add_option("--anchor", anchor_csv, "anchor values (fig1: 4 angles; fig2: 5 zeta values)");
  c_figure->add_option("--out", out, "output CSV path")->required();
  c_figure->add_option("--tol", tol, "closed-loop pass tolerance");

  CLI::App* c_sweep = app.add_subcommand("sweep", "estimate near-masked fractions over an epsilon grid");
  c_sweep->add_option("--masker", masker_spec, "builtin3|builtin4|qubit:ALPHA|path");
  c_sweep->add_option("--anchor", anchor_csv, "anchor angles, comma separated radians");
  c_sweep->add_option("--eps", eps_csv, "epsilon grid, comma separated, decreasing");
  c_sweep->add_option("--samples", samples, "Monte Carlo samples");
  c_sweep->add_option("--seed", seed, "sampler seed");
  c_sweep->add_option("--delta", delta, "box margin");
  c_sweep->add_option("--out", out, "output CSV path")->required();
  c_sweep->add_option("--json", json_out, "also write the full report with slope fit");

  CLI::App* c_embed = app.add_subcommand("embed", "embed states onto the unit sphere coordinates");
  c_embed->add_option("--states", states_path, "states JSON path")->required();
  c_embed->add_option("--out", out, "output CSV path")->required();

  CLI::App* c_classify = app.add_subcommand("classify", "run the obstruction cascade on a masker");
  c_classify->add_option("--masker", masker_spec, "builtin3|builtin4|qubit:ALPHA|path")->required();
  c_classify->add_option("--tol", tol, "vanishing threshold")->default_val(1e-10);
  c_classify->add_option("--out", out, "write the report JSON here");

  CLI::App* c_search = app.add_subcommand("search", "optimize an isometry against a state set");
  c_search->add_option("--states", states_path, "states JSON path");
  c_search->add_option("--circle", circle_path, "constraints JSON path");
  c_search->add_option("--n", n, "dimension for --circle");
  c_search->add_option("--seed", config.seed, "initialization seed");
  c_search->add_option("--step", config.step, "initial step size");
  c_search->add_option("--iters", config.max_iterations, "iteration cap");
  c_search->add_option("--tol", config.tol, "objective convergence tolerance");
  c_search->add_option("--out", out, "write the result masker JSON here");
  c_search->add_option("--trace", trace_path, "write the objective trace CSV here");

  CLI::App* c_share = app.add_subcommand("share", "secret-sharing demo: encode, audit, decode");
  c_share->add_option("--masker", masker_spec, "builtin3|builtin4|qubit:ALPHA");
  c_share->add_option("--anchor", anchor_csv, "family anchor values");
  c_share->add_option("--states", states_path, "explicit codebook JSON (first state is the anchor)");
  c_share->add_option("--count", count, "codebook size")->default_val(16);
  c_share->add_option("--seed", seed, "sampler seed");
  c_share->add_option("--leak-tol", leak_tol, "pass threshold on leakage");
  c_share->add_option("--fid-tol", fid_tol, "pass threshold on 1 - fidelity");
  c_share->add_option("--out", out, "write the audit JSON here");

  CLI::App* c_check = app.add_subcommand("mask-check", "verdict: does the masker mask the states");
  c_check->add_option("--masker", masker_spec, "builtin3|builtin4|qubit:ALPHA|path")->required();
  c_check->add_flag("--allow-non-isometry", allow_non_isometry, "load maskers that fail the isometry check");
  c_check->add_option("--states", states_path, "states JSON path")->required();
  c_check->add_option("--tol", tol, "masking tolerance");
  c_check->add_option("--out", out, "write the verdict JSON here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    const std::vector<double> anchor_values =
        anchor_csv.empty() ? std::vector<double>{} : parse_double_list(anchor_csv);

    if (app.got_subcommand(c_example)) return run_example(which, anchor_values, count, seed, tol);

    if (app.got_subcommand(c_figure)) {
      const Json manifest = make_manifest("figure", raw_args, {out});
      return run_figure(which, anchor_values, grid, tol, out, manifest);
    }

    if (app.got_subcommand(c_sweep)) {
      const std::vector<double> eps =
          eps_csv.empty() ? geometric_grid(0.256, 0.001, 9) : parse_double_list(eps_csv);
      std::vector<std::string> outputs{out};
      if (!json_out.empty()) outputs.push_back(json_out);
      const Json manifest = make_manifest("sweep", raw_args, outputs);
      return run_sweep(resolve_masker(masker_spec), anchor_values, eps, samples, seed, delta, out,
                       json_out, manifest);
    }

    if (app.got_subcommand(c_embed)) {
      const Json manifest = make_manifest("embed", raw_args, {out});
      return run_embed(states_path, out, manifest);
    }

    if (app.got_subcommand(c_classify)) {
      const Json manifest =
          make_manifest("classify", raw_args, out.empty() ? std::vector<std::string>{} : std::vector<std::string>{out});
      return run_classify(resolve_masker(masker_spec), tol, out, manifest);
    }

    if (app.got_subcommand(c_search)) {
      require(states_path.empty() != circle_path.empty(), Errc::invalid_argument,
              "search needs exactly one of --states or --circle");
      std::vector<std::string> outputs;
      if (!out.empty()) outputs.push_back(out);
      if (!trace_path.empty()) outputs.push_back(trace_path);
      const Json manifest = make_manifest("search", raw_args, outputs);
      return run_search(states_path, circle_path, n, config, out, trace_path, manifest);
    }

    if (app.got_subcommand(c_share)) {
      const Json manifest =
          make_manifest("share", raw_args, out.empty() ? std::vector<std::string>{} : std::vector<std::string>{out});
      return run_share(masker_spec, anchor_values, states_path, count, seed, leak_tol, fid_tol, out,
                       manifest);
    }

    if (app.got_subcommand(c_check)) {
      const Json manifest =
          make_manifest("mask-check", raw_args, out.empty() ? std::vector<std::string>{} : std::vector<std::string>{out});
      return run_mask_check(masker_spec, allow_non_isometry, states_path, tol, out, manifest);
    }
  } catch (const Error& e) {
    std::cerr << "error (" << errc_name(e.code()) << "): " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
