#include "replidyn/config.hpp"
#include "replidyn/dynamics.hpp"
#include "replidyn/equilibria.hpp"
#include "replidyn/model.hpp"
#include "replidyn/portrait.hpp"
#include "replidyn/regimes.hpp"
#include "replidyn/verify.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using nlohmann::ordered_json;
using namespace replidyn;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open output file: " + path);
  f << content;
  f.flush();
  if (!f) throw IoError("cannot write output file: " + path);
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

ordered_json params_json(const ModelParams& p) {
  ordered_json j;
  j["alpha"] = p.alpha;
  j["beta"] = p.beta;
  j["gamma"] = p.gamma;
  j["delta"] = p.delta;
  j["epsilon"] = p.epsilon;
  j["eta"] = p.eta;
  j["l"] = p.l;
  j["n"] = p.n;
  return j;
}

// Shared config plumbing: every subcommand takes either a config file or an
// inline JSON object with the same schema.
struct ConfigSource {
  std::string config_path;
  std::string inline_params;

  void attach(CLI::App* cmd, bool required) {
    auto* cfg = cmd->add_option("--config", config_path,
                                "JSON configuration file");
    auto* inl = cmd->add_option("--params", inline_params,
                                "inline JSON with the same schema as --config");
    cfg->excludes(inl);
    inl->excludes(cfg);
    required_ = required;
  }

  bool given() const { return !config_path.empty() || !inline_params.empty(); }

  RunConfig load() const {
    if (!config_path.empty()) return load_run_config(config_path);
    if (!inline_params.empty()) return parse_run_config(inline_params);
    if (required_)
      throw ConfigError("provide model parameters via --config or --params");
    throw ConfigError("no parameters given");
  }

 private:
  bool required_ = true;
};

// --- classify ---------------------------------------------------------------

ordered_json state_json(const StationaryState& s) {
  ordered_json j;
  j["kind"] = to_string(s.kind);
  j["location"] = {s.location(0), s.location(1), s.location(2)};
  j["stability"] = to_string(s.analytic_class);
  j["analytic_eigenvalues"] = {s.analytic_eigenvalues[0], s.analytic_eigenvalues[1]};
  j["numeric_eigenvalues"] = {s.numeric_eigenvalues[0], s.numeric_eigenvalues[1]};
  j["degenerate"] = s.degenerate;
  return j;
}

int cmd_classify(const RunConfig& cfg, const std::string& out_path) {
  const ModelParams& p = cfg.params;
  const NormalizedMatrix b = normalized_matrix(p);
  const AssumptionReport rep = check_assumptions(p);

  ordered_json doc;
  doc["params"] = params_json(p);
  doc["normalized_matrix"] = {{"a", b.a}, {"b", b.b}, {"c", b.c},
                              {"d", b.d}, {"e", b.e}, {"f", b.f}};
  doc["assumptions"] = {{"assumption_I_holds", rep.assumption_I_holds},
                        {"assumption_II_holds", rep.assumption_II_holds},
                        {"margin_I", rep.margin_I},
                        {"margin_II", rep.margin_II},
                        {"degenerate", rep.degenerate()}};

  try {
    const RegimeLabel label = classify_regime(p);
    doc["regime"] = to_string(label.regime);
    doc["portrait"] = to_string(label.portrait);
    doc["interior_exists"] = label.interior_exists;
    if (label.regime == Regime::R4)
      doc["no_interior_state_as_required"] = check_r4_consistency(p);
  } catch (const AssumptionsViolated& e) {
    doc["regime"] = nullptr;
    doc["portrait"] = nullptr;
    doc["interior_exists"] = nullptr;
    doc["refusal"] = e.what();
  }

  ordered_json states = ordered_json::array();
  for (const StationaryState& s : enumerate_states(p)) states.push_back(state_json(s));
  doc["stationary_states"] = states;

  ordered_json skipped = ordered_json::array();
  for (const SkippedState& s : enumerate_skipped(p))
    skipped.push_back({{"kind", to_string(s.kind)}, {"reason", s.reason}});
  doc["skipped_states"] = skipped;

  const ParetoReport pareto = pareto_report(p);
  doc["pareto"] = {{"dominates_e1_over_e2", pareto.dominates_e1_over_e2},
                   {"dominates_e2_over_e1", pareto.dominates_e2_over_e1},
                   {"dominates_e1_over_e3", pareto.dominates_e1_over_e3},
                   {"dominates_e2_over_e3", pareto.dominates_e2_over_e3},
                   {"welfare_e1", pareto.welfare_e1},
                   {"welfare_e2", pareto.welfare_e2},
                   {"welfare_e3", pareto.welfare_e3}};

  const std::string text = doc.dump(2) + "\n";
  if (out_path.empty())
    std::cout << text;
  else
    write_file(out_path, text);
  return 0;
}

// --- simulate ---------------------------------------------------------------

Simplex parse_x0(const std::string& text) {
  std::vector<double> vals;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::string piece =
        text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    try {
      std::size_t used = 0;
      vals.push_back(std::stod(piece, &used));
      while (used < piece.size() && std::isspace(static_cast<unsigned char>(piece[used])))
        ++used;
      if (used != piece.size()) throw std::invalid_argument(piece);
    } catch (const std::exception&) {
      throw ConfigError("--x0 must be three comma-separated numbers, got \"" +
                        text + "\"");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (vals.size() != 3)
    throw ConfigError("--x0 must have exactly three components, got " +
                      std::to_string(vals.size()));
  return {vals[0], vals[1], vals[2]};
}

std::string trajectory_csv(const Trajectory& traj) {
  std::string out = "t,x1,x2,x3\n";
  for (const TrajectoryPoint& pt : traj.points)
    out += fmt17(pt.t) + "," + fmt17(pt.x(0)) + "," + fmt17(pt.x(1)) + "," +
           fmt17(pt.x(2)) + "\n";
  return out;
}

std::string lv_csv(const Trajectory& traj) {
  std::string out = "t,X,Y\n";
  for (const TrajectoryPoint& pt : traj.points) {
    if (!(pt.x(0) > 1e-9)) break;
    const LVPoint q = to_lv(pt.x);
    out += fmt17(pt.t) + "," + fmt17(q(0)) + "," + fmt17(q(1)) + "\n";
  }
  return out;
}

std::string lv_out_path(const std::string& out_path) {
  const std::size_t dot = out_path.rfind('.');
  const std::size_t slash = out_path.find_last_of('/');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
    return out_path + ".lv.csv";
  return out_path.substr(0, dot) + ".lv" + out_path.substr(dot);
}

int cmd_simulate(const RunConfig& cfg, const Simplex& x0, const std::string& coords,
                 const std::string& out_path) {
  require_simplex(x0);
  const Trajectory traj = integrate(cfg.params, x0, cfg.integrator);

  const std::string csv = trajectory_csv(traj);
  if (out_path.empty()) {
    std::cout << csv;
    if (coords == "lv") std::cout << "\n" << lv_csv(traj);
  } else {
    write_file(out_path, csv);
    if (coords == "lv") write_file(lv_out_path(out_path), lv_csv(traj));
  }

  const Outcome& o = traj.outcome;
  if (o.converged)
    std::fprintf(stderr, "outcome: converged to %s (%s) at t=%.6g\n",
                 to_string(o.state), o.attracting ? "attracting" : "not attracting",
                 o.t);
  else
    std::fprintf(stderr, "outcome: unresolved after t=%.6g\n", o.t);
  std::fprintf(stderr, "diagnostics: max|sum-1|=%.3g min_component=%.3g\n",
               traj.diagnostics.max_sum_deviation, traj.diagnostics.min_component);
  return 0;
}

// --- basins -----------------------------------------------------------------

int cmd_basins(const RunConfig& cfg, int resolution, unsigned threads,
               const std::string& out_path, const std::string& summary_path) {
  const BasinMap map = estimate_basins(cfg.params, resolution, cfg.integrator, threads);

  std::string csv = "x1,x2,x3,label\n";
  for (std::size_t i = 0; i < map.points.size(); ++i)
    csv += fmt17(map.points[i](0)) + "," + fmt17(map.points[i](1)) + "," +
           fmt17(map.points[i](2)) + "," + to_string(map.labels[i]) + "\n";

  ordered_json summary;
  summary["params"] = params_json(cfg.params);
  summary["resolution"] = map.resolution;
  summary["total"] = map.total;
  summary["resolved"] = map.resolved();
  summary["unresolved"] = map.unresolved;
  summary["counts"] = {{"e1", map.counts[0]}, {"e2", map.counts[1]},
                       {"e3", map.counts[2]}};
  summary["fractions"] = {{"e1", map.fraction(BasinLabel::E1)},
                          {"e2", map.fraction(BasinLabel::E2)},
                          {"e3", map.fraction(BasinLabel::E3)},
                          {"unresolved", map.fraction(BasinLabel::Unresolved)}};
  summary["diagnostics"] = {{"max_sum_deviation", map.diagnostics.max_sum_deviation},
                            {"min_component", map.diagnostics.min_component}};
  const std::string summary_text = summary.dump(2) + "\n";

  if (out_path.empty())
    std::cout << csv;
  else
    write_file(out_path, csv);
  if (summary_path.empty())
    std::cerr << summary_text;
  else
    write_file(summary_path, summary_text);
  return 0;
}

// --- portrait ---------------------------------------------------------------

int cmd_portrait(const RunConfig& cfg, const PortraitSpec& spec,
                 const std::string& out_path) {
  const std::string svg = render_portrait(cfg.params, spec);
  if (out_path.empty())
    std::cout << svg;
  else
    write_file(out_path, svg);
  return 0;
}

// --- verify -----------------------------------------------------------------

int cmd_verify(const VerifyOptions& opts) {
  const std::vector<PropertyResult> results = run_property_suite(opts);
  bool ok = true;
  for (const PropertyResult& r : results) {
    std::printf("%s %-22s cases=%-6ld %s\n", r.pass ? "PASS" : "FAIL",
                r.name.c_str(), r.cases, r.detail.c_str());
    if (!r.pass) {
      ok = false;
      if (!r.failure_json.empty()) std::printf("  %s\n", r.failure_json.c_str());
    }
  }
  std::printf("%s\n", ok ? "all properties passed" : "property suite FAILED");
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"replicator-dynamics engine for a three-strategy game of "
               "online and offline social participation"};
  app.require_subcommand(1);

  // classify
  auto* classify = app.add_subcommand(
      "classify", "enumerate stationary states, stability, regime, Pareto report");
  ConfigSource classify_src;
  classify_src.attach(classify, true);
  std::string classify_out;
  classify->add_option("--out", classify_out, "write the JSON report here");

  // simulate
  auto* simulate = app.add_subcommand("simulate", "integrate one trajectory");
  ConfigSource simulate_src;
  simulate_src.attach(simulate, true);
  std::string x0_text = "0.3333333333333333,0.3333333333333333,0.3333333333333334";
  simulate->add_option("--x0", x0_text, "start point x1,x2,x3 (sum 1 within 1e-9)");
  std::string coords = "simplex";
  simulate->add_option("--coords", coords, "simplex, or lv to also emit chart coordinates")
      ->check(CLI::IsMember({"simplex", "lv"}));
  std::string simulate_out;
  simulate->add_option("--out", simulate_out, "trajectory CSV path (default stdout)");
  double h_override = 0, tmax_override = 0;
  int stride_override = 0;
  bool no_stop = false;
  auto* h_opt = simulate->add_option("--step", h_override, "integration step override");
  auto* tmax_opt = simulate->add_option("--t-max", tmax_override, "time horizon override");
  auto* stride_opt =
      simulate->add_option("--record-stride", stride_override, "record every k-th step");
  simulate->add_flag("--no-stop", no_stop, "keep integrating after convergence");

  // basins
  auto* basins = app.add_subcommand("basins", "basin of attraction map on a lattice");
  ConfigSource basins_src;
  basins_src.attach(basins, true);
  int resolution_override = 0;
  auto* res_opt = basins->add_option("--resolution", resolution_override,
                                     "lattice resolution override (>= 10)");
  std::string basins_out, basins_summary;
  basins->add_option("--out", basins_out, "basin CSV path (default stdout)");
  basins->add_option("--summary", basins_summary,
                     "summary JSON path (default standard error)");
  unsigned basins_threads = 0;
  basins->add_option("--threads", basins_threads, "worker thread count (0 = auto)");

  // portrait
  auto* portrait = app.add_subcommand("portrait", "render an SVG phase portrait");
  ConfigSource portrait_src;
  portrait_src.attach(portrait, true);
  std::string portrait_out;
  portrait->add_option("--out", portrait_out, "SVG path (default stdout)");
  PortraitSpec spec;
  portrait->add_option("--size", spec.size_px, "canvas size in px");
  portrait->add_option("--basin-resolution", spec.basin_resolution,
                       "basin underlay lattice resolution");
  portrait->add_option("--trajectories", spec.trajectory_count,
                       "number of sampled trajectories");
  bool no_basins = false, no_trajectories = false;
  portrait->add_flag("--no-basins", no_basins, "skip the basin underlay");
  portrait->add_flag("--no-trajectories", no_trajectories, "skip sample trajectories");
  std::uint64_t portrait_seed = 0;
  auto* pseed_opt = portrait->add_option("--seed", portrait_seed,
                                         "seed for trajectory starts");
  portrait->add_option("--threads", spec.threads, "worker thread count (0 = auto)");

  // verify
  auto* verify = app.add_subcommand("verify", "run the executable-property suite");
  ConfigSource verify_src;
  verify_src.attach(verify, false);
  long random_draws = 200;
  verify->add_option("--random", random_draws, "random parameter draws per property");
  std::uint64_t verify_seed = 42;
  verify->add_option("--seed", verify_seed, "seed for the property suite");
  unsigned verify_threads = 0;
  verify->add_option("--threads", verify_threads, "worker thread count (0 = auto)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*classify) return cmd_classify(classify_src.load(), classify_out);

    if (*simulate) {
      RunConfig cfg = simulate_src.load();
      if (h_opt->count()) cfg.integrator.h = h_override;
      if (tmax_opt->count()) cfg.integrator.t_max = tmax_override;
      if (stride_opt->count()) cfg.integrator.record_stride = stride_override;
      if (no_stop) cfg.integrator.stop_at_convergence = false;
      cfg.integrator.validate();
      return cmd_simulate(cfg, parse_x0(x0_text), coords, simulate_out);
    }

    if (*basins) {
      const RunConfig cfg = basins_src.load();
      const int resolution = res_opt->count() ? resolution_override : cfg.resolution;
      if (resolution < 10)
        throw ConfigError("resolution must be at least 10, got " +
                          std::to_string(resolution));
      return cmd_basins(cfg, resolution, basins_threads, basins_out, basins_summary);
    }

    if (*portrait) {
      const RunConfig cfg = portrait_src.load();
      spec.integrator = cfg.integrator;
      spec.draw_basins = !no_basins;
      spec.draw_trajectories = !no_trajectories;
      spec.seed = pseed_opt->count() ? portrait_seed : cfg.seed;
      return cmd_portrait(cfg, spec, portrait_out);
    }

    if (*verify) {
      VerifyOptions opts;
      if (verify_src.given()) opts.params = verify_src.load().params;
      opts.random_draws = random_draws;
      opts.seed = verify_seed;
      opts.threads = verify_threads;
      return cmd_verify(opts);
    }
  } catch (const DegenerateParameters& e) {
    ordered_json diag;
    diag["error"] = "degenerate_parameters";
    diag["message"] = e.what();
    std::cout << diag.dump(2) << "\n";
    return 3;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
