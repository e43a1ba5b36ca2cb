#include "geonet/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "geonet/errors.hpp"
#include "geonet/growthfit.hpp"
#include "geonet/ingest.hpp"
#include "geonet/pipeline.hpp"

namespace geonet {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream body;
  body << in.rdbuf();
  return body.str();
}

void write_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << body;
  if (!out) throw IoError("write to '" + path + "' failed");
}

struct AnalyzeArgs {
  std::string input, exclude, start = "2020-03-01", end = "2020-04-17", lockdown = "2020-03-25";
  std::string out, communities;
  std::optional<double> threshold;
  std::uint64_t seed = 42;
  std::size_t restarts = 1;
  std::size_t jobs = 1;
  double tol = 1e-9;
  bool cc_exclude = false;
};

struct FitArgs {
  std::string metrics, model, out, lockdown = "2020-03-25", origin;
  bool before_lockdown = false;
};

struct ProjectArgs {
  std::string fit, through, out;
};

struct SynthArgs {
  std::size_t n = 0;
  std::string start, end, out;
  std::uint64_t seed = 1;
  std::vector<double> bbox;
  std::size_t states = 8;
};

int cmd_analyze(const AnalyzeArgs& a, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  cfg.input_path = a.input;
  if (!a.exclude.empty()) cfg.exclusion_path = a.exclude;
  cfg.start = Date::parse(a.start);
  cfg.end = Date::parse(a.end);
  cfg.lockdown = Date::parse(a.lockdown);
  cfg.metrics_path = a.out;
  cfg.communities_path = a.communities;
  cfg.cc_exclude_low_degree = a.cc_exclude;
  cfg.louvain_seed = a.seed;
  cfg.louvain_restarts = a.restarts;
  cfg.eigen_tolerance = a.tol;
  cfg.threshold_km = a.threshold;
  cfg.jobs = a.jobs;
  const auto result = run_analysis(cfg, err);
  out << "analyzed " << result.rows.size() << " days -> " << cfg.metrics_path << ", " << cfg.communities_path << '\n';
  return 0;
}

int cmd_fit(const FitArgs& a, std::ostream& out) {
  const auto model = parse_growth_model(a.model);
  std::istringstream in(read_file(a.metrics));
  const auto rows = read_metrics_csv(in);
  if (rows.empty()) throw ValidationError("metrics file has no data rows");
  const Date origin = a.origin.empty() ? rows.front().date : Date::parse(a.origin);
  std::optional<Date> before;
  if (a.before_lockdown) before = Date::parse(a.lockdown);
  const auto series = growth_series(rows, origin, before);

  FitResult fit = model == GrowthModel::cubic ? fit_cubic(series) : fit_tanh(series);
  fit.origin_date = origin;
  write_file(a.out, fit_to_json(fit));
  out << to_string(fit.model) << " fit on " << series.x.size() << " points, rss " << format_real(fit.rss) << " -> "
      << a.out << '\n';
  return 0;
}

int cmd_project(const ProjectArgs& a, std::ostream& out) {
  const auto fit = fit_from_json(read_file(a.fit));
  const auto rows = project(fit, Date::parse(a.through));
  std::ostringstream body;
  write_projection_csv(body, rows);
  write_file(a.out, body.str());
  out << "projected " << rows.size() << " days -> " << a.out << '\n';
  return 0;
}

int cmd_synth(const SynthArgs& a, std::ostream& out) {
  SynthOptions o;
  o.n = a.n;
  o.start = Date::parse(a.start);
  o.end = Date::parse(a.end);
  o.seed = a.seed;
  o.states = a.states;
  if (!a.bbox.empty()) {
    if (a.bbox.size() != 4) throw ValidationError("--bbox takes LAT_MIN LAT_MAX LON_MIN LON_MAX");
    o.lat_min = a.bbox[0];
    o.lat_max = a.bbox[1];
    o.lon_min = a.bbox[2];
    o.lon_max = a.bbox[3];
  }
  std::ostringstream body;
  write_synthetic_records(body, o);
  write_file(a.out, body.str());
  out << "wrote " << o.n << " records -> " << a.out << '\n';
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Daily geodesic threshold networks from geo-located infection records"};
  app.require_subcommand(1);

  AnalyzeArgs analyze;
  auto* an = app.add_subcommand("analyze", "Build daily networks and write per-day metrics and communities");
  an->add_option("--input", analyze.input, "Records CSV")->required();
  an->add_option("--exclude-states", analyze.exclude, "File with one excluded state per line");
  an->add_option("--start", analyze.start, "First day (YYYY-MM-DD)")->capture_default_str();
  an->add_option("--end", analyze.end, "Last day (YYYY-MM-DD)")->capture_default_str();
  an->add_option("--lockdown", analyze.lockdown, "Lockdown date (YYYY-MM-DD)")->capture_default_str();
  an->add_option("--out", analyze.out, "Metrics CSV output")->required();
  an->add_option("--communities", analyze.communities, "Communities JSON output")->required();
  an->add_option("--threshold-km", analyze.threshold, "Fixed edge threshold in km instead of the connectivity parameter");
  an->add_option("--louvain-seed", analyze.seed, "Seed for the Louvain visit order")->capture_default_str();
  an->add_option("--louvain-restarts", analyze.restarts, "Keep the best modularity over this many seeds")
      ->capture_default_str();
  an->add_option("--jobs", analyze.jobs, "Worker threads for per-day analysis")->capture_default_str();
  an->add_option("--eigen-tol", analyze.tol, "Eigenpair residual tolerance")->capture_default_str();
  an->add_flag("--cc-exclude-low-degree", analyze.cc_exclude, "Average clustering over degree >= 2 vertices only");

  FitArgs fit;
  auto* ft = app.add_subcommand("fit", "Fit a growth model to the daily vertex counts");
  ft->add_option("--metrics", fit.metrics, "Metrics CSV from analyze")->required();
  ft->add_option("--model", fit.model, "tanh or cubic")->required()->check(CLI::IsMember({"tanh", "cubic"}));
  ft->add_flag("--before-lockdown", fit.before_lockdown, "Use only days strictly before the lockdown date");
  ft->add_option("--lockdown", fit.lockdown, "Lockdown date (YYYY-MM-DD)")->capture_default_str();
  ft->add_option("--origin", fit.origin, "Date of x = 1 (default: first metrics row)");
  ft->add_option("--out", fit.out, "Fit JSON output")->required();

  ProjectArgs proj;
  auto* pj = app.add_subcommand("project", "Evaluate a fitted model day by day");
  pj->add_option("--fit", proj.fit, "Fit JSON")->required();
  pj->add_option("--through", proj.through, "Last projected day (YYYY-MM-DD)")->required();
  pj->add_option("--out", proj.out, "Projection CSV output")->required();

  SynthArgs synth;
  auto* sy = app.add_subcommand("synth", "Write a seeded synthetic records CSV");
  sy->add_option("--n", synth.n, "Number of regions")->required()->check(CLI::PositiveNumber);
  sy->add_option("--start", synth.start, "First report window start (YYYY-MM-DD)")->required();
  sy->add_option("--end", synth.end, "First report window end (YYYY-MM-DD)")->required();
  sy->add_option("--seed", synth.seed, "Random seed")->required();
  sy->add_option("--bbox", synth.bbox, "LAT_MIN LAT_MAX LON_MIN LON_MAX")->expected(4);
  sy->add_option("--states", synth.states, "Number of synthetic states")->capture_default_str();
  sy->add_option("--out", synth.out, "Records CSV output")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return static_cast<int>(ExitCode::validation);
  }

  try {
    if (*an) return cmd_analyze(analyze, out, err);
    if (*ft) return cmd_fit(fit, out);
    if (*pj) return cmd_project(proj, out);
    if (*sy) return cmd_synth(synth, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return static_cast<int>(e.code());
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace geonet
