#include "geonet/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <istream>
#include <mutex>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "geonet/community.hpp"
#include "geonet/errors.hpp"
#include "geonet/metrics.hpp"
#include "geonet/spectral.hpp"

namespace geonet {

void RunConfig::validate() const {
  if (start > end) throw ValidationError("start date is after end date");
  if (lockdown < start || lockdown > end) throw ValidationError("lockdown date must lie within [start, end]");
  if (!(eigen_tolerance > 0.0)) throw ValidationError("eigen tolerance must be positive");
  if (jobs == 0) throw ValidationError("--jobs must be at least 1");
  if (louvain_restarts == 0) throw ValidationError("--louvain-restarts must be at least 1");
  if (threshold_km && !(*threshold_km >= 0.0)) throw ValidationError("--threshold-km must be non-negative");
}

std::pair<MetricsRow, DayCommunities> analyze_day(Date date, std::vector<std::string> vertices,
                                                  const DistanceMatrix& distances, std::size_t new_vertices,
                                                  const DayOptions& options) {
  MetricsRow row;
  DayCommunities comm;
  row.date = comm.date = date;
  row.n = vertices.size();
  row.new_vertices = new_vertices;
  if (row.n == 0) return {row, comm};

  if (row.n == 1) {
    row.d_km = options.threshold_km.value_or(0.0);
    row.max_degree = 0;
    row.avg_degree = 0.0;
    row.avg_clustering = 0.0;
    row.triangles = 0;
    row.diameter = 0;
    row.avg_path_length = 0.0;
    row.spectral_radius = 0.0;
    row.communities = 1;
    row.largest_community = 1;
    comm.communities.push_back({vertices.front()});
    return {row, comm};
  }

  const Snapshot s = build_snapshot(date, std::move(vertices), distances, options.threshold_km);
  row.d_km = s.connectivity_param();
  const auto deg = degree_stats(s);
  row.max_degree = deg.max_degree;
  row.avg_degree = deg.avg_degree;
  row.avg_clustering = clustering(s, options.cc_exclude_low_degree).average;
  row.triangles = triangle_count(s);
  row.disconnected = !s.connected();
  if (!row.disconnected) {
    const auto paths = path_metrics(s);
    row.diameter = paths.diameter;
    row.avg_path_length = paths.avg_path_length;
  }
  const auto spectrum = analyze_spectrum(s, options.eigen_tolerance);
  row.spectral_radius = spectrum.spectral_radius;
  row.algebraic_connectivity = spectrum.algebraic_connectivity;

  Partition partition;
  if (s.edge_count() > 0) {
    const auto found = louvain_best_of(s, options.louvain_seed, options.louvain_restarts);
    partition = found.partition;
    row.modularity = found.stats.modularity;
    comm.modularity = found.stats.modularity;
  } else {
    std::vector<std::size_t> singletons(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) singletons[i] = i;
    partition = Partition(singletons);
  }
  const auto stats = community_stats(partition);
  row.communities = stats.community_count;
  row.largest_community = stats.largest_size;
  for (const auto& group : partition.groups()) {
    std::vector<std::string> ids;
    ids.reserve(group.size());
    for (auto v : group) ids.push_back(s.vertices()[v]);
    comm.communities.push_back(std::move(ids));
  }
  return {row, comm};
}

AnalysisResult analyze_timeline(const VertexTimeline& timeline, const DayOptions& options, std::size_t jobs) {
  const std::size_t days = timeline.dates.size();
  AnalysisResult result;
  result.rows.resize(days);
  result.communities.resize(days);

  DistanceMatrix all;
  if (!timeline.regions.empty()) {
    std::vector<GeoPoint> points;
    points.reserve(timeline.regions.size());
    for (const auto& r : timeline.regions) points.push_back(r.location);
    all = distance_matrix(points);
  }

  auto run_day = [&](std::size_t k) {
    const std::size_t n = timeline.size_on(k);
    auto [row, comm] = analyze_day(timeline.dates[k], timeline.vertices_on(k), all.leading(n), timeline.new_on(k), options);
    result.rows[k] = std::move(row);
    result.communities[k] = std::move(comm);
  };

  jobs = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(days, 1));
  if (jobs == 1) {
    for (std::size_t k = 0; k < days; ++k) run_day(k);
    return result;
  }

  // Largest days first keeps the workers balanced; each slot is written by one thread only.
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> workers;
  for (std::size_t w = 0; w < jobs; ++w) {
    workers.emplace_back([&] {
      while (true) {
        const std::size_t i = next.fetch_add(1);
        if (i >= days) return;
        try {
          run_day(days - 1 - i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : workers) t.join();
  if (failure) std::rethrow_exception(failure);
  return result;
}

AnalysisResult run_analysis(const RunConfig& cfg, std::ostream& log) {
  cfg.validate();
  auto records = parse_records_file(cfg.input_path);
  if (cfg.exclusion_path) {
    const auto excluded = parse_state_list_file(*cfg.exclusion_path);
    for (const auto& s : unmatched_states(records, excluded)) {
      log << "warning: excluded state '" << s << "' matches no record\n";
    }
    records = apply_exclusion(records, excluded);
  }
  const auto timeline = build_timeline(records, cfg.start, cfg.end);

  DayOptions options;
  options.threshold_km = cfg.threshold_km;
  options.cc_exclude_low_degree = cfg.cc_exclude_low_degree;
  options.louvain_seed = cfg.louvain_seed;
  options.louvain_restarts = cfg.louvain_restarts;
  options.eigen_tolerance = cfg.eigen_tolerance;
  auto result = analyze_timeline(timeline, options, cfg.jobs);

  std::ostringstream metrics;
  write_metrics_csv(metrics, result.rows);
  std::ostringstream communities;
  write_communities_json(communities, result.communities);

  auto write_file = [](const std::string& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << body;
    if (!out) throw IoError("write to '" + path + "' failed");
  };
  write_file(cfg.metrics_path, metrics.str());
  write_file(cfg.communities_path, communities.str());
  return result;
}

std::string format_real(double v) {
  if (v == 0.0) v = 0.0;  // no "-0"
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

namespace {

template <class T>
std::string cell(const std::optional<T>& v) {
  if (!v) return {};
  if constexpr (std::is_floating_point_v<T>) {
    return format_real(*v);
  } else {
    return std::to_string(*v);
  }
}

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::string strip_cr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

template <class T>
std::optional<T> parse_cell(const std::string& text, const std::string& column, std::size_t line) {
  if (text.empty()) return std::nullopt;
  T v{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ValidationError("metrics line " + std::to_string(line) + ", column " + column + ": bad value '" + text + "'");
  }
  return v;
}

const std::vector<std::string>& metric_columns() {
  static const std::vector<std::string> cols = split_row(kMetricsHeader);
  return cols;
}

MetricsRow parse_metrics_row(const std::vector<std::string>& f, std::size_t line) {
  const auto& cols = metric_columns();
  if (f.size() != cols.size()) {
    throw ValidationError("metrics line " + std::to_string(line) + ": expected " + std::to_string(cols.size()) +
                          " columns, got " + std::to_string(f.size()));
  }
  auto required = [&](std::size_t i) {
    auto v = parse_cell<std::size_t>(f[i], cols[i], line);
    if (!v) throw ValidationError("metrics line " + std::to_string(line) + ": column " + cols[i] + " is required");
    return *v;
  };
  MetricsRow row;
  try {
    row.date = Date::parse(f[0]);
  } catch (const ValidationError& e) {
    throw ValidationError("metrics line " + std::to_string(line) + ", column date: " + e.what());
  }
  row.n = required(1);
  row.new_vertices = required(2);
  row.d_km = parse_cell<double>(f[3], cols[3], line);
  row.max_degree = parse_cell<std::size_t>(f[4], cols[4], line);
  row.avg_degree = parse_cell<double>(f[5], cols[5], line);
  row.avg_clustering = parse_cell<double>(f[6], cols[6], line);
  row.triangles = parse_cell<std::uint64_t>(f[7], cols[7], line);
  row.diameter = parse_cell<std::size_t>(f[8], cols[8], line);
  row.avg_path_length = parse_cell<double>(f[9], cols[9], line);
  row.spectral_radius = parse_cell<double>(f[10], cols[10], line);
  row.algebraic_connectivity = parse_cell<double>(f[11], cols[11], line);
  row.modularity = parse_cell<double>(f[12], cols[12], line);
  row.communities = required(13);
  row.largest_community = required(14);
  row.disconnected = row.n >= 2 && !row.diameter;
  return row;
}

}  // namespace

void write_metrics_csv(std::ostream& out, const std::vector<MetricsRow>& rows) {
  out << "# One row per day. n = 0: metric cells empty, 0 communities.\n"
         "# n = 1: d_km 0, degrees/clustering/triangles/diameter/path length/spectral radius 0,\n"
         "#        algebraic_connectivity and modularity empty, 1 community of size 1.\n"
         "# Disconnected (fixed threshold): diameter and avg_path_length empty, algebraic_connectivity 0.\n"
         "# No edges: modularity empty, every vertex its own community.\n";
  out << kMetricsHeader << '\n';
  for (const auto& r : rows) {
    out << r.date.to_string() << ',' << r.n << ',' << r.new_vertices << ',' << cell(r.d_km) << ','
        << cell(r.max_degree) << ',' << cell(r.avg_degree) << ',' << cell(r.avg_clustering) << ','
        << cell(r.triangles) << ',' << cell(r.diameter) << ',' << cell(r.avg_path_length) << ','
        << cell(r.spectral_radius) << ',' << cell(r.algebraic_connectivity) << ',' << cell(r.modularity) << ','
        << r.communities << ',' << r.largest_community << '\n';
  }
}

std::vector<MetricsRow> read_metrics_csv(std::istream& in) {
  std::vector<MetricsRow> rows;
  std::string line;
  std::size_t number = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++number;
    line = strip_cr(line);
    if (line.empty() || line.front() == '#') continue;
    if (!header) {
      if (line != kMetricsHeader) throw ValidationError("metrics file header does not match the expected columns");
      header = true;
      continue;
    }
    rows.push_back(parse_metrics_row(split_row(line), number));
  }
  if (!header) throw ValidationError("metrics file has no header");
  return rows;
}

std::vector<std::string> validate_metrics_csv(std::istream& in) {
  std::vector<std::string> problems;
  std::string line;
  std::size_t number = 0;
  bool header = false;
  std::optional<Date> previous;
  while (std::getline(in, line)) {
    ++number;
    line = strip_cr(line);
    if (line.empty() || line.front() == '#') continue;
    if (!header) {
      if (line != kMetricsHeader) problems.push_back("line " + std::to_string(number) + ": header mismatch");
      header = true;
      continue;
    }
    try {
      const auto row = parse_metrics_row(split_row(line), number);
      if (previous && !(row.date > *previous)) {
        problems.push_back("line " + std::to_string(number) + ": dates not strictly increasing");
      }
      previous = row.date;
      if (row.avg_clustering && (*row.avg_clustering < 0.0 || *row.avg_clustering > 1.0)) {
        problems.push_back("line " + std::to_string(number) + ": avg_clustering outside [0, 1]");
      }
      if (row.max_degree && row.n > 0 && *row.max_degree > row.n - 1) {
        problems.push_back("line " + std::to_string(number) + ": max_degree exceeds n - 1");
      }
      if (row.communities > row.n || row.largest_community > row.n) {
        problems.push_back("line " + std::to_string(number) + ": community counts exceed n");
      }
    } catch (const ValidationError& e) {
      problems.push_back(e.what());
    }
  }
  if (!header) problems.push_back("missing header");
  return problems;
}

void write_communities_json(std::ostream& out, const std::vector<DayCommunities>& days) {
  auto doc = nlohmann::ordered_json::array();
  for (const auto& d : days) {
    nlohmann::ordered_json entry;
    entry["date"] = d.date.to_string();
    entry["communities"] = d.communities;
    entry["modularity"] = d.modularity ? nlohmann::ordered_json(*d.modularity) : nlohmann::ordered_json(nullptr);
    doc.push_back(std::move(entry));
  }
  out << doc.dump(2) << '\n';
}

std::string fit_to_json(const FitResult& fit) {
  nlohmann::ordered_json j;
  j["model"] = to_string(fit.model);
  j["params"] = fit.params;
  j["rss"] = fit.rss;
  j["converged"] = fit.converged;
  j["iterations"] = fit.iterations;
  j["origin_date"] = fit.origin_date ? nlohmann::ordered_json(fit.origin_date->to_string()) : nlohmann::ordered_json(nullptr);
  return j.dump(2) + "\n";
}

FitResult fit_from_json(const std::string& text) {
  FitResult fit;
  try {
    const auto j = nlohmann::json::parse(text);
    fit.model = parse_growth_model(j.at("model").get<std::string>());
    const auto params = j.at("params").get<std::vector<double>>();
    if (params.size() != 4) throw ValidationError("fit params must have 4 entries");
    std::copy(params.begin(), params.end(), fit.params.begin());
    fit.rss = j.value("rss", 0.0);
    fit.converged = j.value("converged", true);
    fit.iterations = j.value("iterations", std::size_t{0});
    if (j.contains("origin_date") && !j["origin_date"].is_null()) {
      fit.origin_date = Date::parse(j["origin_date"].get<std::string>());
    }
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed fit JSON: ") + e.what());
  }
  return fit;
}

GrowthSeries growth_series(const std::vector<MetricsRow>& rows, Date origin, std::optional<Date> before) {
  GrowthSeries s;
  for (const auto& r : rows) {
    if (before && !(r.date < *before)) continue;
    s.x.push_back(static_cast<double>(r.date - origin + 1));
    s.y.push_back(static_cast<double>(r.n));
  }
  s.validate();
  return s;
}

std::vector<ProjectionRow> project(const FitResult& fit, Date through) {
  if (!fit.origin_date) throw ValidationError("fit has no origin_date to project from");
  if (through < *fit.origin_date) {
    throw ValidationError("projection date " + through.to_string() + " precedes the fit origin " +
                          fit.origin_date->to_string());
  }
  if (fit.model == GrowthModel::tanh && !fit.converged) throw ValidationError("cannot project an unconverged fit");
  std::vector<ProjectionRow> rows;
  for (Date d = *fit.origin_date; d <= through; d = d + 1) {
    const int x = d - *fit.origin_date + 1;
    rows.push_back({d, x, evaluate(fit, x)});
  }
  return rows;
}

void write_projection_csv(std::ostream& out, const std::vector<ProjectionRow>& rows) {
  out << "date,x,value\n";
  for (const auto& r : rows) out << r.date.to_string() << ',' << r.x << ',' << format_real(r.value) << '\n';
}

void write_synthetic_records(std::ostream& out, const SynthOptions& o) {
  if (o.n == 0) throw ValidationError("synth needs n >= 1");
  if (o.start > o.end) throw ValidationError("synth start date is after end date");
  if (o.states == 0) throw ValidationError("synth needs at least one state");
  if (!(o.lat_min <= o.lat_max) || !(o.lon_min <= o.lon_max) || o.lat_min < -90.0 || o.lat_max > 90.0 ||
      o.lon_min < -180.0 || o.lon_max > 180.0) {
    throw ValidationError("synth bounding box is invalid");
  }

  // Raw 64-bit engine output mapped by hand so the bytes do not depend on the standard library.
  std::mt19937_64 rng(o.seed);
  auto unit_open = [&] { return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53; };

  const int span = o.end - o.start + 1;
  const double mid = 0.6 * (span - 1);
  const double scale = std::max(1.0, span / 10.0);
  const int width = static_cast<int>(std::to_string(o.n).size());

  out << kRecordHeader << '\n';
  char buf[160];
  for (std::size_t i = 0; i < o.n; ++i) {
    const double lat = o.lat_min + (o.lat_max - o.lat_min) * unit_open();
    const double lon = o.lon_min + (o.lon_max - o.lon_min) * unit_open();
    const double u = unit_open();
    const double t = std::clamp(mid + scale * std::log(u / (1.0 - u)), 0.0, static_cast<double>(span - 1));
    const std::size_t state = static_cast<std::size_t>(rng() % o.states);
    const Date date = o.start + static_cast<int>(std::floor(t));
    std::snprintf(buf, sizeof buf, "R%0*zu,S%02zu,%.6f,%.6f,%s\n", width, i + 1, state + 1, lat, lon,
                  date.to_string().c_str());
    out << buf;
  }
}

}  // namespace geonet
