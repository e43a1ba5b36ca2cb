#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "geonet/date.hpp"
#include "geonet/growthfit.hpp"
#include "geonet/ingest.hpp"
#include "geonet/netbuild.hpp"

namespace geonet {

/// Analysis settings shared by the `analyze` subcommand and library callers.
struct RunConfig {
  std::string input_path;
  std::optional<std::string> exclusion_path;
  Date start{2020, 3, 1};
  Date end{2020, 4, 17};
  Date lockdown{2020, 3, 25};
  std::string metrics_path;
  std::string communities_path;
  bool cc_exclude_low_degree = false;
  std::uint64_t louvain_seed = 42;
  std::size_t louvain_restarts = 1;
  double eigen_tolerance = 1e-9;
  std::optional<double> threshold_km;
  std::size_t jobs = 1;

  /// Throws ValidationError on inconsistent dates or non-positive tolerance/jobs/restarts.
  void validate() const;
};

/// One day's scalar metrics. Empty optionals are written as empty CSV cells.
struct MetricsRow {
  Date date;
  std::size_t n = 0;
  std::size_t new_vertices = 0;
  std::optional<double> d_km;
  std::optional<std::size_t> max_degree;
  std::optional<double> avg_degree;
  std::optional<double> avg_clustering;
  std::optional<std::uint64_t> triangles;
  std::optional<std::size_t> diameter;
  std::optional<double> avg_path_length;
  std::optional<double> spectral_radius;
  std::optional<double> algebraic_connectivity;
  std::optional<double> modularity;
  std::size_t communities = 0;
  std::size_t largest_community = 0;
  bool disconnected = false;
};

struct DayCommunities {
  Date date;
  std::vector<std::vector<std::string>> communities;  // region ids, communities in label order
  std::optional<double> modularity;
};

struct AnalysisResult {
  std::vector<MetricsRow> rows;
  std::vector<DayCommunities> communities;
};

struct DayOptions {
  std::optional<double> threshold_km;
  bool cc_exclude_low_degree = false;
  std::uint64_t louvain_seed = 42;
  std::size_t louvain_restarts = 1;
  double eigen_tolerance = 1e-9;
};

/// All metrics for a single network. `distances` covers exactly `vertices`.
std::pair<MetricsRow, DayCommunities> analyze_day(Date date, std::vector<std::string> vertices,
                                                  const DistanceMatrix& distances, std::size_t new_vertices,
                                                  const DayOptions& options);

/// Runs every day of the timeline, optionally on `jobs` worker threads; rows come back in date order.
AnalysisResult analyze_timeline(const VertexTimeline& timeline, const DayOptions& options, std::size_t jobs = 1);

/// Full `analyze` pipeline from files: parse, exclude, build timeline, analyze, write outputs.
/// Warnings (e.g. unmatched exclusion states) go to `log`.
AnalysisResult run_analysis(const RunConfig& cfg, std::ostream& log);

/// Fixed metrics CSV column order.
inline constexpr const char* kMetricsHeader =
    "date,n,new_vertices,d_km,max_degree,avg_degree,avg_clustering,triangles,diameter,avg_path_length,"
    "spectral_radius,algebraic_connectivity,modularity,communities,largest_community";

/// Reals use 9 significant digits in the C locale.
std::string format_real(double v);

void write_metrics_csv(std::ostream& out, const std::vector<MetricsRow>& rows);
std::vector<MetricsRow> read_metrics_csv(std::istream& in);
/// Checks header, column count, cell types and strictly increasing dates. Returns a list of problems.
std::vector<std::string> validate_metrics_csv(std::istream& in);

void write_communities_json(std::ostream& out, const std::vector<DayCommunities>& days);

/// FitResult JSON: {model, params, rss, converged, iterations, origin_date}.
std::string fit_to_json(const FitResult& fit);
FitResult fit_from_json(const std::string& text);

/// Day-index series (x = 1 on `origin`) of |V(t)| from metrics rows. With `before`, only
/// rows dated strictly earlier are kept.
GrowthSeries growth_series(const std::vector<MetricsRow>& rows, Date origin, std::optional<Date> before = std::nullopt);

struct ProjectionRow {
  Date date;
  int x = 0;
  double value = 0.0;
};

/// Model values from the fit's origin (x = 1) through `through`. Throws ValidationError
/// when `through` precedes the origin or the fit has no origin date.
std::vector<ProjectionRow> project(const FitResult& fit, Date through);
void write_projection_csv(std::ostream& out, const std::vector<ProjectionRow>& rows);

struct SynthOptions {
  std::size_t n = 100;
  Date start{2020, 3, 1};
  Date end{2020, 4, 17};
  std::uint64_t seed = 1;
  double lat_min = 8.0, lat_max = 35.0;
  double lon_min = 68.0, lon_max = 97.0;
  std::size_t states = 8;
};

/// Seeded synthetic records: uniform coordinates in the bounding box, first-report days
/// from a logistic quantile so cumulative counts trace an S-curve. Same options, same bytes.
void write_synthetic_records(std::ostream& out, const SynthOptions& options);

}  // namespace geonet
