#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "geonet/netbuild.hpp"

namespace geonet {

struct DegreeStats {
  std::size_t max_degree = 0;
  double avg_degree = 0.0;
};

DegreeStats degree_stats(const Snapshot& s);

struct Clustering {
  std::vector<double> per_vertex;
  double average = 0.0;
};

/// Local clustering coefficient per vertex. Vertices with degree < 2 get cc = 0 and by
/// default still count in the average over all n vertices; `exclude_low_degree` averages
/// only over vertices of degree >= 2 instead (0 if there are none).
Clustering clustering(const Snapshot& s, bool exclude_low_degree = false);

/// Number of triangles containing each vertex.
std::vector<std::uint64_t> triangles_per_vertex(const Snapshot& s);

/// Number of closed triples. Degree-ordered neighbor-list intersection.
std::uint64_t triangle_count(const Snapshot& s);

struct PathMetrics {
  std::size_t diameter = 0;
  double avg_path_length = 0.0;
};

/// Hop-count diameter and mean distance over the n(n-1) ordered pairs, by BFS from
/// every vertex. n = 1 gives (0, 0). Throws ValidationError when the graph is disconnected.
PathMetrics path_metrics(const Snapshot& s);

/// BFS hop distances from `source`; unreachable vertices get -1.
std::vector<int> bfs_distances(const Snapshot& s, std::size_t source);

}  // namespace geonet
