#include "geonet/metrics.hpp"

#include <algorithm>
#include <numeric>

#include "geonet/errors.hpp"

namespace geonet {

DegreeStats degree_stats(const Snapshot& s) {
  DegreeStats out;
  const auto& deg = s.degree_seq();
  if (deg.empty()) return out;
  out.max_degree = *std::max_element(deg.begin(), deg.end());
  const auto sum = std::accumulate(deg.begin(), deg.end(), std::size_t{0});
  out.avg_degree = static_cast<double>(sum) / static_cast<double>(deg.size());
  return out;
}

std::vector<std::uint64_t> triangles_per_vertex(const Snapshot& s) {
  const std::size_t n = s.size();
  // Orient each edge from lower to higher (degree, index) rank; every triangle is then
  // found exactly once from its lowest-ranked vertex.
  auto ranks_before = [&](std::size_t a, std::size_t b) {
    return s.degree(a) != s.degree(b) ? s.degree(a) < s.degree(b) : a < b;
  };
  std::vector<std::vector<std::uint32_t>> out(n);
  for (std::size_t v = 0; v < n; ++v) {
    for (auto w : s.neighbors(v)) {
      if (ranks_before(v, w)) out[v].push_back(w);
    }
    std::sort(out[v].begin(), out[v].end());
  }

  std::vector<std::uint64_t> count(n, 0);
  std::vector<std::uint32_t> common;
  for (std::size_t u = 0; u < n; ++u) {
    for (auto v : out[u]) {
      common.clear();
      std::set_intersection(out[u].begin(), out[u].end(), out[v].begin(), out[v].end(), std::back_inserter(common));
      for (auto w : common) {
        ++count[u];
        ++count[v];
        ++count[w];
      }
    }
  }
  return count;
}

std::uint64_t triangle_count(const Snapshot& s) {
  auto per = triangles_per_vertex(s);
  return std::accumulate(per.begin(), per.end(), std::uint64_t{0}) / 3;
}

Clustering clustering(const Snapshot& s, bool exclude_low_degree) {
  Clustering out;
  const std::size_t n = s.size();
  out.per_vertex.assign(n, 0.0);
  if (n == 0) return out;
  const auto tri = triangles_per_vertex(s);
  double sum = 0.0;
  std::size_t counted = 0;
  for (std::size_t v = 0; v < n; ++v) {
    const auto k = static_cast<double>(s.degree(v));
    if (s.degree(v) >= 2) {
      out.per_vertex[v] = static_cast<double>(tri[v]) / (k * (k - 1.0) / 2.0);
      ++counted;
    }
    sum += out.per_vertex[v];
  }
  const std::size_t denom = exclude_low_degree ? counted : n;
  out.average = denom == 0 ? 0.0 : sum / static_cast<double>(denom);
  return out;
}

std::vector<int> bfs_distances(const Snapshot& s, std::size_t source) {
  std::vector<int> dist(s.size(), -1);
  std::vector<std::size_t> queue;
  queue.reserve(s.size());
  dist[source] = 0;
  queue.push_back(source);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const auto u = queue[head];
    for (auto w : s.neighbors(u)) {
      if (dist[w] < 0) {
        dist[w] = dist[u] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

PathMetrics path_metrics(const Snapshot& s) {
  const std::size_t n = s.size();
  if (n == 0) throw ValidationError("path metrics of an empty graph are undefined");
  if (n == 1) return {};
  if (!s.connected()) {
    throw ValidationError("path metrics need a connected graph; report per component or use the automatic threshold");
  }
  PathMetrics out;
  std::uint64_t total = 0;
  for (std::size_t src = 0; src < n; ++src) {
    for (int d : bfs_distances(s, src)) {
      total += static_cast<std::uint64_t>(d);
      out.diameter = std::max(out.diameter, static_cast<std::size_t>(d));
    }
  }
  out.avg_path_length = static_cast<double>(total) / (static_cast<double>(n) * static_cast<double>(n - 1));
  return out;
}

}  // namespace geonet
