#include "geonet/netbuild.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "geonet/errors.hpp"

namespace geonet {

void DistanceMatrix::set(std::size_t i, std::size_t j, double km) {
  if (!std::isfinite(km) || km < 0.0) throw ValidationError("distance must be finite and non-negative");
  if (i == j && km != 0.0) throw ValidationError("distance matrix diagonal must be zero");
  d_[i * n_ + j] = km;
  d_[j * n_ + i] = km;
}

DistanceMatrix DistanceMatrix::leading(std::size_t k) const {
  if (k > n_) throw ValidationError("leading block larger than matrix");
  DistanceMatrix out(k);
  for (std::size_t i = 0; i < k; ++i) {
    std::copy_n(d_.begin() + static_cast<std::ptrdiff_t>(i * n_), k, out.d_.begin() + static_cast<std::ptrdiff_t>(i * k));
  }
  return out;
}

DistanceMatrix distance_matrix(std::span<const GeoPoint> points) {
  if (points.empty()) throw ValidationError("distance matrix needs at least one point");
  DistanceMatrix d(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) d.set(i, j, haversine_distance(points[i], points[j]));
  }
  return d;
}

double connectivity_parameter(const DistanceMatrix& d) {
  const std::size_t n = d.size();
  if (n <= 1) return 0.0;
  std::vector<double> best(n, std::numeric_limits<double>::infinity());
  std::vector<bool> in_tree(n, false);
  double bottleneck = 0.0;
  std::size_t next = 0;
  best[0] = 0.0;
  for (std::size_t step = 0; step < n; ++step) {
    const std::size_t u = next;
    in_tree[u] = true;
    bottleneck = std::max(bottleneck, best[u]);
    double closest = std::numeric_limits<double>::infinity();
    for (std::size_t v = 0; v < n; ++v) {
      if (in_tree[v]) continue;
      best[v] = std::min(best[v], d(u, v));
      if (best[v] < closest) {
        closest = best[v];
        next = v;
      }
    }
  }
  return bottleneck;
}

DisjointSets::DisjointSets(std::size_t n) : parent_(n), size_(n, 1), components_(n) {
  std::iota(parent_.begin(), parent_.end(), std::size_t{0});
}

std::size_t DisjointSets::find(std::size_t x) {
  while (parent_[x] != x) {
    parent_[x] = parent_[parent_[x]];
    x = parent_[x];
  }
  return x;
}

bool DisjointSets::unite(std::size_t a, std::size_t b) {
  a = find(a);
  b = find(b);
  if (a == b) return false;
  if (size_[a] < size_[b]) std::swap(a, b);
  parent_[b] = a;
  size_[a] += size_[b];
  --components_;
  return true;
}

void Snapshot::finish() {
  neighbors_.assign(n_, {});
  edge_count_ = 0;
  DisjointSets sets(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) {
      if (adjacency_[i * n_ + j] == 0) continue;
      neighbors_[i].push_back(static_cast<std::uint32_t>(j));
      if (i < j) {
        ++edge_count_;
        sets.unite(i, j);
      }
    }
  }
  degree_seq_.resize(n_);
  for (std::size_t i = 0; i < n_; ++i) degree_seq_[i] = neighbors_[i].size();
  component_count_ = sets.components();
  if (vertices_.empty()) {
    for (std::size_t i = 0; i < n_; ++i) vertices_.push_back(std::to_string(i));
  }
}

Snapshot Snapshot::from_edges(std::size_t n, std::span<const Edge> edges, Date date,
                              std::vector<std::string> vertices) {
  if (!vertices.empty() && vertices.size() != n) throw ValidationError("vertex label count differs from n");
  Snapshot s;
  s.date_ = date;
  s.vertices_ = std::move(vertices);
  s.n_ = n;
  s.fixed_threshold_ = true;
  s.adjacency_.assign(n * n, 0);
  for (auto [a, b] : edges) {
    if (a >= n || b >= n) throw ValidationError("edge endpoint out of range");
    if (a == b) throw ValidationError("self-loop");
    s.adjacency_[a * n + b] = 1;
    s.adjacency_[b * n + a] = 1;
  }
  s.finish();
  return s;
}

std::vector<Edge> Snapshot::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (std::size_t i = 0; i < n_; ++i) {
    for (auto j : neighbors_[i]) {
      if (i < j) out.emplace_back(i, j);
    }
  }
  return out;
}

Snapshot build_snapshot(Date date, std::vector<std::string> vertices, const DistanceMatrix& d,
                        std::optional<double> threshold) {
  if (vertices.size() != d.size()) throw ValidationError("vertex list and distance matrix differ in size");
  if (threshold && (!std::isfinite(*threshold) || *threshold < 0.0)) {
    throw ValidationError("threshold must be a non-negative number of km");
  }
  Snapshot s;
  s.date_ = date;
  s.vertices_ = std::move(vertices);
  s.n_ = d.size();
  s.fixed_threshold_ = threshold.has_value();
  s.connectivity_param_ = threshold ? *threshold : connectivity_parameter(d);
  s.adjacency_.assign(s.n_ * s.n_, 0);
  for (std::size_t i = 0; i < s.n_; ++i) {
    for (std::size_t j = i + 1; j < s.n_; ++j) {
      if (d(i, j) <= s.connectivity_param_) {
        s.adjacency_[i * s.n_ + j] = 1;
        s.adjacency_[j * s.n_ + i] = 1;
      }
    }
  }
  s.finish();
  if (!s.fixed_threshold_ && !s.connected()) {
    throw InternalError("auto-threshold snapshot is disconnected");
  }
  return s;
}

LaplacianView::LaplacianView(const Snapshot& s) : n_(s.size()), entries_(s.size() * s.size(), 0) {
  for (std::size_t i = 0; i < n_; ++i) {
    entries_[i * n_ + i] = static_cast<int>(s.degree(i));
    for (auto j : s.neighbors(i)) entries_[i * n_ + j] = -1;
  }
}

}  // namespace geonet
