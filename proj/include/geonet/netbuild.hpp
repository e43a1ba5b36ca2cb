#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "geonet/date.hpp"
#include "geonet/geo.hpp"

namespace geonet {

/// Symmetric matrix of pairwise great-circle distances (km), zero diagonal.
class DistanceMatrix {
public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(std::size_t n) : n_(n), d_(n * n, 0.0) {}

  std::size_t size() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return d_[i * n_ + j]; }
  /// Sets both (i,j) and (j,i). Throws ValidationError on negative or non-finite values.
  void set(std::size_t i, std::size_t j, double km);

  /// The leading k x k block (the distances among the first k vertices).
  DistanceMatrix leading(std::size_t k) const;

private:
  std::size_t n_ = 0;
  std::vector<double> d_;
};

DistanceMatrix distance_matrix(std::span<const GeoPoint> points);

/// Smallest threshold d for which {(i,j) : d_ij <= d} is connected, i.e. the
/// bottleneck (largest) edge of a minimum spanning tree. Dense Prim, O(n^2). 0 for n <= 1.
double connectivity_parameter(const DistanceMatrix& d);

/// Union-find with path halving and union by size.
class DisjointSets {
public:
  explicit DisjointSets(std::size_t n);
  std::size_t find(std::size_t x);
  bool unite(std::size_t a, std::size_t b);
  std::size_t components() const { return components_; }

private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
  std::size_t components_;
};

using Edge = std::pair<std::size_t, std::size_t>;

/// One day's network: vertices, threshold and adjacency (dense bits plus neighbor lists).
class Snapshot {
public:
  /// Builds a graph directly from an edge list; used for synthetic graphs and tests.
  /// Self-loops and out-of-range endpoints throw ValidationError; duplicate edges collapse.
  static Snapshot from_edges(std::size_t n, std::span<const Edge> edges, Date date = {},
                             std::vector<std::string> vertices = {});

  const Date& date() const { return date_; }
  const std::vector<std::string>& vertices() const { return vertices_; }
  std::size_t size() const { return n_; }
  std::size_t edge_count() const { return edge_count_; }

  double connectivity_param() const { return connectivity_param_; }
  /// True when the threshold was supplied by the caller rather than derived.
  bool fixed_threshold() const { return fixed_threshold_; }

  bool adjacent(std::size_t i, std::size_t j) const { return adjacency_[i * n_ + j] != 0; }
  const std::vector<std::uint32_t>& neighbors(std::size_t v) const { return neighbors_[v]; }
  std::size_t degree(std::size_t v) const { return neighbors_[v].size(); }
  const std::vector<std::size_t>& degree_seq() const { return degree_seq_; }

  std::size_t component_count() const { return component_count_; }
  bool connected() const { return component_count_ <= 1; }

  std::vector<Edge> edges() const;

private:
  friend Snapshot build_snapshot(Date, std::vector<std::string>, const DistanceMatrix&, std::optional<double>);
  void finish();

  Date date_{};
  std::vector<std::string> vertices_;
  std::size_t n_ = 0;
  double connectivity_param_ = 0.0;
  bool fixed_threshold_ = false;
  std::vector<std::uint8_t> adjacency_;
  std::vector<std::vector<std::uint32_t>> neighbors_;
  std::vector<std::size_t> degree_seq_;
  std::size_t edge_count_ = 0;
  std::size_t component_count_ = 0;
};

/// Threshold graph a_ij = 1 iff i != j and d_ij <= threshold. Without a threshold,
/// connectivity_parameter(d) is used and the result is connected.
/// Throws ValidationError on size mismatch or a negative threshold.
Snapshot build_snapshot(Date date, std::vector<std::string> vertices, const DistanceMatrix& d,
                        std::optional<double> threshold = std::nullopt);

/// Graph Laplacian L = D - A with integer entries.
class LaplacianView {
public:
  explicit LaplacianView(const Snapshot& s);
  std::size_t size() const { return n_; }
  int operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }

private:
  std::size_t n_;
  std::vector<int> entries_;
};

inline LaplacianView laplacian(const Snapshot& s) { return LaplacianView(s); }

}  // namespace geonet
