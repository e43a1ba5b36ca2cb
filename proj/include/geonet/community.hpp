#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "geonet/netbuild.hpp"

namespace geonet {

/// Community label per vertex, dense in 0..count-1.
class Partition {
public:
  Partition() = default;
  /// Relabels arbitrary labels densely in order of first appearance.
  explicit Partition(const std::vector<std::size_t>& labels);

  const std::vector<std::size_t>& assignment() const { return assignment_; }
  std::size_t label(std::size_t v) const { return assignment_[v]; }
  std::size_t size() const { return assignment_.size(); }
  std::size_t community_count() const { return count_; }

  /// Vertex indices grouped by community, communities in label order.
  std::vector<std::vector<std::size_t>> groups() const;

  bool operator==(const Partition&) const = default;

private:
  std::vector<std::size_t> assignment_;
  std::size_t count_ = 0;
};

struct CommunityStats {
  double modularity = 0.0;
  std::size_t community_count = 0;
  std::size_t largest_size = 0;
  std::vector<std::size_t> size_distribution;  // ascending
};

/// Newman-Girvan modularity Q = sum_c [ e_c/m - (d_c/2m)^2 ] at resolution 1.
/// Throws ValidationError for a graph with no edges or a partition of the wrong size.
double modularity(const Snapshot& s, const Partition& p);

/// Counts and sizes; leaves modularity at 0.
CommunityStats community_stats(const Partition& p);

/// Smallest modularity gain that counts as an improvement.
inline constexpr double kMinModularityGain = 1e-12;

struct LouvainResult {
  Partition partition;
  CommunityStats stats;           // stats.modularity is recomputed from scratch on `partition`
  double incremental_modularity;  // value tracked by the optimizer's own bookkeeping
  std::size_t levels = 0;
};

/// Two-phase Louvain: seeded-shuffle local moves to the best neighboring community
/// (ties to the lowest label), then aggregation, until a level changes nothing.
/// Throws ValidationError for a graph with no edges.
LouvainResult louvain(const Snapshot& s, std::uint64_t seed);

/// Best of `restarts` runs with seeds seed, seed+1, ...; the earliest seed wins ties.
LouvainResult louvain_best_of(const Snapshot& s, std::uint64_t seed, std::size_t restarts);

}  // namespace geonet
