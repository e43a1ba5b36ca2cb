#include "geonet/community.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "geonet/errors.hpp"

namespace geonet {

Partition::Partition(const std::vector<std::size_t>& labels) : assignment_(labels.size()) {
  std::vector<std::size_t> remap;
  std::vector<std::size_t> keys;
  for (std::size_t v = 0; v < labels.size(); ++v) {
    auto it = std::find(keys.begin(), keys.end(), labels[v]);
    if (it == keys.end()) {
      keys.push_back(labels[v]);
      assignment_[v] = keys.size() - 1;
    } else {
      assignment_[v] = static_cast<std::size_t>(it - keys.begin());
    }
  }
  count_ = keys.size();
}

std::vector<std::vector<std::size_t>> Partition::groups() const {
  std::vector<std::vector<std::size_t>> out(count_);
  for (std::size_t v = 0; v < assignment_.size(); ++v) out[assignment_[v]].push_back(v);
  return out;
}

double modularity(const Snapshot& s, const Partition& p) {
  if (p.size() != s.size()) throw ValidationError("partition does not cover the snapshot's vertices");
  if (s.edge_count() == 0) throw ValidationError("modularity is undefined for a graph without edges");
  const auto m = static_cast<double>(s.edge_count());
  std::vector<double> internal(p.community_count(), 0.0);
  std::vector<double> degree(p.community_count(), 0.0);
  for (std::size_t v = 0; v < s.size(); ++v) {
    degree[p.label(v)] += static_cast<double>(s.degree(v));
    for (auto w : s.neighbors(v)) {
      if (v < w && p.label(v) == p.label(w)) internal[p.label(v)] += 1.0;
    }
  }
  double q = 0.0;
  for (std::size_t c = 0; c < p.community_count(); ++c) {
    const double frac = degree[c] / (2.0 * m);
    q += internal[c] / m - frac * frac;
  }
  return q;
}

CommunityStats community_stats(const Partition& p) {
  CommunityStats out;
  out.community_count = p.community_count();
  out.size_distribution.assign(p.community_count(), 0);
  for (auto c : p.assignment()) ++out.size_distribution[c];
  std::sort(out.size_distribution.begin(), out.size_distribution.end());
  out.largest_size = out.size_distribution.empty() ? 0 : out.size_distribution.back();
  return out;
}

namespace {

/// Weighted graph for one Louvain level. Each node may carry a self-loop holding the
/// weight of edges already collapsed inside it.
struct LevelGraph {
  std::vector<std::vector<std::pair<std::size_t, double>>> adj;  // no self entries
  std::vector<double> self_weight;
  std::vector<double> strength;  // 2 * self_weight + sum of incident weights
  double total = 0.0;            // m, the original edge count

  std::size_t size() const { return adj.size(); }
};

LevelGraph from_snapshot(const Snapshot& s) {
  LevelGraph g;
  const std::size_t n = s.size();
  g.adj.resize(n);
  g.self_weight.assign(n, 0.0);
  g.strength.assign(n, 0.0);
  for (std::size_t v = 0; v < n; ++v) {
    for (auto w : s.neighbors(v)) g.adj[v].emplace_back(w, 1.0);
    g.strength[v] = static_cast<double>(s.degree(v));
  }
  g.total = static_cast<double>(s.edge_count());
  return g;
}

void seeded_shuffle(std::vector<std::size_t>& order, std::mt19937_64& rng) {
  // Fisher-Yates on raw engine output: std::shuffle's draws differ between standard libraries.
  for (std::size_t i = order.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng() % i);
    std::swap(order[i - 1], order[j]);
  }
}

struct LocalMoveResult {
  std::vector<std::size_t> community;  // per node of the level graph, dense labels
  std::size_t count = 0;
  bool moved = false;
  double modularity = 0.0;
};

LocalMoveResult local_moves(const LevelGraph& g, std::mt19937_64& rng) {
  const std::size_t n = g.size();
  const double m = g.total;
  const double two_m = 2.0 * m;

  std::vector<std::size_t> comm(n);
  std::iota(comm.begin(), comm.end(), std::size_t{0});
  std::vector<double> tot = g.strength;
  std::vector<double> in = g.self_weight;

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  seeded_shuffle(order, rng);

  std::vector<double> link(n, 0.0);
  std::vector<bool> touched(n, false);
  std::vector<std::size_t> candidates;

  LocalMoveResult out;
  bool pass_moved = true;
  while (pass_moved) {
    pass_moved = false;
    for (auto v : order) {
      const std::size_t home = comm[v];
      const double k = g.strength[v];

      candidates.clear();
      for (auto [w, weight] : g.adj[v]) {
        const auto c = comm[w];
        if (!touched[c]) {
          touched[c] = true;
          candidates.push_back(c);
        }
        link[c] += weight;
      }

      tot[home] -= k;
      in[home] -= link[home] + g.self_weight[v];

      // Gains in units of 1/m: link to c minus the expected link tot_c * k / 2m.
      auto gain = [&](std::size_t c) { return link[c] - tot[c] * k / two_m; };
      const double stay = gain(home);
      double best_gain = -std::numeric_limits<double>::infinity();
      for (auto c : candidates) {
        if (c != home) best_gain = std::max(best_gain, gain(c));
      }
      std::size_t target = home;
      const double tie = kMinModularityGain * m;
      if (best_gain - stay > tie) {
        target = n;
        for (auto c : candidates) {
          if (c != home && best_gain - gain(c) <= tie) target = std::min(target, c);
        }
      }

      tot[target] += k;
      in[target] += link[target] + g.self_weight[v];
      if (target != home) {
        comm[v] = target;
        pass_moved = true;
        out.moved = true;
      }

      for (auto c : candidates) {
        link[c] = 0.0;
        touched[c] = false;
      }
    }
  }

  std::vector<std::size_t> relabel(n, n);
  for (std::size_t v = 0; v < n; ++v) {
    auto& r = relabel[comm[v]];
    if (r == n) {
      r = out.count++;
      const double frac = tot[comm[v]] / two_m;
      out.modularity += in[comm[v]] / m - frac * frac;
    }
  }
  out.community.resize(n);
  for (std::size_t v = 0; v < n; ++v) out.community[v] = relabel[comm[v]];
  return out;
}

LevelGraph aggregate(const LevelGraph& g, const std::vector<std::size_t>& community, std::size_t count) {
  LevelGraph next;
  next.total = g.total;
  next.adj.resize(count);
  next.self_weight.assign(count, 0.0);
  next.strength.assign(count, 0.0);

  std::vector<std::vector<double>> weights(count);
  std::vector<std::vector<std::size_t>> seen(count);
  std::vector<double> row(count, 0.0);
  std::vector<std::vector<std::size_t>> members(count);
  for (std::size_t v = 0; v < g.size(); ++v) members[community[v]].push_back(v);

  std::vector<std::size_t> hits;
  for (std::size_t c = 0; c < count; ++c) {
    hits.clear();
    for (auto v : members[c]) {
      next.self_weight[c] += g.self_weight[v];
      next.strength[c] += g.strength[v];
      for (auto [w, weight] : g.adj[v]) {
        const auto d = community[w];
        if (d == c) {
          next.self_weight[c] += 0.5 * weight;  // each internal edge is seen from both ends
          continue;
        }
        if (row[d] == 0.0) hits.push_back(d);
        row[d] += weight;
      }
    }
    std::sort(hits.begin(), hits.end());
    for (auto d : hits) {
      next.adj[c].emplace_back(d, row[d]);
      row[d] = 0.0;
    }
  }
  return next;
}

}  // namespace

LouvainResult louvain(const Snapshot& s, std::uint64_t seed) {
  if (s.edge_count() == 0) throw ValidationError("Louvain needs a graph with at least one edge");
  std::mt19937_64 rng(seed);
  LevelGraph g = from_snapshot(s);
  std::vector<std::size_t> membership(s.size());
  std::iota(membership.begin(), membership.end(), std::size_t{0});

  LouvainResult out;
  out.incremental_modularity = 0.0;
  bool first = true;
  while (true) {
    auto level = local_moves(g, rng);
    if (first || level.moved) out.incremental_modularity = level.modularity;
    first = false;
    if (!level.moved) break;
    ++out.levels;
    for (auto& c : membership) c = level.community[c];
    g = aggregate(g, level.community, level.count);
  }

  out.partition = Partition(membership);
  out.stats = community_stats(out.partition);
  out.stats.modularity = modularity(s, out.partition);
  return out;
}

LouvainResult louvain_best_of(const Snapshot& s, std::uint64_t seed, std::size_t restarts) {
  if (restarts == 0) throw ValidationError("louvain restarts must be at least 1");
  LouvainResult best = louvain(s, seed);
  for (std::size_t r = 1; r < restarts; ++r) {
    auto candidate = louvain(s, seed + r);
    if (candidate.stats.modularity > best.stats.modularity + kMinModularityGain) best = std::move(candidate);
  }
  return best;
}

}  // namespace geonet
