#include <doctest.h>

#include <random>

#include "geonet/community.hpp"
#include "geonet/errors.hpp"
#include "graphs.hpp"
#include "oracles.hpp"

using namespace geonet;

namespace {

oracle::Graph to_oracle(const Snapshot& s) {
  oracle::Graph g(s.size());
  for (auto [a, b] : s.edges()) g.add(a, b);
  return g;
}

}  // namespace

TEST_CASE("partition relabels densely by first appearance") {
  Partition p(std::vector<std::size_t>{7, 7, 3, 9, 3});
  CHECK(p.assignment() == std::vector<std::size_t>{0, 0, 1, 2, 1});
  CHECK(p.community_count() == 3);
  CHECK(p.groups() == std::vector<std::vector<std::size_t>>{{0, 1}, {2, 4}, {3}});
}

TEST_CASE("modularity hand values") {
  auto k3 = graphs::complete(3);
  CHECK(modularity(k3, Partition({0, 0, 0})) == doctest::Approx(0.0));
  CHECK(std::fabs(modularity(k3, Partition({0, 1, 2})) + 1.0 / 3.0) < 1e-12);
  auto bt = graphs::bridged_triangles();
  CHECK(std::fabs(modularity(bt, Partition({0, 0, 0, 1, 1, 1})) - 5.0 / 14.0) < 1e-12);
  CHECK(std::fabs(modularity(bt, Partition({0, 0, 0, 0, 0, 0}))) < 1e-15);
}

TEST_CASE("modularity errors") {
  CHECK_THROWS_AS(modularity(Snapshot::from_edges(3, {}), Partition({0, 1, 2})), ValidationError);
  CHECK_THROWS_AS(modularity(graphs::complete(3), Partition({0, 1})), ValidationError);
  CHECK_THROWS_AS(louvain(Snapshot::from_edges(3, {}), 42), ValidationError);
}

TEST_CASE("community stats") {
  auto a = community_stats(Partition({0, 0, 1}));
  CHECK(a.community_count == 2);
  CHECK(a.largest_size == 2);
  CHECK(a.size_distribution == std::vector<std::size_t>{1, 2});
  auto b = community_stats(Partition({0, 1, 2, 3}));
  CHECK(b.community_count == 4);
  CHECK(b.largest_size == 1);
  auto c = community_stats(Partition({5, 5, 5}));
  CHECK(c.community_count == 1);
  CHECK(c.largest_size == 3);
}

TEST_CASE("louvain on small known graphs") {
  auto k4 = louvain(graphs::bridged_k4(), 42);
  CHECK(k4.stats.community_count == 2);
  CHECK(k4.partition.label(0) == k4.partition.label(3));
  CHECK(k4.partition.label(4) == k4.partition.label(7));
  CHECK(k4.partition.label(0) != k4.partition.label(4));

  std::vector<std::size_t> best;
  const double q_star = oracle::best_modularity(to_oracle(graphs::bridged_k4()), &best);
  CHECK(k4.stats.modularity == doctest::Approx(q_star).epsilon(1e-12));
  CHECK(Partition(best) == k4.partition);

  auto tri = louvain(graphs::complete(3), 42);
  CHECK(tri.stats.community_count == 1);
  CHECK(std::fabs(tri.stats.modularity) < 1e-15);

  auto split = louvain(graphs::disjoint_triangles(), 42);
  CHECK(split.partition == Partition({0, 0, 0, 1, 1, 1}));
  CHECK(split.stats.modularity == doctest::Approx(oracle::best_modularity(to_oracle(graphs::disjoint_triangles()))));
}

TEST_CASE("louvain bookkeeping and quality on random graphs") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = 3 + rng() % 8;
    auto g = oracle::random_graph(n, 0.2 + 0.5 * static_cast<double>(rng() % 100) / 100.0, rng);
    if (g.edges() == 0) continue;
    auto edges = g.edge_list();
    auto s = Snapshot::from_edges(n, edges);
    auto r = louvain(s, 42);

    CHECK(std::fabs(r.stats.modularity - r.incremental_modularity) < 1e-12);
    CHECK(std::fabs(r.stats.modularity - oracle::modularity(g, r.partition.assignment())) < 1e-12);
    std::vector<std::size_t> singletons(n), together(n, 0);
    std::iota(singletons.begin(), singletons.end(), std::size_t{0});
    CHECK(r.stats.modularity >= oracle::modularity(g, singletons) - 1e-12);
    CHECK(r.stats.modularity >= oracle::modularity(g, together) - 1e-12);
    CHECK(r.stats.modularity >= oracle::best_modularity(g) - 0.05);

    std::size_t total = 0;
    for (auto sz : r.stats.size_distribution) total += sz;
    CHECK(total == n);
  }
}

TEST_CASE("louvain is deterministic under a fixed seed") {
  std::mt19937_64 rng(4);
  auto g = oracle::random_graph(60, 0.08, rng);
  auto edges = g.edge_list();
  auto s = Snapshot::from_edges(60, edges);
  auto a = louvain(s, 42), b = louvain(s, 42);
  CHECK(a.partition == b.partition);
  CHECK(a.stats.modularity == b.stats.modularity);
  CHECK(std::fabs(a.stats.modularity - a.incremental_modularity) < 1e-12);

  auto best = louvain_best_of(s, 42, 5);
  for (std::uint64_t seed = 42; seed < 47; ++seed) CHECK(best.stats.modularity >= louvain(s, seed).stats.modularity - 1e-12);
  CHECK_THROWS_AS(louvain_best_of(s, 42, 0), ValidationError);
}

TEST_CASE("isolated vertices stay singletons") {
  std::vector<Edge> e{{0, 1}, {1, 2}, {0, 2}};
  auto r = louvain(Snapshot::from_edges(5, e), 42);
  CHECK(r.stats.community_count == 3);
  CHECK(r.partition.label(3) != r.partition.label(4));
}
