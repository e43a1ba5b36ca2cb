#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "geonet/errors.hpp"
#include "geonet/metrics.hpp"
#include "geonet/spectral.hpp"
#include "graphs.hpp"
#include "oracles.hpp"

using namespace geonet;

TEST_CASE("spectral radius analytic cases") {
  CHECK(spectral_radius(graphs::complete(3)).value == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(spectral_radius(graphs::complete(7)).value == doctest::Approx(6.0).epsilon(1e-12));
  CHECK(spectral_radius(Snapshot::from_edges(5, {})).value == 0.0);
  CHECK(spectral_radius(Snapshot::from_edges(1, {})).value == 0.0);
  // x^3 (x^2 - 4): the star with 4 leaves has rho = 2.
  const auto st = oracle::jacobi_eigenvalues(oracle::adjacency([] {
    oracle::Graph g(5);
    for (std::size_t i = 1; i < 5; ++i) g.add(0, i);
    return g;
  }()));
  CHECK(st.back() == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(spectral_radius(graphs::star(4)).value == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(spectral_radius(graphs::star(9)).value == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("algebraic connectivity analytic cases") {
  CHECK(algebraic_connectivity(graphs::path(2)).value == doctest::Approx(2.0).epsilon(1e-12));
  std::vector<Edge> two{{0, 1}, {2, 3}};
  CHECK(algebraic_connectivity(Snapshot::from_edges(4, two)).value < 1e-7);
  CHECK(algebraic_connectivity(graphs::complete(4)).value == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(algebraic_connectivity(graphs::complete(9)).value == doctest::Approx(9.0).epsilon(1e-12));
  // Path P_n: 2 - 2 cos(pi / n).
  CHECK(algebraic_connectivity(graphs::path(10)).value ==
        doctest::Approx(2.0 - 2.0 * std::cos(std::numbers::pi / 10.0)).epsilon(1e-10));
  CHECK_THROWS_AS(algebraic_connectivity(Snapshot::from_edges(1, {})), ValidationError);
  CHECK_THROWS_AS(algebraic_connectivity(graphs::path(3), 0.0), ValidationError);
}

TEST_CASE("eigenvalues match the Jacobi oracle on random graphs") {
  std::mt19937_64 rng(1234);
  for (int t = 0; t < 60; ++t) {
    const std::size_t n = 2 + rng() % 29;
    auto g = oracle::random_graph(n, 0.05 + 0.5 * static_cast<double>(rng() % 100) / 100.0, rng);
    auto edges = g.edge_list();
    auto s = Snapshot::from_edges(n, edges);

    const auto adj = oracle::jacobi_eigenvalues(oracle::adjacency(g));
    const double rho = std::max(std::fabs(adj.front()), std::fabs(adj.back()));
    const auto lap = oracle::jacobi_eigenvalues(oracle::laplacian(g));

    const auto r = spectral_radius(s);
    const auto l = algebraic_connectivity(s);
    CHECK(std::fabs(r.value - rho) < 1e-8);
    CHECK(std::fabs(l.value - std::max(lap[1], 0.0)) < 1e-8);
    CHECK(r.residual <= kDefaultEigenTolerance);
    CHECK(l.residual <= kDefaultEigenTolerance);

    if (s.edge_count() > 0) {
      const auto deg = degree_stats(s);
      CHECK(r.value >= deg.avg_degree - 1e-9);
      CHECK(r.value >= std::sqrt(static_cast<double>(deg.max_degree)) - 1e-9);
      CHECK(r.value <= static_cast<double>(deg.max_degree) + 1e-9);
    }
    const auto min_deg = *std::min_element(s.degree_seq().begin(), s.degree_seq().end());
    CHECK(l.value <= static_cast<double>(min_deg) + 1e-9);
    CHECK((l.value < kDisconnectedLambda) == !s.connected());
  }
}

TEST_CASE("adding edges never lowers rho or lambda_2") {
  std::mt19937_64 rng(77);
  for (int t = 0; t < 10; ++t) {
    const std::size_t n = 12;
    std::vector<Edge> all;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) all.emplace_back(i, j);
    std::shuffle(all.begin(), all.end(), rng);
    double rho = 0.0, lambda = 0.0;
    for (std::size_t m = 1; m <= all.size(); ++m) {
      auto s = Snapshot::from_edges(n, std::span<const Edge>(all.data(), m));
      const double r = spectral_radius(s).value;
      const double l = algebraic_connectivity(s).value;
      CHECK(r >= rho - 1e-9);
      CHECK(l >= lambda - 1e-9);
      rho = r;
      lambda = l;
    }
  }
}

TEST_CASE("spectrum verdict agrees with union-find") {
  auto connected = analyze_spectrum(graphs::cycle(8));
  CHECK_FALSE(connected.disconnected);
  CHECK(connected.algebraic_connectivity > 0.5);
  auto split = analyze_spectrum(graphs::disjoint_triangles());
  CHECK(split.disconnected);
  CHECK(split.algebraic_connectivity == 0.0);
  CHECK(split.spectral_radius == doctest::Approx(2.0));
  auto one = analyze_spectrum(Snapshot::from_edges(1, {}));
  CHECK(one.spectral_radius == 0.0);
}

TEST_CASE("tridiagonal QL matches Jacobi on dense symmetric matrices") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 1 + rng() % 25;
    SymmetricMatrix m(n);
    std::vector<std::vector<double>> dense(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) m(i, j) = m(j, i) = dense[i][j] = dense[j][i] = u(rng);
    TridiagonalForm tri(m);
    std::size_t sweeps = 0;
    auto ql = tridiagonal_eigenvalues(tri.diagonal(), tri.offdiagonal(), 10000, sweeps);
    auto jac = oracle::jacobi_eigenvalues(dense);
    for (std::size_t i = 0; i < n; ++i) CHECK(std::fabs(ql[i] - jac[i]) < 1e-10);

    auto lo = extremal_eigenpair(m, Extremal::smallest, 1e-9, 10000, 42);
    auto hi = extremal_eigenpair(m, Extremal::largest, 1e-9, 10000, 42);
    CHECK(lo.value == doctest::Approx(jac.front()));
    CHECK(hi.value == doctest::Approx(jac.back()));
    CHECK(eigen_residual(m, hi.vector, hi.value) <= 1e-9);
  }
}

TEST_CASE("QL sweep cap is enforced") {
  SymmetricMatrix m(6);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) m(i, j) = 1.0 / static_cast<double>(i + j + 1);
  CHECK_THROWS_AS(extremal_eigenpair(m, Extremal::largest, 1e-9, 1, 42), ConvergenceError);
}

TEST_CASE("results are reproducible") {
  std::mt19937_64 rng(5);
  auto g = oracle::random_graph(25, 0.3, rng);
  auto edges = g.edge_list();
  auto s = Snapshot::from_edges(25, edges);
  auto a = analyze_spectrum(s), b = analyze_spectrum(s);
  CHECK(a.spectral_radius == b.spectral_radius);
  CHECK(a.algebraic_connectivity == b.algebraic_connectivity);
  CHECK(a.residual == b.residual);
}
