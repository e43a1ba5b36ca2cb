#include "geonet/spectral.hpp"

#include <algorithm>
#include <cmath>

#include "geonet/errors.hpp"

namespace geonet {

namespace {

void check_tol(double tol) {
  if (!(tol > 0.0)) throw ValidationError("eigen tolerance must be positive");
}

}  // namespace

SymmetricMatrix adjacency_matrix(const Snapshot& s) {
  SymmetricMatrix m(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (auto j : s.neighbors(i)) m(i, j) = 1.0;
  }
  return m;
}

EigenEstimate spectral_radius(const Snapshot& s, double tol) {
  check_tol(tol);
  if (s.size() == 0) throw ValidationError("spectral radius of an empty vertex set");
  if (s.edge_count() == 0) return {};
  const auto a = adjacency_matrix(s);
  // Perron-Frobenius makes the top eigenvalue win except for rounding ties with -rho.
  const auto pair = select_eigenpair(
      a, [](std::span<const double> v) { return std::fabs(v.front()) > v.back() ? v.front() : v.back(); }, tol,
      kEigenIterationCap, kEigenSeed);
  return {std::fabs(pair.value), pair.residual, pair.iterations};
}

EigenEstimate algebraic_connectivity(const Snapshot& s, double tol) {
  check_tol(tol);
  const std::size_t n = s.size();
  if (n < 2) throw ValidationError("algebraic connectivity needs at least 2 vertices");
  const auto& deg = s.degree_seq();
  const double shift = 2.0 * static_cast<double>(*std::max_element(deg.begin(), deg.end())) + 1.0;
  const double fill = shift / static_cast<double>(n);

  SymmetricMatrix m(n);
  const LaplacianView lap(s);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m(i, j) = lap(i, j) + fill;
  }
  const auto pair = extremal_eigenpair(m, Extremal::smallest, tol, kEigenIterationCap, kEigenSeed);
  return {std::max(pair.value, 0.0), pair.residual, pair.iterations};
}

SpectralResult analyze_spectrum(const Snapshot& s, double tol) {
  SpectralResult out;
  const auto rho = spectral_radius(s, tol);
  out.spectral_radius = rho.value;
  out.iterations_used = rho.iterations;
  out.residual = rho.residual;
  if (s.size() < 2) return out;

  const auto lambda = algebraic_connectivity(s, tol);
  out.iterations_used += lambda.iterations;
  out.residual = std::max(out.residual, lambda.residual);
  out.disconnected = lambda.value < kDisconnectedLambda;
  if (out.disconnected != !s.connected()) {
    throw InternalError("spectral and union-find connectivity verdicts disagree on " + s.date().to_string());
  }
  out.algebraic_connectivity = out.disconnected ? 0.0 : lambda.value;
  return out;
}

}  // namespace geonet
