#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace geonet {

/// Dense symmetric matrix, row-major.
struct SymmetricMatrix {
  std::size_t n = 0;
  std::vector<double> a;

  explicit SymmetricMatrix(std::size_t size = 0) : n(size), a(size * size, 0.0) {}
  double& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }
};

/// Orthogonal reduction Q^T A Q = T to symmetric tridiagonal form by Householder
/// reflections. Q is kept in factored form.
class TridiagonalForm {
public:
  explicit TridiagonalForm(SymmetricMatrix m);

  const std::vector<double>& diagonal() const { return diag_; }
  /// offdiagonal()[i] couples rows i and i+1; last entry is 0.
  const std::vector<double>& offdiagonal() const { return off_; }

  /// x <- Q x, mapping a T-eigenvector to an eigenvector of the original matrix.
  void apply_q(std::vector<double>& x) const;

private:
  std::size_t n_;
  std::vector<double> diag_;
  std::vector<double> off_;
  std::vector<std::vector<double>> reflectors_;  // reflectors_[k] spans rows k+1..n-1
  std::vector<double> betas_;
};

/// All eigenvalues of a symmetric tridiagonal matrix (implicit QL with Wilkinson shifts),
/// sorted ascending. `sweeps` receives the number of QL sweeps; exceeding `sweep_cap`
/// throws ConvergenceError.
std::vector<double> tridiagonal_eigenvalues(std::vector<double> diag, std::vector<double> off,
                                            std::size_t sweep_cap, std::size_t& sweeps);

/// Unit eigenvector of T for the (already converged) eigenvalue `mu`, by inverse
/// iteration from a seeded pseudo-random start.
std::vector<double> tridiagonal_eigenvector(const std::vector<double>& diag, const std::vector<double>& off, double mu,
                                            std::uint64_t seed, std::size_t iteration_cap, std::size_t& iterations);

struct EigenPair {
  double value = 0.0;
  std::vector<double> vector;  // unit 2-norm
  double residual = 0.0;       // ||M x - value x||
  std::size_t iterations = 0;  // QL sweeps plus inverse-iteration steps
};

/// Picks the target eigenvalue from the full ascending spectrum.
using EigenSelector = std::function<double(std::span<const double>)>;

/// Eigenpair for the selected eigenvalue of a dense symmetric matrix. Throws
/// ConvergenceError if the iteration cap is hit or the residual exceeds `tol`.
EigenPair select_eigenpair(const SymmetricMatrix& m, const EigenSelector& pick, double tol, std::size_t iteration_cap,
                           std::uint64_t seed);

enum class Extremal { smallest, largest };

EigenPair extremal_eigenpair(const SymmetricMatrix& m, Extremal which, double tol, std::size_t iteration_cap,
                             std::uint64_t seed);

/// ||M x - mu x||_2.
double eigen_residual(const SymmetricMatrix& m, const std::vector<double>& x, double mu);

}  // namespace geonet
