#include "geonet/symmetric_eigen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "geonet/errors.hpp"

namespace geonet {

namespace {

double norm2(const std::vector<double>& x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

}  // namespace

TridiagonalForm::TridiagonalForm(SymmetricMatrix m) : n_(m.n), diag_(m.n, 0.0), off_(m.n, 0.0) {
  const std::size_t n = n_;
  std::vector<double> p(n), w(n);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    const std::size_t len = n - k - 1;
    std::vector<double> v(len);
    double scale = 0.0;
    for (std::size_t i = 0; i < len; ++i) {
      v[i] = m(k + 1 + i, k);
      scale += v[i] * v[i];
    }
    double tail = scale - v[0] * v[0];
    if (tail == 0.0) {
      // Column already tridiagonal below the subdiagonal.
      reflectors_.emplace_back();
      betas_.push_back(0.0);
      continue;
    }
    const double norm = std::sqrt(scale);
    const double alpha = v[0] > 0.0 ? -norm : norm;
    v[0] -= alpha;
    const double vtv = v[0] * v[0] + tail;
    const double beta = 2.0 / vtv;

    // Trailing block update A22 <- H A22 H with H = I - beta v v^T.
    double vtp = 0.0;
    for (std::size_t i = 0; i < len; ++i) {
      const double* row = &m.a[(k + 1 + i) * n + k + 1];
      double acc = 0.0;
      for (std::size_t j = 0; j < len; ++j) acc += row[j] * v[j];
      p[i] = beta * acc;
      vtp += v[i] * p[i];
    }
    const double half = 0.5 * beta * vtp;
    for (std::size_t i = 0; i < len; ++i) w[i] = p[i] - half * v[i];
    for (std::size_t i = 0; i < len; ++i) {
      double* row = &m.a[(k + 1 + i) * n + k + 1];
      const double vi = v[i], wi = w[i];
      for (std::size_t j = 0; j < len; ++j) row[j] -= vi * w[j] + wi * v[j];
    }
    m(k + 1, k) = alpha;
    m(k, k + 1) = alpha;
    reflectors_.push_back(std::move(v));
    betas_.push_back(beta);
  }
  for (std::size_t i = 0; i < n; ++i) {
    diag_[i] = m(i, i);
    if (i + 1 < n) off_[i] = m(i, i + 1);
  }
}

void TridiagonalForm::apply_q(std::vector<double>& x) const {
  for (std::size_t k = reflectors_.size(); k-- > 0;) {
    const auto& v = reflectors_[k];
    if (v.empty()) continue;
    double dot = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) dot += v[i] * x[k + 1 + i];
    const double f = betas_[k] * dot;
    for (std::size_t i = 0; i < v.size(); ++i) x[k + 1 + i] -= f * v[i];
  }
}

std::vector<double> tridiagonal_eigenvalues(std::vector<double> d, std::vector<double> e, std::size_t sweep_cap,
                                            std::size_t& sweeps) {
  const std::size_t n = d.size();
  e.resize(n, 0.0);
  if (n > 0) e[n - 1] = 0.0;
  sweeps = 0;
  constexpr double eps = std::numeric_limits<double>::epsilon();

  for (std::size_t l = 0; l < n; ++l) {
    while (true) {
      std::size_t m = l;
      for (; m + 1 < n; ++m) {
        const double dd = std::fabs(d[m]) + std::fabs(d[m + 1]);
        if (std::fabs(e[m]) <= eps * dd) break;
      }
      if (m == l) break;
      if (++sweeps > sweep_cap) {
        throw ConvergenceError("tridiagonal QL exceeded its sweep cap", d[l], std::fabs(e[l]));
      }
      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0, c = 1.0, p = 0.0;
      bool underflow = false;
      for (std::size_t i = m; i-- > l;) {
        double f = s * e[i];
        const double b = c * e[i];
        r = std::hypot(f, g);
        e[i + 1] = r;
        if (r == 0.0) {
          d[i + 1] -= p;
          e[m] = 0.0;
          underflow = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
      }
      if (underflow) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    }
  }
  std::sort(d.begin(), d.end());
  return d;
}

std::vector<double> tridiagonal_eigenvector(const std::vector<double>& diag, const std::vector<double>& off, double mu,
                                            std::uint64_t seed, std::size_t iteration_cap, std::size_t& iterations) {
  const std::size_t n = diag.size();
  iterations = 0;
  if (n == 1) return {1.0};

  double tnorm = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = std::fabs(diag[i]) + (i + 1 < n ? std::fabs(off[i]) : 0.0) + (i > 0 ? std::fabs(off[i - 1]) : 0.0);
    tnorm = std::max(tnorm, row);
  }
  const double tiny = std::numeric_limits<double>::epsilon() * std::max(tnorm, 1.0);

  // LU with partial pivoting of T - mu I; U has two superdiagonals.
  std::vector<double> b(n), c(n, 0.0), c2(n, 0.0), mult(n, 0.0);
  std::vector<bool> swapped(n, false);
  for (std::size_t i = 0; i < n; ++i) b[i] = diag[i] - mu;
  for (std::size_t i = 0; i + 1 < n; ++i) c[i] = off[i];
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double sub = off[i];
    if (std::fabs(b[i]) >= std::fabs(sub)) {
      if (b[i] == 0.0) b[i] = tiny;
      mult[i] = sub / b[i];
      b[i + 1] -= mult[i] * c[i];
    } else {
      swapped[i] = true;
      mult[i] = b[i] / sub;
      const double old_c = c[i];
      const double next_c = i + 2 < n ? c[i + 1] : 0.0;
      b[i] = sub;
      c[i] = b[i + 1];
      c2[i] = next_c;
      b[i + 1] = old_c - mult[i] * c[i];
      if (i + 2 < n) c[i + 1] = -mult[i] * next_c;
    }
  }
  if (b[n - 1] == 0.0) b[n - 1] = tiny;

  std::mt19937_64 rng(seed);
  std::vector<double> x(n);
  for (auto& v : x) v = static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5;

  auto residual_of = [&](const std::vector<double>& y) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double t = (diag[i] - mu) * y[i];
      if (i > 0) t += off[i - 1] * y[i - 1];
      if (i + 1 < n) t += off[i] * y[i + 1];
      s += t * t;
    }
    return std::sqrt(s);
  };

  double previous = std::numeric_limits<double>::infinity();
  while (iterations < iteration_cap) {
    ++iterations;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (swapped[i]) std::swap(x[i], x[i + 1]);
      x[i + 1] -= mult[i] * x[i];
    }
    x[n - 1] /= b[n - 1];
    x[n - 2] = (x[n - 2] - c[n - 2] * x[n - 1]) / b[n - 2];
    for (std::size_t i = n - 2; i-- > 0;) x[i] = (x[i] - c[i] * x[i + 1] - c2[i] * x[i + 2]) / b[i];
    const double nx = norm2(x);
    for (auto& v : x) v /= nx;
    const double res = residual_of(x);
    // Stop once another step no longer pays off.
    if (res <= 4.0 * tiny || res >= 0.5 * previous) break;
    previous = res;
  }
  return x;
}

double eigen_residual(const SymmetricMatrix& m, const std::vector<double>& x, double mu) {
  double s = 0.0;
  for (std::size_t i = 0; i < m.n; ++i) {
    const double* row = &m.a[i * m.n];
    double acc = -mu * x[i];
    for (std::size_t j = 0; j < m.n; ++j) acc += row[j] * x[j];
    s += acc * acc;
  }
  return std::sqrt(s);
}

EigenPair select_eigenpair(const SymmetricMatrix& m, const EigenSelector& pick, double tol, std::size_t iteration_cap,
                           std::uint64_t seed) {
  if (m.n == 0) throw ValidationError("eigenpair of an empty matrix");
  TridiagonalForm t(m);
  std::size_t sweeps = 0;
  auto values = tridiagonal_eigenvalues(t.diagonal(), t.offdiagonal(), iteration_cap, sweeps);

  EigenPair out;
  out.value = pick(values);
  std::size_t steps = 0;
  out.vector = tridiagonal_eigenvector(t.diagonal(), t.offdiagonal(), out.value, seed,
                                       iteration_cap > sweeps ? iteration_cap - sweeps : 1, steps);
  t.apply_q(out.vector);
  out.iterations = sweeps + steps;
  out.residual = eigen_residual(m, out.vector, out.value);
  if (!(out.residual <= tol * norm2(out.vector))) {
    throw ConvergenceError("eigenvector residual above tolerance", out.value, out.residual);
  }
  return out;
}

EigenPair extremal_eigenpair(const SymmetricMatrix& m, Extremal which, double tol, std::size_t iteration_cap,
                             std::uint64_t seed) {
  return select_eigenpair(
      m, [which](std::span<const double> v) { return which == Extremal::smallest ? v.front() : v.back(); }, tol,
      iteration_cap, seed);
}

}  // namespace geonet
