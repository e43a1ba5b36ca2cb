#include "geonet/growthfit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "geonet/errors.hpp"

namespace geonet {

namespace {

using Vec4 = std::array<double, 4>;
using Mat4 = std::array<std::array<double, 4>, 4>;

/// Solves a 4x4 system by Gaussian elimination with partial pivoting. Returns false if singular.
bool solve4(Mat4 a, Vec4 b, Vec4& x) {
  for (std::size_t col = 0; col < 4; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < 4; ++r) {
      if (std::fabs(a[r][col]) > std::fabs(a[piv][col])) piv = r;
    }
    if (a[piv][col] == 0.0) return false;
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = col + 1; r < 4; ++r) {
      const double f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < 4; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  for (std::size_t i = 4; i-- > 0;) {
    double s = b[i];
    for (std::size_t c = i + 1; c < 4; ++c) s -= a[i][c] * x[c];
    x[i] = s / a[i][i];
  }
  return true;
}

double tanh_model(const Vec4& p, double x) { return p[0] * std::tanh(p[1] * (x - p[2])) + p[3]; }

// The fitter iterates on q = (s, beta, c, gamma) with s = alpha * beta, i.e. on
// s * g(beta, x - c) + gamma where g = tanh(beta u) / beta. This form stays smooth as
// beta -> 0 (g -> u), so nearly linear data does not strand the iteration in the
// curved alpha * beta = const valley of the original parameters.
struct ScaledTerm {
  double g;        // tanh(beta u) / beta
  double dg_dbeta;
  double sech2;    // dg/du
};

ScaledTerm scaled_term(double beta, double u) {
  const double z = beta * u;
  const double th = std::tanh(z);
  const double sech2 = 1.0 - th * th;
  if (std::fabs(z) < 1e-2) {
    const double z2 = z * z;
    return {u * (1.0 - z2 / 3.0 + 2.0 * z2 * z2 / 15.0 - 17.0 * z2 * z2 * z2 / 315.0),
            u * u * z * (-2.0 / 3.0 + 8.0 * z2 / 15.0 - 34.0 * z2 * z2 / 105.0), sech2};
  }
  const double g = th / beta;
  return {g, (u * sech2 - g) / beta, sech2};
}

double scaled_model(const Vec4& q, double x) { return q[0] * scaled_term(q[1], x - q[2]).g + q[3]; }

Vec4 scaled_jacobian(const Vec4& q, double x) {
  const auto t = scaled_term(q[1], x - q[2]);
  return {t.g, q[0] * t.dg_dbeta, -q[0] * t.sech2, 1.0};
}

double rss_of(const Vec4& q, const GrowthSeries& s) {
  double rss = 0.0;
  for (std::size_t i = 0; i < s.x.size(); ++i) {
    const double r = s.y[i] - scaled_model(q, s.x[i]);
    rss += r * r;
  }
  return rss;
}

std::vector<std::array<double, 4>> cubic_design(const std::vector<double>& x) {
  std::vector<std::array<double, 4>> rows;
  rows.reserve(x.size());
  for (double v : x) rows.push_back({v * v * v, v * v, v, 1.0});
  return rows;
}

}  // namespace

void GrowthSeries::validate() const {
  if (x.size() != y.size()) throw ValidationError("growth series x and y differ in length");
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i]) || !std::isfinite(y[i])) throw ValidationError("growth series has a non-finite value");
    if (x[i] != std::round(x[i])) throw ValidationError("growth series x must be integer day indices");
    if (i > 0 && !(x[i] > x[i - 1])) throw ValidationError("growth series x must be strictly increasing");
    if (i > 0 && y[i] < y[i - 1]) throw ValidationError("cumulative growth series y must be non-decreasing");
  }
}

std::string to_string(GrowthModel model) { return model == GrowthModel::cubic ? "cubic" : "tanh"; }

GrowthModel parse_growth_model(const std::string& name) {
  if (name == "cubic") return GrowthModel::cubic;
  if (name == "tanh") return GrowthModel::tanh;
  throw ValidationError("unknown model '" + name + "' (expected cubic or tanh)");
}

double evaluate(const FitResult& fit, double x) {
  const auto& p = fit.params;
  if (fit.model == GrowthModel::tanh) return tanh_model(p, x);
  return ((p[0] * x + p[1]) * x + p[2]) * x + p[3];
}

std::vector<double> extrapolate(const FitResult& fit, const std::vector<double>& x_values) {
  std::vector<double> out;
  out.reserve(x_values.size());
  for (double x : x_values) out.push_back(evaluate(fit, x));
  return out;
}

double saturation_level(const FitResult& fit) {
  const auto& p = fit.params;
  if (fit.model == GrowthModel::tanh) {
    if (p[1] == 0.0) return p[3];
    return (p[1] > 0.0 ? p[0] : -p[0]) + p[3];
  }
  for (std::size_t i = 0; i < 3; ++i) {
    if (p[i] != 0.0) return p[i] > 0.0 ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
  }
  return p[3];
}

double cubic_design_condition(const std::vector<double>& x) {
  // One-sided Jacobi: rotate column pairs until mutually orthogonal; the column norms
  // are then the singular values.
  auto rows = cubic_design(x);
  for (int sweep = 0; sweep < 60; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p < 3; ++p) {
      for (std::size_t q = p + 1; q < 4; ++q) {
        double alpha = 0.0, beta = 0.0, gamma = 0.0;
        for (const auto& r : rows) {
          alpha += r[p] * r[p];
          beta += r[q] * r[q];
          gamma += r[p] * r[q];
        }
        if (std::fabs(gamma) <= 1e-15 * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = std::copysign(1.0, zeta) / (std::fabs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (auto& r : rows) {
          const double a = r[p], b = r[q];
          r[p] = c * a - s * b;
          r[q] = s * a + c * b;
        }
      }
    }
    if (!rotated) break;
  }
  double smax = 0.0, smin = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < 4; ++j) {
    double s = 0.0;
    for (const auto& r : rows) s += r[j] * r[j];
    s = std::sqrt(s);
    smax = std::max(smax, s);
    smin = std::min(smin, s);
  }
  return smin == 0.0 ? std::numeric_limits<double>::infinity() : smax / smin;
}

FitResult fit_cubic(const GrowthSeries& series) {
  if (series.x.size() < 4) {
    throw ValidationError("cubic fit: need >= 4 points, got " + std::to_string(series.x.size()));
  }
  if (series.x.size() != series.y.size()) throw ValidationError("growth series x and y differ in length");
  for (std::size_t i = 1; i < series.x.size(); ++i) {
    if (!(series.x[i] > series.x[i - 1])) throw ValidationError("growth series x must be strictly increasing");
  }
  const double cond = cubic_design_condition(series.x);
  if (!(cond <= kMaxCubicCondition)) throw InternalError("cubic design matrix is ill-conditioned");

  // Householder QR of the n x 4 design, applied to y as we go.
  auto a = cubic_design(series.x);
  std::vector<double> rhs = series.y;
  const std::size_t n = a.size();
  for (std::size_t k = 0; k < 4; ++k) {
    double norm = 0.0;
    for (std::size_t i = k; i < n; ++i) norm += a[i][k] * a[i][k];
    norm = std::sqrt(norm);
    if (norm == 0.0) throw InternalError("rank-deficient cubic design");
    const double alpha = a[k][k] > 0.0 ? -norm : norm;
    std::vector<double> v(n - k);
    for (std::size_t i = k; i < n; ++i) v[i - k] = a[i][k];
    v[0] -= alpha;
    double vtv = 0.0;
    for (double e : v) vtv += e * e;
    const double beta = 2.0 / vtv;
    for (std::size_t j = k; j < 4; ++j) {
      double dot = 0.0;
      for (std::size_t i = k; i < n; ++i) dot += v[i - k] * a[i][j];
      for (std::size_t i = k; i < n; ++i) a[i][j] -= beta * dot * v[i - k];
    }
    double dot = 0.0;
    for (std::size_t i = k; i < n; ++i) dot += v[i - k] * rhs[i];
    for (std::size_t i = k; i < n; ++i) rhs[i] -= beta * dot * v[i - k];
  }

  FitResult fit;
  fit.model = GrowthModel::cubic;
  for (std::size_t i = 4; i-- > 0;) {
    double s = rhs[i];
    for (std::size_t j = i + 1; j < 4; ++j) s -= a[i][j] * fit.params[j];
    fit.params[i] = s / a[i][i];
  }
  fit.rss = residual_sum_of_squares(fit, series);
  fit.converged = true;
  fit.iterations = 1;
  return fit;
}

std::array<double, 4> tanh_initial_guess(const GrowthSeries& s) {
  const auto [lo, hi] = std::minmax_element(s.y.begin(), s.y.end());
  const double range = *hi - *lo;
  const double mean = std::accumulate(s.y.begin(), s.y.end(), 0.0) / static_cast<double>(s.y.size());
  double c0 = s.x.back();
  for (std::size_t i = 0; i < s.y.size(); ++i) {
    if (s.y[i] >= mean) {
      c0 = s.x[i];
      break;
    }
  }
  double max_slope = 0.0;
  for (std::size_t i = 1; i < s.y.size(); ++i) {
    max_slope = std::max(max_slope, (s.y[i] - s.y[i - 1]) / (s.x[i] - s.x[i - 1]));
  }
  double beta0 = range > 0.0 ? 4.0 * max_slope / range : 0.0;
  if (beta0 <= 0.0) beta0 = 1.0 / std::max(1.0, s.x.back() - s.x.front());
  return {range / 2.0, beta0, c0, mean};
}

std::array<double, 4> tanh_jacobian(const std::array<double, 4>& p, double x) {
  const double u = p[1] * (x - p[2]);
  const double th = std::tanh(u);
  const double sech2 = 1.0 - th * th;
  return {th, p[0] * sech2 * (x - p[2]), -p[0] * p[1] * sech2, 1.0};
}

double residual_sum_of_squares(const FitResult& fit, const GrowthSeries& series) {
  double rss = 0.0;
  for (std::size_t i = 0; i < series.x.size(); ++i) {
    const double r = series.y[i] - evaluate(fit, series.x[i]);
    rss += r * r;
  }
  return rss;
}

FitResult fit_tanh_unchecked(const GrowthSeries& series, const std::optional<std::array<double, 4>>& init,
                             const TanhFitOptions& options, std::vector<double>* rss_trace) {
  if (series.x.size() != series.y.size()) throw ValidationError("growth series x and y differ in length");
  if (series.x.size() < 5) {
    throw ValidationError("tanh fit: need >= 5 points, got " + std::to_string(series.x.size()));
  }
  const auto [lo, hi] = std::minmax_element(series.y.begin(), series.y.end());
  if (*lo == *hi) throw ValidationError("tanh fit is degenerate for constant y");

  const Vec4 start = init ? *init : tanh_initial_guess(series);
  Vec4 p{start[0] * start[1], start[1], start[2], start[3]};
  double rss = rss_of(p, series);
  if (!std::isfinite(rss)) throw ValidationError("tanh fit initial parameters give a non-finite residual");
  if (rss_trace) rss_trace->assign(1, rss);

  FitResult fit;
  fit.model = GrowthModel::tanh;
  double damping = 1e-3;
  const std::size_t m = series.x.size();

  while (fit.iterations < options.iteration_cap) {
    ++fit.iterations;
    Mat4 jtj{};
    Vec4 grad{};
    for (std::size_t i = 0; i < m; ++i) {
      const auto j = scaled_jacobian(p, series.x[i]);
      const double r = series.y[i] - scaled_model(p, series.x[i]);
      for (std::size_t a = 0; a < 4; ++a) {
        grad[a] += j[a] * r;
        for (std::size_t b = 0; b < 4; ++b) jtj[a][b] += j[a] * j[b];
      }
    }
    const double gnorm = std::sqrt(std::inner_product(grad.begin(), grad.end(), grad.begin(), 0.0));
    if (gnorm < options.gradient_tol) {
      fit.converged = true;
      break;
    }

    // Retry with growing damping until a step lowers the rss.
    bool accepted = false;
    while (!accepted && damping <= 1e20) {
      Mat4 lhs = jtj;
      for (std::size_t a = 0; a < 4; ++a) lhs[a][a] += damping * std::max(jtj[a][a], 1e-300);
      Vec4 step{};
      if (solve4(lhs, grad, step)) {
        Vec4 trial = p;
        for (std::size_t a = 0; a < 4; ++a) trial[a] += step[a];
        const double trial_rss = rss_of(trial, series);
        if (std::isfinite(trial_rss) && trial_rss < rss) {
          const double improvement = (rss - trial_rss) / rss;
          p = trial;
          rss = trial_rss;
          if (rss_trace) rss_trace->push_back(rss);
          damping = std::max(damping / 10.0, 1e-12);
          accepted = true;
          if (improvement < options.relative_rss_tol) fit.converged = true;
          break;
        }
      }
      damping *= 10.0;
    }
    // No step along any damping lowers the rss: stationary to working precision.
    if (!accepted) fit.converged = true;
    if (fit.converged) break;
  }

  // The scaled model is even in beta, so |beta| with the matching alpha sign gives beta > 0.
  const double beta = std::fabs(p[1]);
  fit.params = {p[0] / beta, beta, p[2], p[3]};
  if (!std::isfinite(fit.params[0])) fit.converged = false;
  fit.rss = rss;
  return fit;
}

FitResult fit_tanh(const GrowthSeries& series, const std::optional<std::array<double, 4>>& init,
                   const TanhFitOptions& options) {
  auto fit = fit_tanh_unchecked(series, init, options);
  if (!fit.converged) {
    throw ConvergenceError("tanh fit did not converge within " + std::to_string(options.iteration_cap) +
                               " iterations (alpha=" + std::to_string(fit.params[0]) +
                               ", beta=" + std::to_string(fit.params[1]) + ", c=" + std::to_string(fit.params[2]) +
                               ", gamma=" + std::to_string(fit.params[3]) + ")",
                           fit.rss, fit.rss);
  }
  return fit;
}

}  // namespace geonet
