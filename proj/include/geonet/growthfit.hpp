#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "geonet/date.hpp"

namespace geonet {

/// Cumulative region counts against 1-based day indices.
struct GrowthSeries {
  std::vector<double> x;
  std::vector<double> y;

  /// Throws ValidationError unless sizes match, x strictly increases with integer
  /// values and y never decreases.
  void validate() const;
};

enum class GrowthModel { cubic, tanh };

std::string to_string(GrowthModel model);
GrowthModel parse_growth_model(const std::string& name);

/// Parameters: cubic (a3, a2, a1, a0); tanh (alpha, beta, c, gamma) for
/// alpha * tanh(beta * (x - c)) + gamma.
struct FitResult {
  GrowthModel model = GrowthModel::cubic;
  std::array<double, 4> params{};
  double rss = 0.0;
  bool converged = false;
  std::size_t iterations = 0;
  std::optional<Date> origin_date;  // calendar date of x = 1
};

/// Model value at x.
double evaluate(const FitResult& fit, double x);
std::vector<double> extrapolate(const FitResult& fit, const std::vector<double>& x_values);

/// Limit of the model as x -> +infinity (alpha + gamma for tanh with beta > 0).
/// Cubic fits diverge and return +/-infinity (or a0 when all higher terms vanish).
double saturation_level(const FitResult& fit);

/// Largest condition number accepted for the cubic design matrix.
inline constexpr double kMaxCubicCondition = 1e12;

/// Linear least squares for a degree-3 polynomial via Householder QR on the design
/// [x^3 x^2 x 1]. Needs >= 4 distinct x values.
FitResult fit_cubic(const GrowthSeries& series);

/// 2-norm condition number of the cubic design matrix for the given x values.
double cubic_design_condition(const std::vector<double>& x);

struct TanhFitOptions {
  std::size_t iteration_cap = 500;
  double relative_rss_tol = 1e-10;
  double gradient_tol = 1e-8;
};

/// Heuristic start: gamma = mean(y), alpha = (max - min) / 2, c = first x where y
/// reaches mean(y), beta = 4 * (largest first difference) / (max - min).
std::array<double, 4> tanh_initial_guess(const GrowthSeries& series);

/// Jacobian of the tanh model at x with respect to (alpha, beta, c, gamma).
std::array<double, 4> tanh_jacobian(const std::array<double, 4>& params, double x);

/// Levenberg-damped Gauss-Newton fit of the tanh model. Needs >= 5 points and
/// non-constant y. The result is canonicalized to beta > 0. Hitting the iteration cap
/// throws ConvergenceError carrying the best rss; `fit_tanh_unchecked` returns the
/// best-so-far result with converged = false instead.
FitResult fit_tanh(const GrowthSeries& series, const std::optional<std::array<double, 4>>& init = std::nullopt,
                   const TanhFitOptions& options = {});
FitResult fit_tanh_unchecked(const GrowthSeries& series, const std::optional<std::array<double, 4>>& init,
                             const TanhFitOptions& options, std::vector<double>* rss_trace = nullptr);

/// Residual sum of squares of `fit` over `series`.
double residual_sum_of_squares(const FitResult& fit, const GrowthSeries& series);

}  // namespace geonet
