#include "qdeut/fit.hpp"

#include <cmath>
#include <stdexcept>

#include "qdeut/errors.hpp"

namespace qdeut {

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y,
                 const std::vector<double>& w, bool weights_are_inverse_variance) {
  const std::size_t n = x.size();
  if (n < 2 || y.size() != n || w.size() != n) {
    throw std::invalid_argument("line fit needs >= 2 points with matching x, y, w sizes");
  }
  double sw = 0.0, sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(w[i] > 0.0)) throw std::invalid_argument("line fit weights must be positive");
    sw += w[i];
    sx += w[i] * x[i];
    sy += w[i] * y[i];
    sxx += w[i] * x[i] * x[i];
    sxy += w[i] * x[i] * y[i];
  }
  const double det = sw * sxx - sx * sx;
  if (!(std::abs(det) > 1e-12 * sw * sxx) || det == 0.0) {
    throw numeric_error("degenerate line-fit design: x values are not distinct");
  }
  LineFit fit;
  fit.slope = (sw * sxy - sx * sy) / det;
  fit.intercept = (sxx * sy - sx * sxy) / det;

  double ss_res = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - fit.intercept - fit.slope * x[i];
    ss_res += w[i] * r * r;
  }
  fit.residual_rms = std::sqrt(ss_res / sw);

  // (X^T W X)^{-1} diagonal.
  double var_intercept = sxx / det;
  double var_slope = sw / det;
  if (!weights_are_inverse_variance) {
    // Scale by the residual variance estimate (zero when the fit is exact).
    const double dof = static_cast<double>(n) - 2.0;
    const double s2 = dof > 0.0 ? ss_res / dof : 0.0;
    var_intercept *= s2;
    var_slope *= s2;
  }
  fit.intercept_err = std::sqrt(std::max(var_intercept, 0.0));
  fit.slope_err = std::sqrt(std::max(var_slope, 0.0));
  return fit;
}

}  // namespace qdeut
