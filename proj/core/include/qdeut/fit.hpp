#pragma once

#include <vector>

namespace qdeut {

// Weighted least-squares line y = intercept + slope * x.
struct LineFit {
  double intercept = 0.0;
  double slope = 0.0;
  double intercept_err = 0.0;
  double slope_err = 0.0;
  double residual_rms = 0.0;
};

// Fits a line through (x, y) with weights w (typically 1/sigma^2). With
// uniform weights the parameter errors are scaled by the estimated residual
// variance; with supplied inverse-variance weights they come directly from
// the design covariance. Throws numeric_error when the design is degenerate
// (fewer than two distinct x values).
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y,
                 const std::vector<double>& w, bool weights_are_inverse_variance);

}  // namespace qdeut
