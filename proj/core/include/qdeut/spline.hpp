#pragma once

#include <vector>

#include <Eigen/Dense>

namespace qdeut {

// Natural cubic interpolating spline through (xs, ys). xs must be strictly
// increasing with at least 4 points (the minimum-location use case needs a
// genuinely cubic interpolant).
class CubicSpline {
 public:
  CubicSpline(std::vector<double> xs, std::vector<double> ys);

  double operator()(double x) const;
  double derivative(double x) const;

  double x_min() const { return xs_.front(); }
  double x_max() const { return xs_.back(); }

  struct Minimum {
    double x = 0.0;
    double value = 0.0;
  };

  // Global minimum over the knot range, found in closed form: on each piece
  // the derivative is a quadratic whose roots are candidate interior minima.
  Minimum minimum() const;

 private:
  int piece_for(double x) const;

  std::vector<double> xs_, ys_;
  std::vector<double> m_;  // second derivatives at the knots
};

// Tensor-product natural cubic spline over a rectangular grid.
// values(i, j) is the sample at (xs[i], ys[j]). Both axes need >= 4 points.
class BicubicSpline {
 public:
  BicubicSpline(std::vector<double> xs, std::vector<double> ys, Eigen::MatrixXd values);

  double operator()(double x, double y) const;

  struct Minimum {
    double x = 0.0;
    double y = 0.0;
    double value = 0.0;
  };

  // Global minimum over the grid rectangle: dense sub-grid scan followed by
  // a bounded Newton polish. Deterministic.
  Minimum minimum() const;

 private:
  std::vector<double> xs_, ys_;
  Eigen::MatrixXd values_;
  std::vector<CubicSpline> row_splines_;  // one spline in y per x-grid row
};

}  // namespace qdeut
