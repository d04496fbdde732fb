#include "qdeut/spline.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qdeut {
namespace {

void validate_axis(const std::vector<double>& xs) {
  if (xs.size() < 4) {
    throw std::domain_error("spline fit needs at least 4 points per axis");
  }
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (!(xs[i] > xs[i - 1])) {
      throw std::invalid_argument("spline knots must be strictly increasing");
    }
  }
}

}  // namespace

CubicSpline::CubicSpline(std::vector<double> xs, std::vector<double> ys)
    : xs_(std::move(xs)), ys_(std::move(ys)) {
  validate_axis(xs_);
  if (xs_.size() != ys_.size()) {
    throw std::invalid_argument("spline x and y vectors must have equal length");
  }
  const int n = static_cast<int>(xs_.size());

  // Natural boundary conditions: second derivatives vanish at the ends.
  // Tridiagonal system for the interior second derivatives.
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
  a(0, 0) = 1.0;
  a(n - 1, n - 1) = 1.0;
  for (int i = 1; i < n - 1; ++i) {
    const double h0 = xs_[i] - xs_[i - 1];
    const double h1 = xs_[i + 1] - xs_[i];
    a(i, i - 1) = h0 / 6.0;
    a(i, i) = (h0 + h1) / 3.0;
    a(i, i + 1) = h1 / 6.0;
    rhs(i) = (ys_[i + 1] - ys_[i]) / h1 - (ys_[i] - ys_[i - 1]) / h0;
  }
  const Eigen::VectorXd m = a.partialPivLu().solve(rhs);
  m_.assign(m.data(), m.data() + n);
}

int CubicSpline::piece_for(double x) const {
  const auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
  int i = static_cast<int>(it - xs_.begin()) - 1;
  i = std::clamp(i, 0, static_cast<int>(xs_.size()) - 2);
  return i;
}

double CubicSpline::operator()(double x) const {
  const int i = piece_for(x);
  const double h = xs_[i + 1] - xs_[i];
  const double a = (xs_[i + 1] - x) / h;
  const double b = (x - xs_[i]) / h;
  return a * ys_[i] + b * ys_[i + 1] +
         ((a * a * a - a) * m_[i] + (b * b * b - b) * m_[i + 1]) * h * h / 6.0;
}

double CubicSpline::derivative(double x) const {
  const int i = piece_for(x);
  const double h = xs_[i + 1] - xs_[i];
  const double a = (xs_[i + 1] - x) / h;
  const double b = (x - xs_[i]) / h;
  return (ys_[i + 1] - ys_[i]) / h +
         ((1.0 - 3.0 * a * a) * m_[i] + (3.0 * b * b - 1.0) * m_[i + 1]) * h / 6.0;
}

CubicSpline::Minimum CubicSpline::minimum() const {
  Minimum best{xs_.front(), (*this)(xs_.front())};
  auto consider = [&](double x) {
    const double v = (*this)(x);
    if (v < best.value) best = {x, v};
  };
  for (std::size_t i = 0; i + 1 < xs_.size(); ++i) {
    consider(xs_[i + 1]);
    // On piece i the derivative is quadratic in x; solve s'(x) = 0.
    const double h = xs_[i + 1] - xs_[i];
    // s(x) with t = x - xs_[i]: coefficients of s'(t) = c0 + c1 t + c2 t^2.
    const double c0 = (ys_[i + 1] - ys_[i]) / h - h * (2.0 * m_[i] + m_[i + 1]) / 6.0;
    const double c1 = m_[i];
    const double c2 = (m_[i + 1] - m_[i]) / (2.0 * h);
    if (std::abs(c2) < 1e-300) {
      if (std::abs(c1) > 1e-300) {
        const double t = -c0 / c1;
        if (t > 0.0 && t < h) consider(xs_[i] + t);
      }
      continue;
    }
    const double disc = c1 * c1 - 4.0 * c2 * c0;
    if (disc < 0.0) continue;
    const double sq = std::sqrt(disc);
    for (double t : {(-c1 + sq) / (2.0 * c2), (-c1 - sq) / (2.0 * c2)}) {
      if (t > 0.0 && t < h) consider(xs_[i] + t);
    }
  }
  return best;
}

BicubicSpline::BicubicSpline(std::vector<double> xs, std::vector<double> ys,
                             Eigen::MatrixXd values)
    : xs_(std::move(xs)), ys_(std::move(ys)), values_(std::move(values)) {
  validate_axis(xs_);
  validate_axis(ys_);
  if (values_.rows() != static_cast<Eigen::Index>(xs_.size()) ||
      values_.cols() != static_cast<Eigen::Index>(ys_.size())) {
    throw std::invalid_argument("bicubic value grid does not match axis sizes");
  }
  row_splines_.reserve(xs_.size());
  for (std::size_t i = 0; i < xs_.size(); ++i) {
    std::vector<double> row(values_.cols());
    for (Eigen::Index j = 0; j < values_.cols(); ++j) row[j] = values_(i, j);
    row_splines_.emplace_back(ys_, std::move(row));
  }
}

double BicubicSpline::operator()(double x, double y) const {
  std::vector<double> column(xs_.size());
  for (std::size_t i = 0; i < xs_.size(); ++i) column[i] = row_splines_[i](y);
  return CubicSpline(xs_, column)(x);
}

BicubicSpline::Minimum BicubicSpline::minimum() const {
  // Dense scan: enough samples per cell that the Newton polish starts inside
  // the correct basin.
  constexpr int kPerCell = 6;
  const int nx = static_cast<int>(xs_.size());
  const int ny = static_cast<int>(ys_.size());
  const int gx = (nx - 1) * kPerCell + 1;
  const int gy = (ny - 1) * kPerCell + 1;
  const double x0 = xs_.front(), x1 = xs_.back();
  const double y0 = ys_.front(), y1 = ys_.back();

  Minimum best{x0, y0, (*this)(x0, y0)};
  std::vector<double> col_at_y(xs_.size());
  for (int j = 0; j < gy; ++j) {
    const double y = y0 + (y1 - y0) * j / (gy - 1);
    // One cross-section spline in x per scanned y.
    for (std::size_t r = 0; r < xs_.size(); ++r) col_at_y[r] = row_splines_[r](y);
    const CubicSpline cross(xs_, col_at_y);
    for (int i = 0; i < gx; ++i) {
      const double x = x0 + (x1 - x0) * i / (gx - 1);
      const double v = cross(x);
      if (v < best.value) best = {x, y, v};
    }
  }

  // Bounded Newton polish with central-difference derivatives.
  double px = best.x, py = best.y;
  const double hx = (x1 - x0) * 1e-6;
  const double hy = (y1 - y0) * 1e-6;
  for (int iter = 0; iter < 30; ++iter) {
    const double f0 = (*this)(px, py);
    const double fx = ((*this)(std::min(px + hx, x1), py) - (*this)(std::max(px - hx, x0), py)) /
                      (std::min(px + hx, x1) - std::max(px - hx, x0));
    const double fy = ((*this)(px, std::min(py + hy, y1)) - (*this)(px, std::max(py - hy, y0))) /
                      (std::min(py + hy, y1) - std::max(py - hy, y0));
    const double fxx =
        ((*this)(std::min(px + hx, x1), py) - 2.0 * f0 + (*this)(std::max(px - hx, x0), py)) /
        (hx * hx);
    const double fyy =
        ((*this)(px, std::min(py + hy, y1)) - 2.0 * f0 + (*this)(px, std::max(py - hy, y0))) /
        (hy * hy);
    if (!(fxx > 0.0) || !(fyy > 0.0)) break;
    double nx_step = -fx / fxx;
    double ny_step = -fy / fyy;
    const double max_step = std::max(x1 - x0, y1 - y0) / (kPerCell * 2.0);
    nx_step = std::clamp(nx_step, -max_step, max_step);
    ny_step = std::clamp(ny_step, -max_step, max_step);
    const double cand_x = std::clamp(px + nx_step, x0, x1);
    const double cand_y = std::clamp(py + ny_step, y0, y1);
    const double cand_v = (*this)(cand_x, cand_y);
    if (cand_v >= best.value - 1e-15) break;
    px = cand_x;
    py = cand_y;
    best = {px, py, cand_v};
  }
  return best;
}

}  // namespace qdeut
