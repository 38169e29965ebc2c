#include "qgauge/integrator.hpp"

namespace qgauge {

std::vector<PhasePoint> integrate_second_order(const RMatrix& damping, const RMatrix& stiffness,
                                               const RVector& q0, const RVector& qdot0,
                                               const TimeGrid& grid) {
  const Eigen::Index n = q0.size();
  if (damping.rows() != n || damping.cols() != n || stiffness.rows() != n ||
      stiffness.cols() != n || qdot0.size() != n) {
    throw DimensionError("second-order system dimensions do not match the initial data");
  }
  RMatrix companion = RMatrix::Zero(2 * n, 2 * n);
  companion.topRightCorner(n, n) = RMatrix::Identity(n, n);
  companion.bottomLeftCorner(n, n) = -stiffness;
  companion.bottomRightCorner(n, n) = -damping;

  RVector x0(2 * n);
  x0 << q0, qdot0;
  const auto xs = integrate_rk4(grid, x0,
                                [&](double, const RVector& x) -> RVector { return companion * x; });
  std::vector<PhasePoint> out;
  out.reserve(xs.size());
  for (const auto& x : xs) out.push_back({x.head(n), x.tail(n)});
  return out;
}

}  // namespace qgauge
