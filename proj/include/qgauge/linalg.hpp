#pragma once

#include <complex>
#include <string_view>

#include <Eigen/Dense>

namespace qgauge {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

inline constexpr cplx kI{0.0, 1.0};

// Matrices whose smallest/largest singular value ratio falls at or below this
// are treated as singular (condition number 1e10).
inline constexpr double kSingularRatio = 1e-10;

template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

// sigma_min / sigma_max; 0 for the zero matrix.
double inverse_condition(const CMatrix& m);
double inverse_condition(const RMatrix& m);

// Throws SingularityError naming `what` when the condition number exceeds 1e10.
void require_nonsingular(const CMatrix& m, std::string_view what);

// Inverse after the conditioning check above.
CMatrix checked_inverse(const CMatrix& m, std::string_view what);

// Matrix exponential by scaling and squaring with a diagonal [8/8] Pade
// approximant. The argument is scaled so that its 1-norm is at most 1/2.
CMatrix expm(const CMatrix& a);

double hermitian_deviation(const CMatrix& m);
double unitarity_deviation(const CMatrix& m);

namespace pauli {
CMatrix identity();
CMatrix x();
CMatrix y();
CMatrix z();
}  // namespace pauli

}  // namespace qgauge
