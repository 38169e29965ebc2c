#include "qgauge/linalg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "qgauge/errors.hpp"

namespace qgauge {

namespace {

template <typename M>
double singular_ratio(const M& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<M> svd(m);
  const auto& sv = svd.singularValues();
  const double largest = sv(0);
  if (largest == 0.0) return 0.0;
  return sv(sv.size() - 1) / largest;
}

constexpr int kPadeOrder = 8;

constexpr std::array<double, kPadeOrder + 1> pade_coefficients() {
  std::array<double, kPadeOrder + 1> c{};
  c[0] = 1.0;
  for (int k = 1; k <= kPadeOrder; ++k) {
    c[k] = c[k - 1] * static_cast<double>(kPadeOrder - k + 1) /
           static_cast<double>((2 * kPadeOrder - k + 1) * k);
  }
  return c;
}

}  // namespace

double inverse_condition(const CMatrix& m) { return singular_ratio(m); }
double inverse_condition(const RMatrix& m) { return singular_ratio(m); }

void require_nonsingular(const CMatrix& m, std::string_view what) {
  if (m.rows() != m.cols()) {
    throw DimensionError(std::string(what) + " is not square");
  }
  const double ratio = inverse_condition(m);
  if (!(ratio > kSingularRatio)) {
    throw SingularityError(std::string(what) + " is singular (sigma_min/sigma_max = " +
                           std::to_string(ratio) + ")");
  }
}

CMatrix checked_inverse(const CMatrix& m, std::string_view what) {
  require_nonsingular(m, what);
  return m.partialPivLu().inverse();
}

CMatrix expm(const CMatrix& a) {
  if (a.rows() != a.cols()) throw DimensionError("expm: matrix is not square");
  const Eigen::Index n = a.rows();
  if (!a.allFinite()) throw NumericError("expm: non-finite argument");

  const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm1 > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm1 / 0.5)));
  const CMatrix x = a / std::ldexp(1.0, squarings);

  static constexpr auto c = pade_coefficients();
  const CMatrix id = CMatrix::Identity(n, n);
  CMatrix power = id;
  CMatrix num = c[0] * id;
  CMatrix den = c[0] * id;
  double sign = 1.0;
  for (int k = 1; k <= kPadeOrder; ++k) {
    power = power * x;
    sign = -sign;
    num += c[k] * power;
    den += (sign * c[k]) * power;
  }
  CMatrix r = den.partialPivLu().solve(num);
  for (int i = 0; i < squarings; ++i) r = r * r;
  return r;
}

double hermitian_deviation(const CMatrix& m) { return max_abs(m - m.adjoint()); }

double unitarity_deviation(const CMatrix& m) {
  return max_abs(m.adjoint() * m - CMatrix::Identity(m.rows(), m.cols()));
}

namespace pauli {

CMatrix identity() { return CMatrix::Identity(2, 2); }

CMatrix x() {
  CMatrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

CMatrix y() {
  CMatrix m(2, 2);
  m << 0.0, -kI, kI, 0.0;
  return m;
}

CMatrix z() {
  CMatrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

}  // namespace pauli

}  // namespace qgauge
