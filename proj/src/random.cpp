#include "qgauge/random.hpp"

#include <cmath>

namespace qgauge {

double MatrixSampler::uniform(double lo, double hi) {
  const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

std::uint64_t MatrixSampler::index(std::uint64_t bound) { return engine_() % bound; }

CMatrix MatrixSampler::complex_matrix(int n) {
  CMatrix m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m(i, j) = cplx(uniform(-1.0, 1.0), uniform(-1.0, 1.0));
  }
  return m;
}

RMatrix MatrixSampler::real_matrix(int n) {
  RMatrix m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m(i, j) = uniform(-1.0, 1.0);
  }
  return m;
}

CMatrix MatrixSampler::hermitian(int n) {
  const CMatrix m = complex_matrix(n);
  return (m + m.adjoint()) / (2.0 * std::sqrt(static_cast<double>(n)));
}

RMatrix MatrixSampler::real_symmetric(int n) {
  const RMatrix m = real_matrix(n);
  return (m + m.transpose()) / (2.0 * std::sqrt(static_cast<double>(n)));
}

CMatrix MatrixSampler::nonsingular(int n) {
  for (;;) {
    CMatrix m = complex_matrix(n);
    if (inverse_condition(m) > 1e-2) return m;
  }
}

CMatrix MatrixSampler::hermitian_with_invertible_real_part(int n) {
  for (;;) {
    CMatrix h = hermitian(n);
    if (inverse_condition(RMatrix(h.real())) > 1e-2) return h;
  }
}

CVector MatrixSampler::unit_state(int n) {
  CVector v(n);
  for (int k = 0; k < n; ++k) v(k) = cplx(uniform(-1.0, 1.0), uniform(-1.0, 1.0));
  return v / v.norm();
}

}  // namespace qgauge
