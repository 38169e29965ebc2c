#pragma once

#include <cstdint>
#include <random>

#include "qgauge/linalg.hpp"

namespace qgauge {

// Seeded source of test matrices. Draws are built from raw 64-bit engine
// output so a seed gives the same numbers on every standard library.
class MatrixSampler {
 public:
  explicit MatrixSampler(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [lo, hi).
  double uniform(double lo, double hi);
  std::uint64_t index(std::uint64_t bound);

  CMatrix complex_matrix(int n);
  RMatrix real_matrix(int n);
  // Entries of the Hermitian part scaled so the spectral radius is O(1).
  CMatrix hermitian(int n);
  RMatrix real_symmetric(int n);
  // Resampled until sigma_min / sigma_max > 1e-2.
  CMatrix nonsingular(int n);
  // Hermitian with real part of condition number below 1e2.
  CMatrix hermitian_with_invertible_real_part(int n);
  CVector unit_state(int n);

 private:
  std::mt19937_64 engine_;
};

}  // namespace qgauge
