#pragma once

#include <variant>
#include <vector>

#include "qgauge/linalg.hpp"
#include "qgauge/time_grid.hpp"

namespace qgauge {

// Scalar time profiles weighting the constant matrices of a Hamiltonian.
struct ConstantProfile {
  double value = 1.0;
};

// coeffs[k] multiplies t^k.
struct PolynomialProfile {
  std::vector<double> coeffs;
};

// amplitude * cos(frequency * t + phase)
struct CosineProfile {
  double amplitude = 1.0;
  double frequency = 1.0;
  double phase = 0.0;
};

using Profile = std::variant<ConstantProfile, PolynomialProfile, CosineProfile>;

double profile_value(const Profile& p, double t);
// Exact integral over [a, b].
double profile_integral(const Profile& p, double a, double b);
bool profile_is_constant(const Profile& p);

struct HamiltonianTerm {
  Profile profile;
  CMatrix matrix;
};

// H(t) = sum_k f_k(t) H_k with constant n x n complex H_k. Immutable.
class HamiltonianSpec {
 public:
  HamiltonianSpec(int dim, std::vector<HamiltonianTerm> terms, bool hermitian_hint = false);

  static HamiltonianSpec constant(const CMatrix& h, bool hermitian_hint = false);
  static HamiltonianSpec zero(int dim);

  int dim() const noexcept { return dim_; }
  const std::vector<HamiltonianTerm>& terms() const noexcept { return terms_; }
  bool hermitian_hint() const noexcept { return hermitian_hint_; }

  // Throws HermiticityError when the hint is set and H(t) deviates from its
  // adjoint by more than 1e-12 (max-norm).
  CMatrix operator()(double t) const;

  // Exact integral of H over [a, b].
  CMatrix integral(double a, double b) const;

  bool is_constant() const;
  // True when all H(t) commute with each other: a single term, all-constant
  // profiles, or pairwise commuting term matrices.
  bool is_commuting_family() const;

 private:
  int dim_;
  std::vector<HamiltonianTerm> terms_;
  bool hermitian_hint_;
};

struct StateVector {
  CVector entries;
  double time = 0.0;

  int dim() const noexcept { return static_cast<int>(entries.size()); }
  double norm() const { return entries.norm(); }
};

// U(t_j, t0) at every grid node.
class PropagatorGrid {
 public:
  PropagatorGrid(TimeGrid grid, std::vector<CMatrix> u);

  int dim() const noexcept { return static_cast<int>(u_.front().rows()); }
  const TimeGrid& grid() const noexcept { return grid_; }
  const CMatrix& at(std::size_t j) const { return u_.at(j); }
  const std::vector<CMatrix>& matrices() const noexcept { return u_; }

  // U(t_t, t_s) = U(t_t, t0) U(t_s, t0)^-1; SingularityError if U(t_s, t0) is.
  CMatrix between(std::size_t t_index, std::size_t s_index) const;

 private:
  TimeGrid grid_;
  std::vector<CMatrix> u_;
};

CMatrix eval_hamiltonian(const HamiltonianSpec& spec, double t);

// Integrates i dpsi/dt = H(t) psi with RK4 on the grid.
std::vector<StateVector> evolve_state(const HamiltonianSpec& spec, const StateVector& psi0,
                                      const TimeGrid& grid);

// Integrates i dU/dt = H(t) U, U(t0, t0) = I, with the same scheme.
PropagatorGrid propagator(const HamiltonianSpec& spec, const TimeGrid& grid);

// max over nodes of ||H(t) - H(t)^dagger||_max. Ignores the hermitian hint.
double hermiticity_check(const HamiltonianSpec& spec, const TimeGrid& grid);

}  // namespace qgauge
