#pragma once

#include <functional>
#include <string_view>
#include <vector>

#include "qgauge/linalg.hpp"
#include "qgauge/quantum_model.hpp"
#include "qgauge/time_grid.hpp"

namespace qgauge {

enum class GaugeBackend { magnus_constant, rk4_integrated, analytic_product, composed };

std::string_view to_string(GaugeBackend b);

// A gauge transformation omega(t) sampled on a grid, with d omega/dt carried
// alongside. Every sample is nonsingular (checked on construction).
class GaugeSolution {
 public:
  GaugeSolution(TimeGrid grid, std::vector<CMatrix> omega, std::vector<CMatrix> omega_dot,
                GaugeBackend backend);

  static GaugeSolution identity(int dim, const TimeGrid& grid);

  // Samples omega and its derivative from closed forms.
  static GaugeSolution from_functions(const TimeGrid& grid,
                                      const std::function<CMatrix(double)>& omega,
                                      const std::function<CMatrix(double)>& omega_dot);

  int dim() const noexcept { return static_cast<int>(omega_.front().rows()); }
  const TimeGrid& grid() const noexcept { return grid_; }
  GaugeBackend backend() const noexcept { return backend_; }
  const CMatrix& omega(std::size_t j) const { return omega_.at(j); }
  const CMatrix& omega_dot(std::size_t j) const { return omega_dot_.at(j); }
  const std::vector<CMatrix>& omegas() const noexcept { return omega_; }
  const std::vector<CMatrix>& omega_dots() const noexcept { return omega_dot_; }
  const CMatrix& seed() const { return omega_.front(); }

  // Linear interpolation between nodes. Lossy: the result is neither exactly
  // nonsingular-checked nor consistent with the ODE between nodes.
  std::pair<CMatrix, CMatrix> interpolate(double t) const;

  // max over interior nodes of ||centered difference - omega_dot||_max,
  // divided by max(||omega_dot||_max, ||omega||_max / (t1 - t0)).
  double derivative_consistency() const;

 private:
  TimeGrid grid_;
  std::vector<CMatrix> omega_;
  std::vector<CMatrix> omega_dot_;
  GaugeBackend backend_;
};

// (source H, target H') connected by omega when H' = Omega_omega(H).
struct GaugePair {
  GaugePair(HamiltonianSpec source, HamiltonianSpec target);

  HamiltonianSpec source;
  HamiltonianSpec target;
};

// omega H omega^-1 + i omega_dot omega^-1.
CMatrix apply_gauge_map(const CMatrix& omega, const CMatrix& omega_dot, const CMatrix& h);

// i d omega1/dt = H' omega1, omega1(t0) = seed.
GaugeSolution solve_omega1(const HamiltonianSpec& target, const TimeGrid& grid,
                           const CMatrix& seed);
GaugeSolution solve_omega1(const HamiltonianSpec& target, const TimeGrid& grid);

// i d omega2/dt = -omega2 H, omega2(t0) = seed.
GaugeSolution solve_omega2(const HamiltonianSpec& source, const TimeGrid& grid,
                           const CMatrix& seed);
GaugeSolution solve_omega2(const HamiltonianSpec& source, const TimeGrid& grid);

// omega = omega1 omega2 with omega1 seeded by `seed` and omega2 by the identity.
// One of infinitely many connecting transformations.
GaugeSolution transitive_solution(const GaugePair& pair, const TimeGrid& grid,
                                  const CMatrix& seed);
GaugeSolution transitive_solution(const GaugePair& pair, const TimeGrid& grid);

// Node-wise g1 g2 with the product-rule derivative.
GaugeSolution compose(const GaugeSolution& g1, const GaugeSolution& g2);

// Node-wise inverse; d(omega^-1) = -omega^-1 omega_dot omega^-1.
GaugeSolution inverse_gauge(const GaugeSolution& g);

// psi'(t_j) = omega(t_j) psi(t_j).
std::vector<StateVector> map_state(const GaugeSolution& g, const std::vector<StateVector>& path);

enum class InverseMode {
  general,  // omega^-1(s) via LU after the conditioning check
  unitary,  // omega^dagger(s); for Hermitian pairs with a unitary gauge
};

// omega(t) U(t, s) omega^-1(s).
CMatrix conjugate_propagator(const GaugeSolution& g, const PropagatorGrid& u,
                             std::size_t s_index, std::size_t t_index,
                             InverseMode mode = InverseMode::general);

// max over nodes of ||i omega_dot - (H'(t) omega - omega H(t))||_max.
double intertwining_residual(const GaugeSolution& g, const GaugePair& pair);

// max over nodes of ||Omega_omega(H(t)) - H'(t)||_max.
double mapped_hamiltonian_deviation(const GaugeSolution& g, const GaugePair& pair);

// max over nodes of ||omega^dagger omega - I||_max.
double gauge_unitarity_deviation(const GaugeSolution& g);

}  // namespace qgauge
