#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qgauge/integrator.hpp"
#include "qgauge/linalg.hpp"
#include "qgauge/quantum_model.hpp"

namespace qgauge {

// Real and imaginary parts of a complex state.
struct RealState {
  RVector phi1;
  RVector phi2;
  double time = 0.0;
};

// Real form of a fixed Hamiltonian H = H1 + i H2.
//
// Coupled first-order system, x = (phi1, phi2):
//   phi1' = H2 phi1 + H1 phi2
//   phi2' = H2 phi2 - H1 phi1
// Eliminating phi2 (or phi1) gives the same second-order equation for both:
//   phi'' + Aq phi' + Bq phi = 0
//   Aq = -(H2 + H1 H2 H1^-1),  Bq = H1^2 + H1 H2 H1^-1 H2
// which needs H1 invertible unless H2 = 0, in which case Aq = 0, Bq = H1^2.
struct RealSystem {
  int dim = 0;
  RMatrix h1;
  RMatrix h2;
  RMatrix coupled_generator;  // [[H2, H1], [-H1, H2]]
  std::optional<RMatrix> aq;
  std::optional<RMatrix> bq;
  bool decoupled_valid = false;
  std::string diagnostic;  // why the decoupled form is unavailable, if it is
};

RealState decomplexify(const StateVector& psi);
StateVector recomplexify(const RealState& s);

RealSystem build_real_system(const CMatrix& h, bool want_decoupled);

// Evaluates the spec at t. The decoupled form is only offered for
// time-independent specs.
RealSystem build_real_system(const HamiltonianSpec& spec, double t, bool want_decoupled);

std::vector<RealState> evolve_coupled(const RealSystem& sys, const RealState& state0,
                                      const TimeGrid& grid);

// Either phi1 or phi2 initial data; throws UnsupportedSystemError when the
// decoupled form is unavailable.
std::vector<PhasePoint> evolve_decoupled(const RealSystem& sys, const RVector& phi0,
                                         const RVector& phidot0, const TimeGrid& grid);

struct QuantumInitialConditions {
  RVector phi1;
  RVector phidot1;
  RVector phi2;
  RVector phidot2;
};

QuantumInitialConditions initial_conditions_from_quantum(const RealSystem& sys,
                                                         const StateVector& psi0);

}  // namespace qgauge
