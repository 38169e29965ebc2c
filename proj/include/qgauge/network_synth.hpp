#pragma once

#include <string>
#include <variant>
#include <vector>

#include "qgauge/integrator.hpp"
#include "qgauge/linalg.hpp"
#include "qgauge/quantum_model.hpp"
#include "qgauge/realification.hpp"

namespace qgauge {

// q'' + A q' + B q = 0
struct ClassicalSystem {
  RMatrix a;
  RMatrix b;

  int dim() const noexcept { return static_cast<int>(a.rows()); }
};

// Each port's L||C tandem carries all of diag(B); beta gets a zero diagonal.
struct DiagonalFrequencyPolicy {};

// Tandem inductances given explicitly; the full residual goes into beta.
struct ExplicitInductancePolicy {
  RVector inductance;
};

using FrequencyPolicy = std::variant<DiagonalFrequencyPolicy, ExplicitInductancePolicy>;

struct PassivityDiagnostics {
  bool alpha_symmetric = false;
  bool alpha_psd = false;
  bool beta_symmetric = false;
};

// n-port network: L_k || C_k tandem at port k, coupled through an interaction
// network with admittance Y(s) = alpha + beta / s.
struct NetworkSpec {
  RVector capacitance;  // farads
  RVector inductance;   // henries
  RMatrix alpha;        // siemens
  RMatrix beta;         // 1/henry
  RVector omega0_sq;    // 1 / (L_k C_k)
  PassivityDiagnostics passivity;

  int dim() const noexcept { return static_cast<int>(capacitance.size()); }

  // A = C^-1 alpha, B = omega0^2 + C^-1 beta.
  ClassicalSystem reconstruct() const;
};

NetworkSpec synthesize(const ClassicalSystem& sys, const RVector& capacitance,
                       const FrequencyPolicy& policy = DiagonalFrequencyPolicy{});

// alpha + beta / s; PoleError at s = 0.
CMatrix admittance(const NetworkSpec& net, cplx s);

enum class ElementKind { capacitor, inductor, resistor, negative_element_diagnostic };

struct NetlistElement {
  ElementKind kind;
  std::string name;   // e.g. "L3"; for diagnostics the would-be element name
  int node_plus = 0;  // 0 is ground, ports are 1..n
  int node_minus = 0;
  double value = 0.0;
  std::string note;
};

struct Netlist {
  std::vector<NetlistElement> elements;
  std::string text;

  bool has_diagnostics() const;
};

// Element list and SPICE-style text. Off-diagonal entries become branches
// between port pairs; row sums become shunts to ground. A negative inductive
// shunt is folded into the port tandem when the combined inductance stays
// positive. Anything still negative (or non-reciprocal) becomes a diagnostic.
Netlist emit_netlist(const NetworkSpec& net);

// Node-admittance matrix stamped from the physical elements of the netlist,
// tandems included.
CMatrix node_admittance(const Netlist& netlist, int ports, cplx s);

// node_admittance minus the nominal tandems sC + 1/(sL) of `net`; equals
// admittance(net, s) when the netlist has no diagnostics.
CMatrix interaction_admittance(const Netlist& netlist, const NetworkSpec& net, cplx s);

std::vector<PhasePoint> simulate_network(const ClassicalSystem& sys, const RVector& v0,
                                         const RVector& vdot0, const TimeGrid& grid);

struct RoundtripReport {
  double max_real_deviation = 0.0;  // max |v_k(t) - Re psi_k(t)|
  double max_imag_deviation = 0.0;  // same for the mirrored run against Im psi
  RealSystem real_system;
  NetworkSpec network;
  std::vector<StateVector> quantum_path;
  std::vector<PhasePoint> real_path;
  std::vector<PhasePoint> imag_path;
};

// Quantum -> real system -> network -> transient, compared against the
// complex integration. `spec` must be constant and Hermitian.
RoundtripReport quantum_roundtrip(const HamiltonianSpec& spec, const StateVector& psi0,
                                  const TimeGrid& grid, const RVector& capacitance,
                                  const FrequencyPolicy& policy = DiagonalFrequencyPolicy{});
RoundtripReport quantum_roundtrip(const HamiltonianSpec& spec, const StateVector& psi0,
                                  const TimeGrid& grid);

}  // namespace qgauge
