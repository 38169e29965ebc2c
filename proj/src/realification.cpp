#include "qgauge/realification.hpp"

#include <string>

#include "qgauge/errors.hpp"

namespace qgauge {

RealState decomplexify(const StateVector& psi) {
  return {psi.entries.real(), psi.entries.imag(), psi.time};
}

StateVector recomplexify(const RealState& s) {
  if (s.phi1.size() != s.phi2.size()) throw DimensionError("real and imaginary parts differ in size");
  CVector psi(s.phi1.size());
  psi.real() = s.phi1;
  psi.imag() = s.phi2;
  return {psi, s.time};
}

RealSystem build_real_system(const CMatrix& h, bool want_decoupled) {
  if (h.rows() != h.cols()) throw DimensionError("Hamiltonian matrix is not square");
  const Eigen::Index n = h.rows();
  RealSystem sys;
  sys.dim = static_cast<int>(n);
  sys.h1 = h.real();
  sys.h2 = h.imag();
  sys.coupled_generator.resize(2 * n, 2 * n);
  sys.coupled_generator << sys.h2, sys.h1, -sys.h1, sys.h2;

  if (!want_decoupled) {
    sys.diagnostic = "decoupled form not requested";
    return sys;
  }
  if (sys.h2.isZero(0.0)) {
    // phi1'' = H1 phi2' = -H1^2 phi1: no inverse needed.
    sys.aq = RMatrix::Zero(n, n);
    sys.bq = sys.h1 * sys.h1;
    sys.decoupled_valid = true;
    return sys;
  }
  const double ratio = inverse_condition(sys.h1);
  if (!(ratio > kSingularRatio)) {
    sys.diagnostic = "real part H1 is singular (sigma_min/sigma_max = " + std::to_string(ratio) +
                     "); use the coupled first-order system";
    return sys;
  }
  const RMatrix h1_inv = sys.h1.partialPivLu().inverse();
  const RMatrix conj = sys.h1 * sys.h2 * h1_inv;
  sys.aq = -(sys.h2 + conj);
  sys.bq = sys.h1 * sys.h1 + conj * sys.h2;
  sys.decoupled_valid = true;
  return sys;
}

RealSystem build_real_system(const HamiltonianSpec& spec, double t, bool want_decoupled) {
  const bool constant = spec.is_constant();
  RealSystem sys = build_real_system(spec(t), want_decoupled && constant);
  if (want_decoupled && !constant) {
    sys.diagnostic = "decoupled form requires a time-independent Hamiltonian";
  }
  return sys;
}

std::vector<RealState> evolve_coupled(const RealSystem& sys, const RealState& state0,
                                      const TimeGrid& grid) {
  const int n = sys.dim;
  if (state0.phi1.size() != n || state0.phi2.size() != n) {
    throw DimensionError("real state dimension does not match the system");
  }
  RVector x0(2 * n);
  x0 << state0.phi1, state0.phi2;
  const RMatrix& g = sys.coupled_generator;
  const auto xs =
      integrate_rk4(grid, x0, [&](double, const RVector& x) -> RVector { return g * x; });
  std::vector<RealState> out;
  out.reserve(xs.size());
  for (std::size_t j = 0; j < xs.size(); ++j) {
    out.push_back({xs[j].head(n), xs[j].tail(n), grid.node(j)});
  }
  return out;
}

std::vector<PhasePoint> evolve_decoupled(const RealSystem& sys, const RVector& phi0,
                                         const RVector& phidot0, const TimeGrid& grid) {
  if (!sys.decoupled_valid) {
    throw UnsupportedSystemError("decoupled second-order form unavailable (" + sys.diagnostic +
                                 "); use evolve_coupled");
  }
  return integrate_second_order(*sys.aq, *sys.bq, phi0, phidot0, grid);
}

QuantumInitialConditions initial_conditions_from_quantum(const RealSystem& sys,
                                                         const StateVector& psi0) {
  if (psi0.dim() != sys.dim) throw DimensionError("state dimension does not match the system");
  const RealState s = decomplexify(psi0);
  return {s.phi1, sys.h2 * s.phi1 + sys.h1 * s.phi2, s.phi2, sys.h2 * s.phi2 - sys.h1 * s.phi1};
}

}  // namespace qgauge
