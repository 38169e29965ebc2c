#include "qgauge/network_synth.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <string>

#include "qgauge/csv.hpp"
#include "qgauge/errors.hpp"

namespace qgauge {

namespace {

constexpr double kSymmetryTolerance = 1e-12;
// Row sums this small (relative to the matrix scale) are treated as zero.
constexpr double kShuntFloor = 1e-14;

bool is_symmetric(const RMatrix& m) {
  return max_abs(RMatrix(m - m.transpose())) <= kSymmetryTolerance * std::max(1.0, max_abs(m));
}

bool is_psd(const RMatrix& m) {
  if (m.size() == 0) return true;
  const RMatrix sym = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<RMatrix> es(sym, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() >= -kSymmetryTolerance * std::max(1.0, max_abs(m));
}

void require_positive(const RVector& v, const std::string& what) {
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    if (!(std::isfinite(v(k)) && v(k) > 0.0)) {
      throw PreconditionError(what + " at port " + std::to_string(k + 1) +
                              " must be positive and finite");
    }
  }
}

}  // namespace

ClassicalSystem NetworkSpec::reconstruct() const {
  const RVector c_inv = capacitance.cwiseInverse();
  ClassicalSystem sys;
  sys.a = c_inv.asDiagonal() * alpha;
  sys.b = RMatrix(omega0_sq.asDiagonal()) + c_inv.asDiagonal() * beta;
  return sys;
}

NetworkSpec synthesize(const ClassicalSystem& sys, const RVector& capacitance,
                       const FrequencyPolicy& policy) {
  const int n = sys.dim();
  if (sys.a.rows() != n || sys.a.cols() != n || sys.b.rows() != n || sys.b.cols() != n) {
    throw DimensionError("classical system matrices must be square and of equal size");
  }
  if (capacitance.size() != n) throw DimensionError("one capacitance per port is required");
  if (!sys.a.allFinite() || !sys.b.allFinite()) {
    throw PreconditionError("classical system has non-finite entries");
  }
  require_positive(capacitance, "capacitance");

  NetworkSpec net;
  net.capacitance = capacitance;
  net.alpha = capacitance.asDiagonal() * sys.a;

  const bool diagonal_policy = std::holds_alternative<DiagonalFrequencyPolicy>(policy);
  if (diagonal_policy) {
    net.inductance.resize(n);
    for (int k = 0; k < n; ++k) {
      const double bkk = sys.b(k, k);
      if (!(bkk > 0.0)) {
        throw FrequencyAssignmentError("frequency assignment failed at port " +
                                           std::to_string(k + 1) + ": B(" + std::to_string(k + 1) +
                                           "," + std::to_string(k + 1) + ") = " +
                                           csv::format_double(bkk) + " is not positive",
                                       k + 1);
      }
      net.inductance(k) = 1.0 / (capacitance(k) * bkk);
    }
  } else {
    net.inductance = std::get<ExplicitInductancePolicy>(policy).inductance;
    if (net.inductance.size() != n) throw DimensionError("one inductance per port is required");
    require_positive(net.inductance, "inductance");
  }
  net.omega0_sq = (net.inductance.cwiseProduct(capacitance)).cwiseInverse();
  net.beta = capacitance.asDiagonal() * (sys.b - RMatrix(net.omega0_sq.asDiagonal()));
  if (diagonal_policy) net.beta.diagonal().setZero();

  net.passivity.alpha_symmetric = is_symmetric(net.alpha);
  net.passivity.alpha_psd = is_psd(net.alpha);
  net.passivity.beta_symmetric = is_symmetric(net.beta);
  return net;
}

CMatrix admittance(const NetworkSpec& net, cplx s) {
  if (s == cplx(0.0, 0.0)) throw PoleError("admittance has a pole at s = 0");
  return net.alpha.cast<cplx>() + net.beta.cast<cplx>() / s;
}

bool Netlist::has_diagnostics() const {
  return std::any_of(elements.begin(), elements.end(), [](const NetlistElement& e) {
    return e.kind == ElementKind::negative_element_diagnostic;
  });
}

namespace {

class NetlistBuilder {
 public:
  void physical(ElementKind kind, int a, int b, double value, std::string note = {}) {
    elements_.push_back({kind, next_name(letter(kind)), a, b, value, std::move(note)});
  }

  // A required element whose value is not physically realizable.
  void diagnostic(ElementKind intended, int a, int b, double value, std::string note) {
    elements_.push_back({ElementKind::negative_element_diagnostic, next_name(letter(intended)), a,
                         b, value, std::move(note)});
  }

  Netlist finish(int ports) && {
    std::ostringstream os;
    os << "* qgauge n-port network: " << ports << " ports\n";
    for (const auto& e : elements_) {
      if (e.kind == ElementKind::negative_element_diagnostic) os << "* diag: ";
      os << e.name << ' ' << e.node_plus << ' ' << e.node_minus << ' '
         << csv::format_double(e.value);
      if (e.kind == ElementKind::negative_element_diagnostic) os << ' ' << e.note;
      os << '\n';
    }
    os << ".end\n";
    return {std::move(elements_), os.str()};
  }

 private:
  static char letter(ElementKind k) {
    switch (k) {
      case ElementKind::capacitor:
        return 'C';
      case ElementKind::inductor:
        return 'L';
      default:
        return 'R';
    }
  }

  std::string next_name(char l) { return std::string(1, l) + std::to_string(++counters_[l]); }

  std::vector<NetlistElement> elements_;
  std::map<char, int> counters_;
};

}  // namespace

Netlist emit_netlist(const NetworkSpec& net) {
  const int n = net.dim();
  NetlistBuilder nb;

  const double alpha_floor = kShuntFloor * std::max(1.0, max_abs(net.alpha));
  const double beta_floor = kShuntFloor * std::max(1.0, max_abs(net.beta));
  const RVector g_shunt = net.alpha.rowwise().sum();
  const RVector gamma_shunt = net.beta.rowwise().sum();

  // Tandems, folding a negative inductive shunt into the port inductor when
  // the combined inverse inductance stays positive.
  std::vector<bool> folded(n, false);
  for (int k = 0; k < n; ++k) {
    const int port = k + 1;
    nb.physical(ElementKind::capacitor, port, 0, net.capacitance(k), "tandem");
    const double gamma = gamma_shunt(k);
    const double combined = 1.0 / net.inductance(k) + gamma;
    if (gamma < -beta_floor && combined > 0.0) {
      folded[k] = true;
      nb.physical(ElementKind::inductor, port, 0, 1.0 / combined, "tandem with folded shunt");
    } else {
      nb.physical(ElementKind::inductor, port, 0, net.inductance(k), "tandem");
    }
  }

  // Branches of the interaction network between port pairs.
  auto branch = [&](const RMatrix& m, int j, int k, ElementKind kind, const char* label) {
    const double upper = m(j, k);
    const double lower = m(k, j);
    if (upper == 0.0 && lower == 0.0) return;
    if (std::abs(upper - lower) > kSymmetryTolerance * std::max(1.0, std::abs(upper))) {
      std::ostringstream note;
      note << "nonreciprocal " << label << " coupling (" << csv::format_double(upper) << " vs "
           << csv::format_double(lower) << ")";
      nb.diagnostic(kind, j + 1, k + 1, -upper, note.str());
      return;
    }
    // Branch admittance is -m(j,k); a resistor/inductor value is its inverse.
    const double value = -1.0 / upper;
    if (value > 0.0) {
      nb.physical(kind, j + 1, k + 1, value, "coupling");
    } else {
      nb.diagnostic(kind, j + 1, k + 1, value,
                    std::string("negative ") +
                        (kind == ElementKind::resistor ? "resistance" : "inductance") + " coupling");
    }
  };
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      branch(net.alpha, j, k, ElementKind::resistor, "conductance");
      branch(net.beta, j, k, ElementKind::inductor, "inverse-inductance");
    }
  }

  // Shunt completions: row sums to ground.
  for (int j = 0; j < n; ++j) {
    const double g = g_shunt(j);
    if (g > alpha_floor) {
      nb.physical(ElementKind::resistor, j + 1, 0, 1.0 / g, "shunt");
    } else if (g < -alpha_floor) {
      nb.diagnostic(ElementKind::resistor, j + 1, 0, 1.0 / g, "negative resistance shunt");
    }
    const double gamma = gamma_shunt(j);
    if (gamma > beta_floor) {
      nb.physical(ElementKind::inductor, j + 1, 0, 1.0 / gamma, "shunt");
    } else if (gamma < -beta_floor && !folded[j]) {
      nb.diagnostic(ElementKind::inductor, j + 1, 0, 1.0 / gamma, "negative inductance shunt");
    }
  }
  return std::move(nb).finish(n);
}

CMatrix node_admittance(const Netlist& netlist, int ports, cplx s) {
  if (s == cplx(0.0, 0.0)) throw PoleError("node admittance has a pole at s = 0");
  CMatrix y = CMatrix::Zero(ports, ports);
  for (const auto& e : netlist.elements) {
    cplx ye;
    switch (e.kind) {
      case ElementKind::capacitor:
        ye = s * e.value;
        break;
      case ElementKind::inductor:
        ye = 1.0 / (s * e.value);
        break;
      case ElementKind::resistor:
        ye = 1.0 / e.value;
        break;
      default:
        continue;
    }
    const int a = e.node_plus - 1;
    const int b = e.node_minus - 1;
    if (a >= ports || b >= ports) throw DimensionError("netlist element refers to a missing port");
    if (a >= 0) y(a, a) += ye;
    if (b >= 0) y(b, b) += ye;
    if (a >= 0 && b >= 0) {
      y(a, b) -= ye;
      y(b, a) -= ye;
    }
  }
  return y;
}

CMatrix interaction_admittance(const Netlist& netlist, const NetworkSpec& net, cplx s) {
  CMatrix y = node_admittance(netlist, net.dim(), s);
  for (int k = 0; k < net.dim(); ++k) {
    y(k, k) -= s * net.capacitance(k) + 1.0 / (s * net.inductance(k));
  }
  return y;
}

std::vector<PhasePoint> simulate_network(const ClassicalSystem& sys, const RVector& v0,
                                         const RVector& vdot0, const TimeGrid& grid) {
  return integrate_second_order(sys.a, sys.b, v0, vdot0, grid);
}

RoundtripReport quantum_roundtrip(const HamiltonianSpec& spec, const StateVector& psi0,
                                  const TimeGrid& grid, const RVector& capacitance,
                                  const FrequencyPolicy& policy) {
  if (!spec.is_constant()) {
    throw PreconditionError("circuit roundtrip needs a time-independent Hamiltonian");
  }
  const CMatrix h = spec(grid.t0());
  const double herm = hermitian_deviation(h);
  if (herm > 1e-12) {
    throw HermiticityError("circuit roundtrip needs a Hermitian Hamiltonian (deviation " +
                           csv::format_double(herm) + ")");
  }

  RoundtripReport rep;
  rep.real_system = build_real_system(h, true);
  if (!rep.real_system.decoupled_valid) {
    throw SingularityError("cannot decouple: " + rep.real_system.diagnostic);
  }
  rep.network = synthesize({*rep.real_system.aq, *rep.real_system.bq}, capacitance, policy);
  const ClassicalSystem circuit = rep.network.reconstruct();

  const auto ics = initial_conditions_from_quantum(rep.real_system, psi0);
  rep.quantum_path = evolve_state(spec, psi0, grid);
  rep.real_path = simulate_network(circuit, ics.phi1, ics.phidot1, grid);
  rep.imag_path = simulate_network(circuit, ics.phi2, ics.phidot2, grid);

  for (std::size_t j = 0; j < grid.size(); ++j) {
    const CVector& psi = rep.quantum_path[j].entries;
    rep.max_real_deviation =
        std::max(rep.max_real_deviation, max_abs(RVector(rep.real_path[j].q - psi.real())));
    rep.max_imag_deviation =
        std::max(rep.max_imag_deviation, max_abs(RVector(rep.imag_path[j].q - psi.imag())));
  }
  return rep;
}

RoundtripReport quantum_roundtrip(const HamiltonianSpec& spec, const StateVector& psi0,
                                  const TimeGrid& grid) {
  return quantum_roundtrip(spec, psi0, grid, RVector::Ones(spec.dim()));
}

}  // namespace qgauge
