#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qgauge/cli.hpp"
#include "qgauge/errors.hpp"
#include "qgauge/gauge.hpp"
#include "qgauge/network_synth.hpp"
#include "qgauge/realification.hpp"

namespace py = pybind11;
using namespace qgauge;

namespace {

// One row per grid node.
CMatrix path_rows(const std::vector<StateVector>& path) {
  CMatrix out(static_cast<Eigen::Index>(path.size()), path.front().dim());
  for (std::size_t j = 0; j < path.size(); ++j) out.row(static_cast<Eigen::Index>(j)) = path[j].entries.transpose();
  return out;
}

RMatrix phase_rows(const std::vector<PhasePoint>& path) {
  RMatrix out(static_cast<Eigen::Index>(path.size()), path.front().q.size());
  for (std::size_t j = 0; j < path.size(); ++j) out.row(static_cast<Eigen::Index>(j)) = path[j].q.transpose();
  return out;
}

}  // namespace

PYBIND11_MODULE(_qgauge, m) {
  m.doc() = "Gauge maps between quantum systems and their electric network realization";

  auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  auto precondition = py::register_exception<PreconditionError>(m, "PreconditionError", error.ptr());
  auto dimension = py::register_exception<DimensionError>(m, "DimensionError", precondition.ptr());
  py::register_exception<GridMismatchError>(m, "GridMismatchError", dimension.ptr());
  py::register_exception<ConfigError>(m, "ConfigError", precondition.ptr());
  auto numeric = py::register_exception<NumericError>(m, "NumericError", error.ptr());
  py::register_exception<SingularityError>(m, "SingularityError", numeric.ptr());
  py::register_exception<HermiticityError>(m, "HermiticityError", numeric.ptr());
  py::register_exception<PoleError>(m, "PoleError", numeric.ptr());
  py::register_exception<UnsupportedSystemError>(m, "UnsupportedSystemError", numeric.ptr());
  py::register_exception<FrequencyAssignmentError>(m, "FrequencyAssignmentError", numeric.ptr());

  py::class_<TimeGrid>(m, "TimeGrid")
      .def(py::init<double, double, int>(), py::arg("t0"), py::arg("t1"), py::arg("steps"))
      .def_property_readonly("t0", &TimeGrid::t0)
      .def_property_readonly("t1", &TimeGrid::t1)
      .def_property_readonly("steps", &TimeGrid::steps)
      .def_property_readonly("step", &TimeGrid::step)
      .def("nodes", &TimeGrid::nodes)
      .def("__len__", &TimeGrid::size);

  py::class_<ConstantProfile>(m, "ConstantProfile")
      .def(py::init<double>(), py::arg("value"))
      .def_readwrite("value", &ConstantProfile::value);
  py::class_<PolynomialProfile>(m, "PolynomialProfile")
      .def(py::init<std::vector<double>>(), py::arg("coeffs"))
      .def_readwrite("coeffs", &PolynomialProfile::coeffs);
  py::class_<CosineProfile>(m, "CosineProfile")
      .def(py::init<double, double, double>(), py::arg("amplitude"), py::arg("frequency"),
           py::arg("phase") = 0.0)
      .def_readwrite("amplitude", &CosineProfile::amplitude)
      .def_readwrite("frequency", &CosineProfile::frequency)
      .def_readwrite("phase", &CosineProfile::phase);

  py::class_<HamiltonianSpec>(m, "Hamiltonian")
      .def(py::init([](int dim, const std::vector<std::pair<Profile, CMatrix>>& terms, bool hermitian) {
             std::vector<HamiltonianTerm> t;
             for (const auto& [p, mat] : terms) t.push_back({p, mat});
             return HamiltonianSpec(dim, std::move(t), hermitian);
           }),
           py::arg("dim"), py::arg("terms"), py::arg("hermitian") = false)
      .def_static("constant", &HamiltonianSpec::constant, py::arg("h"), py::arg("hermitian") = false)
      .def_static("zero", &HamiltonianSpec::zero, py::arg("dim"))
      .def("__call__", &HamiltonianSpec::operator(), py::arg("t"))
      .def("integral", &HamiltonianSpec::integral, py::arg("a"), py::arg("b"))
      .def_property_readonly("dim", &HamiltonianSpec::dim)
      .def_property_readonly("hermitian", &HamiltonianSpec::hermitian_hint)
      .def("is_constant", &HamiltonianSpec::is_constant)
      .def("is_commuting_family", &HamiltonianSpec::is_commuting_family);

  m.def(
      "evolve_state",
      [](const HamiltonianSpec& h, const CVector& psi0, const TimeGrid& grid) {
        return path_rows(evolve_state(h, {psi0, grid.t0()}, grid));
      },
      py::arg("hamiltonian"), py::arg("psi0"), py::arg("grid"),
      "State at every grid node, one row per node.");
  m.def(
      "propagator", [](const HamiltonianSpec& h, const TimeGrid& grid) { return propagator(h, grid).matrices(); },
      py::arg("hamiltonian"), py::arg("grid"));

  py::class_<GaugeSolution>(m, "GaugeSolution")
      .def_property_readonly("grid", &GaugeSolution::grid)
      .def_property_readonly("dim", &GaugeSolution::dim)
      .def_property_readonly("backend", [](const GaugeSolution& g) { return std::string(to_string(g.backend())); })
      .def_property_readonly("omegas", &GaugeSolution::omegas)
      .def_property_readonly("omega_dots", &GaugeSolution::omega_dots)
      .def("omega", &GaugeSolution::omega, py::arg("j"))
      .def("omega_dot", &GaugeSolution::omega_dot, py::arg("j"))
      .def("derivative_consistency", &GaugeSolution::derivative_consistency);

  m.def("apply_gauge_map", &apply_gauge_map, py::arg("omega"), py::arg("omega_dot"), py::arg("h"));
  m.def(
      "transitive_solution",
      [](const HamiltonianSpec& source, const HamiltonianSpec& target, const TimeGrid& grid,
         const std::optional<CMatrix>& seed) {
        const GaugePair pair(source, target);
        return seed ? transitive_solution(pair, grid, *seed) : transitive_solution(pair, grid);
      },
      py::arg("source"), py::arg("target"), py::arg("grid"), py::arg("seed") = py::none());
  m.def("compose", &compose, py::arg("g1"), py::arg("g2"));
  m.def("inverse_gauge", &inverse_gauge, py::arg("g"));
  m.def(
      "intertwining_residual",
      [](const GaugeSolution& g, const HamiltonianSpec& s, const HamiltonianSpec& t) {
        return intertwining_residual(g, GaugePair(s, t));
      },
      py::arg("g"), py::arg("source"), py::arg("target"));
  m.def(
      "mapped_hamiltonian_deviation",
      [](const GaugeSolution& g, const HamiltonianSpec& s, const HamiltonianSpec& t) {
        return mapped_hamiltonian_deviation(g, GaugePair(s, t));
      },
      py::arg("g"), py::arg("source"), py::arg("target"));
  m.def("gauge_unitarity_deviation", &gauge_unitarity_deviation, py::arg("g"));

  py::class_<RealSystem>(m, "RealSystem")
      .def_readonly("dim", &RealSystem::dim)
      .def_readonly("h1", &RealSystem::h1)
      .def_readonly("h2", &RealSystem::h2)
      .def_readonly("coupled_generator", &RealSystem::coupled_generator)
      .def_readonly("aq", &RealSystem::aq)
      .def_readonly("bq", &RealSystem::bq)
      .def_readonly("decoupled_valid", &RealSystem::decoupled_valid)
      .def_readonly("diagnostic", &RealSystem::diagnostic);
  m.def("build_real_system", py::overload_cast<const CMatrix&, bool>(&build_real_system), py::arg("h"),
        py::arg("want_decoupled") = true);

  py::class_<NetworkSpec>(m, "NetworkSpec")
      .def_readonly("capacitance", &NetworkSpec::capacitance)
      .def_readonly("inductance", &NetworkSpec::inductance)
      .def_readonly("alpha", &NetworkSpec::alpha)
      .def_readonly("beta", &NetworkSpec::beta)
      .def_readonly("omega0_sq", &NetworkSpec::omega0_sq)
      .def_property_readonly("alpha_psd", [](const NetworkSpec& n) { return n.passivity.alpha_psd; })
      .def("reconstruct", [](const NetworkSpec& n) {
        const ClassicalSystem s = n.reconstruct();
        return std::make_pair(s.a, s.b);
      });
  m.def(
      "synthesize",
      [](const RMatrix& a, const RMatrix& b, const std::optional<RVector>& capacitance,
         const std::optional<RVector>& inductance) {
        const RVector c = capacitance ? *capacitance : RVector(RVector::Ones(a.rows()));
        if (inductance) return synthesize({a, b}, c, ExplicitInductancePolicy{*inductance});
        return synthesize({a, b}, c);
      },
      py::arg("a"), py::arg("b"), py::arg("capacitance") = py::none(), py::arg("inductance") = py::none());
  m.def("admittance", &admittance, py::arg("network"), py::arg("s"));

  py::class_<Netlist>(m, "Netlist")
      .def_readonly("text", &Netlist::text)
      .def("has_diagnostics", &Netlist::has_diagnostics)
      .def("node_admittance", [](const Netlist& n, int ports, cplx s) { return node_admittance(n, ports, s); },
           py::arg("ports"), py::arg("s"));
  m.def("emit_netlist", &emit_netlist, py::arg("network"));

  m.def(
      "quantum_roundtrip",
      [](const HamiltonianSpec& h, const CVector& psi0, const TimeGrid& grid, const std::optional<RVector>& cap) {
        const StateVector start{psi0, grid.t0()};
        const RoundtripReport r =
            cap ? quantum_roundtrip(h, start, grid, *cap) : quantum_roundtrip(h, start, grid);
        py::dict out;
        out["max_real_deviation"] = r.max_real_deviation;
        out["max_imag_deviation"] = r.max_imag_deviation;
        out["voltages"] = phase_rows(r.real_path);
        out["mirrored_voltages"] = phase_rows(r.imag_path);
        out["network"] = r.network;
        return out;
      },
      py::arg("hamiltonian"), py::arg("psi0"), py::arg("grid"), py::arg("capacitance") = py::none());

  m.def("run_cli", &cli::run, py::arg("args"), "Command-line entry point; returns the exit code.");
}
