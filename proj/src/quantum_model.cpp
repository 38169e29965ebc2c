#include "qgauge/quantum_model.hpp"

#include <cmath>
#include <string>

#include "qgauge/errors.hpp"
#include "qgauge/integrator.hpp"

namespace qgauge {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

constexpr double kHermitianTolerance = 1e-12;

double horner(const std::vector<double>& coeffs, double t) {
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * t + *it;
  return acc;
}

}  // namespace

double profile_value(const Profile& p, double t) {
  return std::visit(
      overloaded{
          [](const ConstantProfile& c) { return c.value; },
          [t](const PolynomialProfile& poly) { return horner(poly.coeffs, t); },
          [t](const CosineProfile& c) { return c.amplitude * std::cos(c.frequency * t + c.phase); },
      },
      p);
}

double profile_integral(const Profile& p, double a, double b) {
  return std::visit(
      overloaded{
          [&](const ConstantProfile& c) { return c.value * (b - a); },
          [&](const PolynomialProfile& poly) {
            std::vector<double> anti(poly.coeffs.size() + 1, 0.0);
            for (std::size_t k = 0; k < poly.coeffs.size(); ++k) {
              anti[k + 1] = poly.coeffs[k] / static_cast<double>(k + 1);
            }
            return horner(anti, b) - horner(anti, a);
          },
          [&](const CosineProfile& c) {
            if (c.frequency == 0.0) return c.amplitude * std::cos(c.phase) * (b - a);
            return c.amplitude / c.frequency *
                   (std::sin(c.frequency * b + c.phase) - std::sin(c.frequency * a + c.phase));
          },
      },
      p);
}

bool profile_is_constant(const Profile& p) {
  return std::visit(overloaded{
                        [](const ConstantProfile&) { return true; },
                        [](const PolynomialProfile& poly) {
                          for (std::size_t k = 1; k < poly.coeffs.size(); ++k) {
                            if (poly.coeffs[k] != 0.0) return false;
                          }
                          return true;
                        },
                        [](const CosineProfile& c) { return c.frequency == 0.0 || c.amplitude == 0.0; },
                    },
                    p);
}

HamiltonianSpec::HamiltonianSpec(int dim, std::vector<HamiltonianTerm> terms, bool hermitian_hint)
    : dim_(dim), terms_(std::move(terms)), hermitian_hint_(hermitian_hint) {
  if (dim < 1) throw DimensionError("Hamiltonian dimension must be at least 1");
  for (std::size_t k = 0; k < terms_.size(); ++k) {
    const auto& m = terms_[k].matrix;
    if (m.rows() != dim || m.cols() != dim) {
      throw DimensionError("Hamiltonian term " + std::to_string(k) + " is " +
                           std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                           ", expected " + std::to_string(dim) + "x" + std::to_string(dim));
    }
    if (!m.allFinite()) {
      throw PreconditionError("Hamiltonian term " + std::to_string(k) + " is not finite");
    }
  }
}

HamiltonianSpec HamiltonianSpec::constant(const CMatrix& h, bool hermitian_hint) {
  if (h.rows() != h.cols()) throw DimensionError("Hamiltonian matrix is not square");
  return HamiltonianSpec(static_cast<int>(h.rows()), {{ConstantProfile{1.0}, h}}, hermitian_hint);
}

HamiltonianSpec HamiltonianSpec::zero(int dim) { return HamiltonianSpec(dim, {}, true); }

CMatrix HamiltonianSpec::operator()(double t) const {
  CMatrix h = CMatrix::Zero(dim_, dim_);
  for (const auto& term : terms_) h += profile_value(term.profile, t) * term.matrix;
  if (hermitian_hint_) {
    const double dev = hermitian_deviation(h);
    if (dev > kHermitianTolerance) {
      throw HermiticityError("Hamiltonian declared Hermitian deviates by " + std::to_string(dev) +
                             " at t=" + std::to_string(t));
    }
  }
  return h;
}

CMatrix HamiltonianSpec::integral(double a, double b) const {
  CMatrix out = CMatrix::Zero(dim_, dim_);
  for (const auto& term : terms_) out += profile_integral(term.profile, a, b) * term.matrix;
  return out;
}

bool HamiltonianSpec::is_constant() const {
  for (const auto& term : terms_) {
    if (!profile_is_constant(term.profile)) return false;
  }
  return true;
}

bool HamiltonianSpec::is_commuting_family() const {
  if (terms_.size() <= 1 || is_constant()) return true;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    for (std::size_t j = i + 1; j < terms_.size(); ++j) {
      const CMatrix& a = terms_[i].matrix;
      const CMatrix& b = terms_[j].matrix;
      const double scale = std::max(1.0, max_abs(a) * max_abs(b));
      if (max_abs(CMatrix(a * b - b * a)) > 1e-14 * scale) return false;
    }
  }
  return true;
}

PropagatorGrid::PropagatorGrid(TimeGrid grid, std::vector<CMatrix> u)
    : grid_(std::move(grid)), u_(std::move(u)) {
  if (u_.size() != grid_.size()) {
    throw GridMismatchError("propagator samples do not match the grid size");
  }
}

CMatrix PropagatorGrid::between(std::size_t t_index, std::size_t s_index) const {
  return at(t_index) * checked_inverse(at(s_index), "U(s, t0)");
}

CMatrix eval_hamiltonian(const HamiltonianSpec& spec, double t) {
  if (!std::isfinite(t)) throw PreconditionError("evaluation time must be finite");
  return spec(t);
}

std::vector<StateVector> evolve_state(const HamiltonianSpec& spec, const StateVector& psi0,
                                      const TimeGrid& grid) {
  if (psi0.dim() != spec.dim()) {
    throw DimensionError("initial state has dimension " + std::to_string(psi0.dim()) +
                         ", Hamiltonian has " + std::to_string(spec.dim()));
  }
  if (psi0.time != grid.t0()) throw PreconditionError("initial state time must equal grid t0");
  if (!psi0.entries.allFinite()) throw PreconditionError("initial state is not finite");

  const auto xs = integrate_rk4(grid, psi0.entries, [&](double t, const CVector& psi) -> CVector {
    return -kI * (spec(t) * psi);
  });
  std::vector<StateVector> out;
  out.reserve(xs.size());
  for (std::size_t j = 0; j < xs.size(); ++j) out.push_back({xs[j], grid.node(j)});
  return out;
}

PropagatorGrid propagator(const HamiltonianSpec& spec, const TimeGrid& grid) {
  const int n = spec.dim();
  auto us = integrate_rk4(grid, CMatrix(CMatrix::Identity(n, n)),
                          [&](double t, const CMatrix& u) -> CMatrix { return -kI * (spec(t) * u); });
  return PropagatorGrid(grid, std::move(us));
}

double hermiticity_check(const HamiltonianSpec& spec, const TimeGrid& grid) {
  const HamiltonianSpec unchecked(spec.dim(), spec.terms(), false);
  double worst = 0.0;
  for (double t : grid.nodes()) worst = std::max(worst, hermitian_deviation(unchecked(t)));
  return worst;
}

}  // namespace qgauge
