#include "qgauge/gauge.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qgauge/errors.hpp"
#include "qgauge/integrator.hpp"

namespace qgauge {

std::string_view to_string(GaugeBackend b) {
  switch (b) {
    case GaugeBackend::magnus_constant:
      return "magnus_constant";
    case GaugeBackend::rk4_integrated:
      return "rk4_integrated";
    case GaugeBackend::analytic_product:
      return "analytic_product";
    case GaugeBackend::composed:
      return "composed";
  }
  return "unknown";
}

GaugeSolution::GaugeSolution(TimeGrid grid, std::vector<CMatrix> omega,
                             std::vector<CMatrix> omega_dot, GaugeBackend backend)
    : grid_(std::move(grid)),
      omega_(std::move(omega)),
      omega_dot_(std::move(omega_dot)),
      backend_(backend) {
  if (omega_.size() != grid_.size() || omega_dot_.size() != grid_.size()) {
    throw GridMismatchError("gauge samples do not match the grid size");
  }
  const Eigen::Index n = omega_.front().rows();
  for (std::size_t j = 0; j < omega_.size(); ++j) {
    if (omega_[j].rows() != n || omega_[j].cols() != n || omega_dot_[j].rows() != n ||
        omega_dot_[j].cols() != n) {
      throw DimensionError("gauge sample " + std::to_string(j) + " has the wrong shape");
    }
    require_nonsingular(omega_[j], "omega(t_" + std::to_string(j) + ")");
  }
}

GaugeSolution GaugeSolution::identity(int dim, const TimeGrid& grid) {
  return GaugeSolution(grid, std::vector<CMatrix>(grid.size(), CMatrix::Identity(dim, dim)),
                       std::vector<CMatrix>(grid.size(), CMatrix::Zero(dim, dim)),
                       GaugeBackend::analytic_product);
}

GaugeSolution GaugeSolution::from_functions(const TimeGrid& grid,
                                            const std::function<CMatrix(double)>& omega,
                                            const std::function<CMatrix(double)>& omega_dot) {
  std::vector<CMatrix> w;
  std::vector<CMatrix> wd;
  w.reserve(grid.size());
  wd.reserve(grid.size());
  for (double t : grid.nodes()) {
    w.push_back(omega(t));
    wd.push_back(omega_dot(t));
  }
  return GaugeSolution(grid, std::move(w), std::move(wd), GaugeBackend::analytic_product);
}

std::pair<CMatrix, CMatrix> GaugeSolution::interpolate(double t) const {
  const double h = grid_.step();
  const double x = std::clamp((t - grid_.t0()) / h, 0.0, static_cast<double>(grid_.steps()));
  const auto j = std::min(static_cast<std::size_t>(x), grid_.size() - 2);
  const double frac = x - static_cast<double>(j);
  return {(1.0 - frac) * omega_[j] + frac * omega_[j + 1],
          (1.0 - frac) * omega_dot_[j] + frac * omega_dot_[j + 1]};
}

double GaugeSolution::derivative_consistency() const {
  // Rate scale: the larger of max |omega_dot| and max |omega| / duration, so a
  // nearly constant omega is not judged against round-off-sized derivatives.
  double scale = 0.0;
  for (const auto& d : omega_dot_) scale = std::max(scale, max_abs(d));
  for (const auto& w : omega_) scale = std::max(scale, max_abs(w) / (grid_.t1() - grid_.t0()));
  double worst = 0.0;
  for (std::size_t j = 1; j + 1 < omega_.size(); ++j) {
    const double span = grid_.node(j + 1) - grid_.node(j - 1);
    const CMatrix fd = (omega_[j + 1] - omega_[j - 1]) / span;
    worst = std::max(worst, max_abs(CMatrix(fd - omega_dot_[j])));
  }
  return scale > 0.0 ? worst / scale : worst;
}

GaugePair::GaugePair(HamiltonianSpec source_, HamiltonianSpec target_)
    : source(std::move(source_)), target(std::move(target_)) {
  if (source.dim() != target.dim()) {
    throw DimensionError("gauge pair dimensions differ: " + std::to_string(source.dim()) +
                         " vs " + std::to_string(target.dim()));
  }
}

CMatrix apply_gauge_map(const CMatrix& omega, const CMatrix& omega_dot, const CMatrix& h) {
  if (omega.rows() != h.rows() || omega.cols() != h.cols() || omega_dot.rows() != h.rows() ||
      omega_dot.cols() != h.cols() || h.rows() != h.cols()) {
    throw DimensionError("gauge map operands have mismatched shapes");
  }
  const CMatrix inv = checked_inverse(omega, "omega");
  return omega * h * inv + kI * omega_dot * inv;
}

namespace {

void check_seed(const CMatrix& seed, int dim) {
  if (seed.rows() != dim || seed.cols() != dim) {
    throw DimensionError("gauge seed must be " + std::to_string(dim) + "x" + std::to_string(dim));
  }
  require_nonsingular(seed, "gauge seed");
}

void require_same_grid(const GaugeSolution& a, const GaugeSolution& b) {
  if (!(a.grid() == b.grid())) throw GridMismatchError("gauge solutions live on different grids");
  if (a.dim() != b.dim()) throw DimensionError("gauge solutions have different dimensions");
}

}  // namespace

GaugeSolution solve_omega1(const HamiltonianSpec& target, const TimeGrid& grid,
                           const CMatrix& seed) {
  check_seed(seed, target.dim());
  std::vector<CMatrix> w;
  std::vector<CMatrix> wd;
  w.reserve(grid.size());
  wd.reserve(grid.size());
  GaugeBackend backend;
  if (target.is_commuting_family()) {
    backend = GaugeBackend::magnus_constant;
    for (double t : grid.nodes()) {
      w.push_back(expm(-kI * target.integral(grid.t0(), t)) * seed);
    }
  } else {
    backend = GaugeBackend::rk4_integrated;
    w = integrate_rk4(grid, seed,
                      [&](double t, const CMatrix& x) -> CMatrix { return -kI * (target(t) * x); });
  }
  for (std::size_t j = 0; j < w.size(); ++j) wd.push_back(-kI * (target(grid.node(j)) * w[j]));
  return GaugeSolution(grid, std::move(w), std::move(wd), backend);
}

GaugeSolution solve_omega1(const HamiltonianSpec& target, const TimeGrid& grid) {
  return solve_omega1(target, grid, CMatrix::Identity(target.dim(), target.dim()));
}

GaugeSolution solve_omega2(const HamiltonianSpec& source, const TimeGrid& grid,
                           const CMatrix& seed) {
  check_seed(seed, source.dim());
  std::vector<CMatrix> w;
  std::vector<CMatrix> wd;
  w.reserve(grid.size());
  wd.reserve(grid.size());
  GaugeBackend backend;
  if (source.is_commuting_family()) {
    backend = GaugeBackend::magnus_constant;
    for (double t : grid.nodes()) {
      w.push_back(seed * expm(kI * source.integral(grid.t0(), t)));
    }
  } else {
    backend = GaugeBackend::rk4_integrated;
    w = integrate_rk4(grid, seed,
                      [&](double t, const CMatrix& x) -> CMatrix { return kI * (x * source(t)); });
  }
  for (std::size_t j = 0; j < w.size(); ++j) wd.push_back(kI * (w[j] * source(grid.node(j))));
  return GaugeSolution(grid, std::move(w), std::move(wd), backend);
}

GaugeSolution solve_omega2(const HamiltonianSpec& source, const TimeGrid& grid) {
  return solve_omega2(source, grid, CMatrix::Identity(source.dim(), source.dim()));
}

GaugeSolution transitive_solution(const GaugePair& pair, const TimeGrid& grid,
                                  const CMatrix& seed) {
  return compose(solve_omega1(pair.target, grid, seed), solve_omega2(pair.source, grid));
}

GaugeSolution transitive_solution(const GaugePair& pair, const TimeGrid& grid) {
  const int n = pair.source.dim();
  return transitive_solution(pair, grid, CMatrix::Identity(n, n));
}

GaugeSolution compose(const GaugeSolution& g1, const GaugeSolution& g2) {
  require_same_grid(g1, g2);
  std::vector<CMatrix> w(g1.grid().size());
  std::vector<CMatrix> wd(g1.grid().size());
  for (std::size_t j = 0; j < w.size(); ++j) {
    w[j] = g1.omega(j) * g2.omega(j);
    wd[j] = g1.omega_dot(j) * g2.omega(j) + g1.omega(j) * g2.omega_dot(j);
  }
  return GaugeSolution(g1.grid(), std::move(w), std::move(wd), GaugeBackend::composed);
}

GaugeSolution inverse_gauge(const GaugeSolution& g) {
  std::vector<CMatrix> w(g.grid().size());
  std::vector<CMatrix> wd(g.grid().size());
  for (std::size_t j = 0; j < w.size(); ++j) {
    w[j] = checked_inverse(g.omega(j), "omega");
    wd[j] = -w[j] * g.omega_dot(j) * w[j];
  }
  return GaugeSolution(g.grid(), std::move(w), std::move(wd), g.backend());
}

std::vector<StateVector> map_state(const GaugeSolution& g, const std::vector<StateVector>& path) {
  if (path.size() != g.grid().size()) {
    throw GridMismatchError("state path has " + std::to_string(path.size()) +
                            " samples, gauge grid has " + std::to_string(g.grid().size()));
  }
  std::vector<StateVector> out;
  out.reserve(path.size());
  for (std::size_t j = 0; j < path.size(); ++j) {
    const double t = g.grid().node(j);
    if (std::abs(path[j].time - t) > 1e-12 * (1.0 + std::abs(t))) {
      throw GridMismatchError("state path time " + std::to_string(path[j].time) +
                              " does not match grid node " + std::to_string(t));
    }
    if (path[j].dim() != g.dim()) throw DimensionError("state and gauge dimensions differ");
    out.push_back({g.omega(j) * path[j].entries, path[j].time});
  }
  return out;
}

CMatrix conjugate_propagator(const GaugeSolution& g, const PropagatorGrid& u,
                             std::size_t s_index, std::size_t t_index, InverseMode mode) {
  if (!(g.grid() == u.grid())) throw GridMismatchError("gauge and propagator grids differ");
  if (g.dim() != u.dim()) throw DimensionError("gauge and propagator dimensions differ");
  if (s_index >= g.grid().size() || t_index >= g.grid().size()) {
    throw PreconditionError("propagator index out of range");
  }
  const CMatrix& ws = g.omega(s_index);
  const CMatrix ws_inv = mode == InverseMode::unitary ? CMatrix(ws.adjoint())
                                                      : checked_inverse(ws, "omega(s)");
  return g.omega(t_index) * u.between(t_index, s_index) * ws_inv;
}

double intertwining_residual(const GaugeSolution& g, const GaugePair& pair) {
  if (g.dim() != pair.source.dim()) throw DimensionError("gauge and pair dimensions differ");
  double worst = 0.0;
  for (std::size_t j = 0; j < g.grid().size(); ++j) {
    const double t = g.grid().node(j);
    const CMatrix& w = g.omega(j);
    const CMatrix r = kI * g.omega_dot(j) - (pair.target(t) * w - w * pair.source(t));
    worst = std::max(worst, max_abs(r));
  }
  return worst;
}

double mapped_hamiltonian_deviation(const GaugeSolution& g, const GaugePair& pair) {
  if (g.dim() != pair.source.dim()) throw DimensionError("gauge and pair dimensions differ");
  double worst = 0.0;
  for (std::size_t j = 0; j < g.grid().size(); ++j) {
    const double t = g.grid().node(j);
    const CMatrix mapped = apply_gauge_map(g.omega(j), g.omega_dot(j), pair.source(t));
    worst = std::max(worst, max_abs(CMatrix(mapped - pair.target(t))));
  }
  return worst;
}

double gauge_unitarity_deviation(const GaugeSolution& g) {
  double worst = 0.0;
  for (const auto& w : g.omegas()) worst = std::max(worst, unitarity_deviation(w));
  return worst;
}

}  // namespace qgauge
