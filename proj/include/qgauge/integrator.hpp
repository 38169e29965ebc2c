#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qgauge/errors.hpp"
#include "qgauge/linalg.hpp"
#include "qgauge/time_grid.hpp"

namespace qgauge {

// Classical fixed-step RK4 over every interval of `grid`. `rhs(t, x)` returns
// dx/dt. Works for Eigen vectors and matrices alike.
template <typename State, typename Rhs>
std::vector<State> integrate_rk4(const TimeGrid& grid, State x0, Rhs&& rhs) {
  std::vector<State> out;
  out.reserve(grid.size());
  out.push_back(std::move(x0));
  const double h = grid.step();
  for (std::size_t j = 0; j + 1 < grid.size(); ++j) {
    const double t = grid.node(j);
    const State& x = out.back();
    const State k1 = rhs(t, x);
    const State k2 = rhs(t + 0.5 * h, State(x + (0.5 * h) * k1));
    const State k3 = rhs(t + 0.5 * h, State(x + (0.5 * h) * k2));
    const State k4 = rhs(t + h, State(x + h * k3));
    State next = x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!next.allFinite()) {
      throw NumericError("non-finite value at t=" + std::to_string(grid.node(j + 1)) +
                         "; step size too coarse for the generator");
    }
    out.push_back(std::move(next));
  }
  return out;
}

// Position/velocity sample of a second-order trajectory.
struct PhasePoint {
  RVector q;
  RVector qdot;
};

// q'' + damping q' + stiffness q = 0, integrated as the companion first-order
// system with integrate_rk4. Both the decoupled quantum form and the network
// simulation go through here, so identical inputs give identical outputs.
std::vector<PhasePoint> integrate_second_order(const RMatrix& damping,
                                               const RMatrix& stiffness,
                                               const RVector& q0,
                                               const RVector& qdot0,
                                               const TimeGrid& grid);

}  // namespace qgauge
