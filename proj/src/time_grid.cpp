#include "qgauge/time_grid.hpp"

#include <cmath>
#include <string>

#include "qgauge/errors.hpp"

namespace qgauge {

TimeGrid::TimeGrid(double t0, double t1, int steps) : t0_(t0), t1_(t1), steps_(steps) {
  if (!std::isfinite(t0) || !std::isfinite(t1) || !(t0 < t1)) {
    throw PreconditionError("time grid needs finite t0 < t1");
  }
  if (steps < 1) throw PreconditionError("time grid needs at least one step");
}

double TimeGrid::node(std::size_t j) const {
  if (j > static_cast<std::size_t>(steps_)) {
    throw PreconditionError("grid index " + std::to_string(j) + " out of range");
  }
  if (j == static_cast<std::size_t>(steps_)) return t1_;
  return t0_ + static_cast<double>(j) * step();
}

std::vector<double> TimeGrid::nodes() const {
  std::vector<double> out(size());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = node(j);
  return out;
}

TimeGrid TimeGrid::sub_grid(std::size_t first, std::size_t last) const {
  if (!(first < last) || last >= size()) {
    throw PreconditionError("sub-grid needs first < last within the grid");
  }
  return TimeGrid(node(first), node(last), static_cast<int>(last - first));
}

}  // namespace qgauge
