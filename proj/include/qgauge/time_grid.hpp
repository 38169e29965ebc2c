#pragma once

#include <cstddef>
#include <vector>

namespace qgauge {

// Uniform partition of [t0, t1] into `steps` intervals (steps + 1 nodes).
class TimeGrid {
 public:
  TimeGrid(double t0, double t1, int steps);

  double t0() const noexcept { return t0_; }
  double t1() const noexcept { return t1_; }
  int steps() const noexcept { return steps_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(steps_) + 1; }
  double step() const noexcept { return (t1_ - t0_) / steps_; }

  // The last node is t1 exactly.
  double node(std::size_t j) const;
  std::vector<double> nodes() const;

  // Grid over nodes [first, last] of this one, with the same spacing.
  TimeGrid sub_grid(std::size_t first, std::size_t last) const;

  bool operator==(const TimeGrid&) const = default;

 private:
  double t0_;
  double t1_;
  int steps_;
};

}  // namespace qgauge
