#pragma once

#include <string>
#include <vector>

#include "qgauge/gauge.hpp"
#include "qgauge/integrator.hpp"
#include "qgauge/quantum_model.hpp"
#include "qgauge/realification.hpp"

namespace qgauge::csv {

// 17 significant digits; round-trips every double.
std::string format_double(double x);

// t, omega_i_j_re, omega_i_j_im (row-major, 1-based), then omegadot_i_j_re/_im.
std::string gauge_solution(const GaugeSolution& g);

// t, <prefix>_i_j_re, <prefix>_i_j_im for one matrix per node.
std::string matrix_samples(const TimeGrid& grid, const std::vector<CMatrix>& samples,
                           const std::string& prefix);

// t, psi1_re, psi1_im, ..., psin_re, psin_im, norm
std::string state_path(const std::vector<StateVector>& path);

// t,v1,...,vn,vdot1,...,vdotn
std::string trajectory(const TimeGrid& grid, const std::vector<PhasePoint>& path);

// Blocks "# H1", "# H2", "# Aq", "# Bq", each a dense row-major table.
std::string real_system(const RealSystem& sys);

}  // namespace qgauge::csv
