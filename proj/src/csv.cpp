#include "qgauge/csv.hpp"

#include <cstdio>
#include <sstream>

namespace qgauge::csv {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

void matrix_header(std::ostream& os, const std::string& prefix, Eigen::Index n) {
  for (Eigen::Index i = 1; i <= n; ++i) {
    for (Eigen::Index j = 1; j <= n; ++j) {
      os << ',' << prefix << '_' << i << '_' << j << "_re," << prefix << '_' << i << '_' << j
         << "_im";
    }
  }
}

void matrix_row(std::ostream& os, const CMatrix& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      os << ',' << format_double(m(i, j).real()) << ',' << format_double(m(i, j).imag());
    }
  }
}

void dense_block(std::ostream& os, const std::string& title, const RMatrix& m) {
  os << "# " << title << '\n';
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) os << ',';
      os << format_double(m(i, j));
    }
    os << '\n';
  }
}

}  // namespace

std::string gauge_solution(const GaugeSolution& g) {
  std::ostringstream os;
  os << 't';
  matrix_header(os, "omega", g.dim());
  matrix_header(os, "omegadot", g.dim());
  os << '\n';
  for (std::size_t j = 0; j < g.grid().size(); ++j) {
    os << format_double(g.grid().node(j));
    matrix_row(os, g.omega(j));
    matrix_row(os, g.omega_dot(j));
    os << '\n';
  }
  return os.str();
}

std::string matrix_samples(const TimeGrid& grid, const std::vector<CMatrix>& samples,
                           const std::string& prefix) {
  std::ostringstream os;
  os << 't';
  if (!samples.empty()) matrix_header(os, prefix, samples.front().rows());
  os << '\n';
  for (std::size_t j = 0; j < samples.size(); ++j) {
    os << format_double(grid.node(j));
    matrix_row(os, samples[j]);
    os << '\n';
  }
  return os.str();
}

std::string state_path(const std::vector<StateVector>& path) {
  std::ostringstream os;
  os << 't';
  const int n = path.empty() ? 0 : path.front().dim();
  for (int k = 1; k <= n; ++k) os << ",psi" << k << "_re,psi" << k << "_im";
  os << ",norm\n";
  for (const auto& s : path) {
    os << format_double(s.time);
    for (int k = 0; k < n; ++k) {
      os << ',' << format_double(s.entries(k).real()) << ',' << format_double(s.entries(k).imag());
    }
    os << ',' << format_double(s.norm()) << '\n';
  }
  return os.str();
}

std::string trajectory(const TimeGrid& grid, const std::vector<PhasePoint>& path) {
  std::ostringstream os;
  os << 't';
  const Eigen::Index n = path.empty() ? 0 : path.front().q.size();
  for (Eigen::Index k = 1; k <= n; ++k) os << ",v" << k;
  for (Eigen::Index k = 1; k <= n; ++k) os << ",vdot" << k;
  os << '\n';
  for (std::size_t j = 0; j < path.size(); ++j) {
    os << format_double(grid.node(j));
    for (Eigen::Index k = 0; k < n; ++k) os << ',' << format_double(path[j].q(k));
    for (Eigen::Index k = 0; k < n; ++k) os << ',' << format_double(path[j].qdot(k));
    os << '\n';
  }
  return os.str();
}

std::string real_system(const RealSystem& sys) {
  std::ostringstream os;
  dense_block(os, "H1", sys.h1);
  dense_block(os, "H2", sys.h2);
  if (sys.aq) dense_block(os, "Aq", *sys.aq);
  if (sys.bq) dense_block(os, "Bq", *sys.bq);
  return os.str();
}

}  // namespace qgauge::csv
