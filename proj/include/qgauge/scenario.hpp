#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include <json.hpp>

#include "qgauge/linalg.hpp"
#include "qgauge/quantum_model.hpp"
#include "qgauge/time_grid.hpp"

namespace qgauge {

struct GridConfig {
  double t0 = 0.0;
  double t1 = 1.0;
  int steps = 1000;
};

// One scenario document. See README for the schema.
struct Scenario {
  std::string name;
  HamiltonianSpec source;
  std::optional<HamiltonianSpec> target;
  CVector initial_state;
  GridConfig grid;
  std::optional<CMatrix> gauge_seed;
  std::optional<RVector> capacitance;
  std::optional<RVector> inductance;
  std::uint64_t seed = 0;
  std::map<std::string, double> tolerances;

  TimeGrid time_grid() const;
  // Per-check override, then the "all" override, then the fallback.
  double tolerance(const std::string& check, double fallback) const;
};

// Throws ConfigError on schema violations.
Scenario parse_scenario(const nlohmann::json& doc);
Scenario load_scenario(const std::filesystem::path& path);

// {"dim", "hermitian", "terms": [{"profile": {...}, "matrix": [[[re, im], ...], ...]}]}
HamiltonianSpec parse_hamiltonian(const nlohmann::json& doc);
nlohmann::json hamiltonian_to_json(const HamiltonianSpec& spec);

CMatrix parse_complex_matrix(const nlohmann::json& doc);
nlohmann::json complex_matrix_to_json(const CMatrix& m);

}  // namespace qgauge
