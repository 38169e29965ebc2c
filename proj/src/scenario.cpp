#include "qgauge/scenario.hpp"

#include <fstream>
#include <sstream>

#include "qgauge/errors.hpp"

namespace qgauge {

using nlohmann::json;

namespace {

cplx parse_complex(const json& v) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return {v[0].get<double>(), v[1].get<double>()};
  }
  throw ConfigError("expected a complex number as [re, im], got " + v.dump());
}

const json& require(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw ConfigError(where + ": missing \"" + key + "\"");
  }
  return obj.at(key);
}

double number(const json& v, const std::string& what) {
  if (!v.is_number()) throw ConfigError(what + " must be a number");
  return v.get<double>();
}

Profile parse_profile(const json& p) {
  const std::string kind = require(p, "kind", "profile").get<std::string>();
  if (kind == "const") {
    return ConstantProfile{number(require(p, "value", "const profile"), "const profile value")};
  }
  if (kind == "poly") {
    const json& c = require(p, "coeffs", "poly profile");
    if (!c.is_array()) throw ConfigError("poly profile coeffs must be an array");
    PolynomialProfile poly;
    for (const auto& x : c) poly.coeffs.push_back(number(x, "poly coefficient"));
    return poly;
  }
  if (kind == "cos") {
    CosineProfile cp;
    cp.amplitude = number(p.value("amplitude", json(1.0)), "cos amplitude");
    cp.frequency = number(p.value("frequency", json(1.0)), "cos frequency");
    cp.phase = number(p.value("phase", json(0.0)), "cos phase");
    return cp;
  }
  throw ConfigError("unknown profile kind \"" + kind + "\"");
}

json profile_to_json(const Profile& p) {
  if (const auto* c = std::get_if<ConstantProfile>(&p)) return {{"kind", "const"}, {"value", c->value}};
  if (const auto* poly = std::get_if<PolynomialProfile>(&p)) {
    return {{"kind", "poly"}, {"coeffs", poly->coeffs}};
  }
  const auto& c = std::get<CosineProfile>(p);
  return {{"kind", "cos"}, {"amplitude", c.amplitude}, {"frequency", c.frequency}, {"phase", c.phase}};
}

RVector parse_real_vector(const json& v, const std::string& what) {
  if (!v.is_array()) throw ConfigError(what + " must be an array");
  RVector out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t k = 0; k < v.size(); ++k) out(static_cast<Eigen::Index>(k)) = number(v[k], what);
  return out;
}

}  // namespace

CMatrix parse_complex_matrix(const json& doc) {
  if (!doc.is_array() || doc.empty()) throw ConfigError("matrix must be a non-empty array of rows");
  const auto rows = static_cast<Eigen::Index>(doc.size());
  if (!doc[0].is_array()) throw ConfigError("matrix rows must be arrays");
  const auto cols = static_cast<Eigen::Index>(doc[0].size());
  CMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const json& row = doc[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw ConfigError("matrix rows must all have the same length");
    }
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = parse_complex(row[static_cast<std::size_t>(j)]);
  }
  return m;
}

json complex_matrix_to_json(const CMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

HamiltonianSpec parse_hamiltonian(const json& doc) {
  if (!doc.is_object()) throw ConfigError("Hamiltonian must be an object");
  const json& terms = require(doc, "terms", "Hamiltonian");
  if (!terms.is_array()) throw ConfigError("Hamiltonian terms must be an array");
  std::vector<HamiltonianTerm> parsed;
  for (const auto& term : terms) {
    Profile profile = ConstantProfile{1.0};
    if (term.contains("profile")) profile = parse_profile(term.at("profile"));
    parsed.push_back({std::move(profile), parse_complex_matrix(require(term, "matrix", "term"))});
  }
  int dim = 0;
  if (doc.contains("dim")) {
    dim = doc.at("dim").get<int>();
  } else if (!parsed.empty()) {
    dim = static_cast<int>(parsed.front().matrix.rows());
  } else {
    throw ConfigError("Hamiltonian without terms needs an explicit \"dim\"");
  }
  const bool hermitian = doc.value("hermitian", false);
  if (hermitian) {
    for (std::size_t k = 0; k < parsed.size(); ++k) {
      const CMatrix& m = parsed[k].matrix;
      if (m.rows() == m.cols() && hermitian_deviation(m) > 1e-12) {
        throw ConfigError("term " + std::to_string(k + 1) + " of a Hamiltonian marked hermitian is not Hermitian");
      }
    }
  }
  try {
    return HamiltonianSpec(dim, std::move(parsed), hermitian);
  } catch (const PreconditionError& e) {
    throw ConfigError(e.what());
  }
}

json hamiltonian_to_json(const HamiltonianSpec& spec) {
  json terms = json::array();
  for (const auto& t : spec.terms()) {
    terms.push_back({{"profile", profile_to_json(t.profile)}, {"matrix", complex_matrix_to_json(t.matrix)}});
  }
  return {{"dim", spec.dim()}, {"hermitian", spec.hermitian_hint()}, {"terms", terms}};
}

TimeGrid Scenario::time_grid() const { return TimeGrid(grid.t0, grid.t1, grid.steps); }

double Scenario::tolerance(const std::string& check, double fallback) const {
  if (auto it = tolerances.find(check); it != tolerances.end()) return it->second;
  if (auto it = tolerances.find("all"); it != tolerances.end()) return it->second;
  return fallback;
}

Scenario parse_scenario(const json& doc) {
  try {
    if (!doc.is_object()) throw ConfigError("scenario must be a JSON object");
    Scenario sc{.name = doc.value("name", std::string("unnamed")),
                .source = parse_hamiltonian(require(doc, "source", "scenario")),
                .target = std::nullopt,
                .initial_state = {},
                .grid = {},
                .gauge_seed = std::nullopt,
                .capacitance = std::nullopt,
                .inductance = std::nullopt,
                .seed = 0,
                .tolerances = {}};
    const int n = sc.source.dim();
    if (doc.contains("target") && !doc.at("target").is_null()) {
      sc.target = parse_hamiltonian(doc.at("target"));
      if (sc.target->dim() != n) throw ConfigError("source and target dimensions differ");
    }

    if (doc.contains("initial_state")) {
      const json& s = doc.at("initial_state");
      if (!s.is_array() || static_cast<int>(s.size()) != n) {
        throw ConfigError("initial_state must have " + std::to_string(n) + " entries");
      }
      sc.initial_state.resize(n);
      for (int k = 0; k < n; ++k) sc.initial_state(k) = parse_complex(s[static_cast<std::size_t>(k)]);
    } else {
      sc.initial_state = CVector::Unit(n, 0);
    }

    const json& g = require(doc, "grid", "scenario");
    sc.grid.t0 = number(g.value("t0", json(0.0)), "grid t0");
    sc.grid.t1 = number(require(g, "t1", "grid"), "grid t1");
    sc.grid.steps = require(g, "steps", "grid").get<int>();
    if (sc.grid.steps < 2) throw ConfigError("grid steps must be at least 2");
    if (!(sc.grid.t0 < sc.grid.t1)) throw ConfigError("grid needs t0 < t1");

    if (doc.contains("gauge_seed")) {
      sc.gauge_seed = parse_complex_matrix(doc.at("gauge_seed"));
      if (sc.gauge_seed->rows() != n || sc.gauge_seed->cols() != n) {
        throw ConfigError("gauge_seed must be " + std::to_string(n) + "x" + std::to_string(n));
      }
    }
    if (doc.contains("synthesis")) {
      const json& syn = doc.at("synthesis");
      if (syn.contains("capacitance")) {
        sc.capacitance = parse_real_vector(syn.at("capacitance"), "capacitance");
        if (sc.capacitance->size() != n) throw ConfigError("capacitance needs one entry per port");
      }
      if (syn.contains("inductance")) {
        sc.inductance = parse_real_vector(syn.at("inductance"), "inductance");
        if (sc.inductance->size() != n) throw ConfigError("inductance needs one entry per port");
      }
    }
    if (doc.contains("seed")) sc.seed = doc.at("seed").get<std::uint64_t>();
    if (doc.contains("tolerances")) {
      for (const auto& [key, value] : doc.at("tolerances").items()) {
        const double tol = number(value, "tolerance " + key);
        if (!(tol > 0.0)) throw ConfigError("tolerance " + key + " must be positive");
        sc.tolerances[key] = tol;
      }
    }
    return sc;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("scenario schema error: ") + e.what());
  } catch (const ConfigError&) {
    throw;
  } catch (const PreconditionError& e) {
    throw ConfigError(e.what());
  }
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open scenario file " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("malformed scenario JSON in " + path.string() + ": " + e.what());
  }
  return parse_scenario(doc);
}

}  // namespace qgauge
