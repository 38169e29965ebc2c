#include "qgauge/report.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "qgauge/csv.hpp"

namespace qgauge {

Report::Report(std::string command, std::string scenario, std::uint64_t seed)
    : command_(std::move(command)), scenario_(std::move(scenario)), seed_(seed) {}

const CheckResult& Report::push(CheckResult r) {
  if (find(r.name)) throw std::logic_error("duplicate report check: " + r.name);
  checks_.push_back(std::move(r));
  return checks_.back();
}

const CheckResult& Report::add_check(const std::string& name, double measured, double tolerance) {
  return push({name, measured, tolerance, CheckResult::Kind::at_most, measured <= tolerance});
}

const CheckResult& Report::add_check_at_least(const std::string& name, double measured,
                                              double threshold) {
  return push({name, measured, threshold, CheckResult::Kind::at_least, measured >= threshold});
}

void Report::add_metric(const std::string& name, double value) { metrics_.emplace_back(name, value); }

void Report::add_note(std::string note) { notes_.push_back(std::move(note)); }

bool Report::passed() const {
  return std::all_of(checks_.begin(), checks_.end(), [](const CheckResult& c) { return c.passed; });
}

const CheckResult* Report::find(const std::string& name) const {
  for (const auto& c : checks_) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

namespace {

// JSON has no NaN/inf; such values are written as strings.
nlohmann::ordered_json number(double x) {
  if (std::isfinite(x)) return x;
  return csv::format_double(x);
}

}  // namespace

nlohmann::ordered_json Report::to_json() const {
  nlohmann::ordered_json j;
  j["command"] = command_;
  j["scenario"] = scenario_;
  j["seed"] = seed_;
  j["passed"] = passed();
  auto& checks = j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : checks_) {
    nlohmann::ordered_json e;
    e["name"] = c.name;
    e["measured"] = number(c.measured);
    e[c.kind == CheckResult::Kind::at_most ? "tolerance" : "minimum"] = number(c.threshold);
    e["passed"] = c.passed;
    checks.push_back(std::move(e));
  }
  auto& metrics = j["metrics"] = nlohmann::ordered_json::object();
  for (const auto& [name, value] : metrics_) metrics[name] = number(value);
  j["notes"] = notes_;
  return j;
}

std::string Report::to_text() const {
  std::ostringstream os;
  os << command_ << " " << scenario_ << " (seed " << seed_ << "): "
     << (passed() ? "PASS" : "FAIL") << '\n';
  for (const auto& c : checks_) {
    os << (c.passed ? "  [pass] " : "  [FAIL] ") << c.name << ": " << csv::format_double(c.measured)
       << (c.kind == CheckResult::Kind::at_most ? " <= " : " >= ") << csv::format_double(c.threshold)
       << '\n';
  }
  for (const auto& [name, value] : metrics_) {
    os << "  metric " << name << " = " << csv::format_double(value) << '\n';
  }
  for (const auto& n : notes_) os << "  note: " << n << '\n';
  return os.str();
}

}  // namespace qgauge
