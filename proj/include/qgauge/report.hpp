#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace qgauge {

struct CheckResult {
  enum class Kind { at_most, at_least };

  std::string name;
  double measured = 0.0;
  double threshold = 0.0;
  Kind kind = Kind::at_most;
  bool passed = false;
};

// Ordered list of named checks plus informational metrics and notes. The
// overall status is the conjunction of the checks.
class Report {
 public:
  Report(std::string command, std::string scenario, std::uint64_t seed);

  // measured <= tolerance passes; NaN never does. Names must be unique.
  const CheckResult& add_check(const std::string& name, double measured, double tolerance);
  // measured >= threshold passes.
  const CheckResult& add_check_at_least(const std::string& name, double measured,
                                        double threshold);
  void add_metric(const std::string& name, double value);
  void add_note(std::string note);

  bool passed() const;
  const std::vector<CheckResult>& checks() const noexcept { return checks_; }
  const CheckResult* find(const std::string& name) const;

  nlohmann::ordered_json to_json() const;
  std::string to_text() const;

 private:
  const CheckResult& push(CheckResult r);

  std::string command_;
  std::string scenario_;
  std::uint64_t seed_;
  std::vector<CheckResult> checks_;
  std::vector<std::pair<std::string, double>> metrics_;
  std::vector<std::string> notes_;
};

}  // namespace qgauge
