#ifndef MGM_RUNNER_HPP
#define MGM_RUNNER_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "mgm/scenario.hpp"

namespace mgm {

struct RunOptions {
  std::optional<std::size_t> bound;
  std::size_t jobs = 1;
  bool timings = false;  // wall time makes reports differ run to run
};

struct CheckRecord {
  std::size_t index = 0;
  std::string kind;
  std::vector<std::string> args;
  std::string id;
  std::string input;
  std::size_t bound = 0;
  std::string verdict;  // verified, failed, inconclusive, error
  std::optional<std::size_t> level;
  std::vector<std::string> witnesses;
  std::vector<std::string> trace;
  std::string reproduction;
  std::string digest;
  std::optional<double> seconds;
};

struct Report {
  std::vector<CheckRecord> records;
  std::size_t passed = 0, failed = 0, inconclusive = 0, errors = 0;
};

// 0 when everything verified, 1 on any failure or error, else 2.
int exit_code(const Report& r);

std::string fnv1a(const std::string& text);
Report run_scenario(const Scenario& s, const RunOptions& opts);
nlohmann::ordered_json to_json(const Report& r);

}  // namespace mgm

#endif  // MGM_RUNNER_HPP
