#include "mgm/runner.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <thread>

namespace mgm {

std::string fnv1a(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

std::string verdict_word(Status s) {
  switch (s) {
    case Status::Stabilized:
    case Status::Verified:
      return "verified";
    case Status::Failed:
      return "failed";
    case Status::Inconclusive:
      break;
  }
  return "inconclusive";
}

CheckRecord run_one(const Workspace& ws, const Scenario& s, std::size_t i, const RunOptions& opts) {
  const CheckDecl& c = s.checks[i];
  CheckRecord rec;
  rec.index = i;
  rec.kind = c.kind;
  rec.args = c.args;
  if (!c.side.empty()) rec.args.push_back(c.side);
  rec.bound = effective_bound(s, i, opts.bound);
  rec.reproduction = reproduction(s, i);
  rec.digest = fnv1a(rec.reproduction);
  const auto t0 = std::chrono::steady_clock::now();
  try {
    TheoremInstance t = run_check(ws, s, i, opts.bound);
    rec.id = t.id;
    rec.input = t.input;
    rec.verdict = verdict_word(t.verdict.status);
    rec.level = t.verdict.level;
    rec.witnesses = t.verdict.witnesses;
    rec.trace = t.trace;
  } catch (const std::exception& e) {
    rec.id = c.kind;
    rec.verdict = "error";
    rec.witnesses = {e.what()};
  }
  if (opts.timings)
    rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rec;
}

}  // namespace

Report run_scenario(const Scenario& s, const RunOptions& opts) {
  const Workspace ws = instantiate(s);
  const std::size_t n = s.checks.size();
  Report r;
  r.records.resize(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) r.records[i] = run_one(ws, s, i, opts);
  };
  const std::size_t jobs = std::max<std::size_t>(1, std::min(opts.jobs, n));
  std::vector<std::thread> pool;
  for (std::size_t k = 1; k < jobs; ++k) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  for (const auto& rec : r.records) {
    if (rec.verdict == "verified")
      ++r.passed;
    else if (rec.verdict == "failed")
      ++r.failed;
    else if (rec.verdict == "inconclusive")
      ++r.inconclusive;
    else
      ++r.errors;
  }
  return r;
}

int exit_code(const Report& r) {
  if (r.failed || r.errors) return 1;
  if (r.inconclusive) return 2;
  return 0;
}

nlohmann::ordered_json to_json(const Report& r) {
  using nlohmann::ordered_json;
  ordered_json checks = ordered_json::array();
  for (const auto& rec : r.records) {
    ordered_json j;
    j["index"] = rec.index;
    j["id"] = rec.id;
    j["check"] = rec.kind;
    j["args"] = rec.args;
    j["input"] = rec.input;
    j["bound"] = rec.bound;
    j["inputs_digest"] = rec.digest;
    j["verdict"] = rec.verdict;
    j["level"] = rec.level ? ordered_json(*rec.level) : ordered_json(nullptr);
    j["witnesses"] = rec.witnesses;
    j["trace"] = rec.trace;
    j["reproduction"] = rec.reproduction;
    if (rec.seconds) j["wall_seconds"] = *rec.seconds;
    checks.push_back(std::move(j));
  }
  ordered_json out;
  out["checks"] = std::move(checks);
  ordered_json summary;
  summary["total"] = r.records.size();
  summary["passed"] = r.passed;
  summary["failed"] = r.failed;
  summary["inconclusive"] = r.inconclusive;
  summary["errors"] = r.errors;
  summary["exit_code"] = exit_code(r);
  out["summary"] = std::move(summary);
  return out;
}

}  // namespace mgm
