#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "mgm/demos.hpp"
#include "mgm/runner.hpp"

namespace {

constexpr int kIoError = 3;
constexpr int kScenarioError = 4;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Output {
  std::string report;      // path, "-" for stdout, empty for the default
  std::string report_dir;  // used when no explicit path is given
  std::size_t bound = 0;
  std::size_t jobs = 1;
  bool timings = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_report(const std::string& text, const Output& out, const std::string& stem) {
  std::string path = out.report;
  if (path.empty() && !out.report_dir.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(out.report_dir, ec);
    if (ec) throw IoError("cannot create " + out.report_dir + ": " + ec.message());
    path = (std::filesystem::path(out.report_dir) / (stem + ".json")).string();
  }
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    if (!std::cout) throw IoError("cannot write report to stdout");
    return;
  }
  std::ofstream f(path, std::ios::binary);
  f << text;
  f.close();
  if (!f) throw IoError("cannot write " + path);
}

int run_text(const std::string& text, const std::string& stem, const Output& out) {
  mgm::Scenario s;
  try {
    s = mgm::parse_scenario(text);
  } catch (const mgm::ScenarioError& e) {
    std::cerr << stem << ":" << e.where().line << ":" << e.where().column << ": " << e.message() << "\n";
    return kScenarioError;
  }
  mgm::RunOptions opts;
  if (out.bound) opts.bound = out.bound;
  opts.jobs = out.jobs;
  opts.timings = out.timings;
  mgm::Report r;
  try {
    r = mgm::run_scenario(s, opts);
  } catch (const mgm::ScenarioError& e) {
    std::cerr << stem << ":" << e.where().line << ":" << e.where().column << ": " << e.message() << "\n";
    return kScenarioError;
  }
  write_report(mgm::to_json(r).dump(2) + "\n", out, stem);
  std::cerr << stem << ": " << r.records.size() << " checks, " << r.passed << " verified, " << r.failed << " failed, "
            << r.inconclusive << " inconclusive, " << r.errors << " errors\n";
  return mgm::exit_code(r);
}

void add_run_options(CLI::App* cmd, Output& out) {
  cmd->add_option("--bound", out.bound, "Truncation bound for every check")->check(CLI::Range(2, 64));
  cmd->add_option("--jobs", out.jobs, "Worker threads")->check(CLI::Range(1, 256));
  cmd->add_option("--report", out.report, "Report path, - for stdout");
  cmd->add_option("--report-dir", out.report_dir, "Directory for <name>.json when --report is absent");
  cmd->add_flag("--timings", out.timings, "Record wall time per check (reports stop being reproducible)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pro/ind-system checks for adic completion and torsion"};
  app.require_subcommand(1);

  Output out;
  std::string file;
  CLI::App* run = app.add_subcommand("run", "Run a scenario file");
  run->add_option("file", file, "Scenario (.scn)")->required();
  add_run_options(run, out);

  std::string demo_name;
  CLI::App* demo = app.add_subcommand("demo", "Run a shipped scenario");
  std::vector<std::string> names;
  for (const auto& [name, text] : mgm::demos::kShipped) names.emplace_back(name);
  demo->add_option("name", demo_name, "mgm, serre, cofinite or wpr")->required()->check(CLI::IsMember(names));
  bool print_only = false;
  demo->add_flag("--print", print_only, "Print the scenario instead of running it");
  add_run_options(demo, out);

  CLI::App* list = app.add_subcommand("list-checks", "Describe the available checks");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      std::string text = read_file(file);
      return run_text(text, std::filesystem::path(file).stem().string(), out);
    }
    if (*demo) {
      for (const auto& [name, text] : mgm::demos::kShipped) {
        if (name != demo_name) continue;
        if (print_only) {
          std::cout << text;
          return 0;
        }
        return run_text(std::string(text), demo_name, out);
      }
    }
    if (*list) {
      for (const auto& c : mgm::check_catalogue()) std::cout << c.usage << "\n    " << c.summary << "\n";
      return 0;
    }
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIoError;
  }
  return 1;
}
