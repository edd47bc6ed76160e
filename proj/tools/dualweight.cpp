// dualweight: build root systems, run verification suites, simulate traces.
//
// Exit status: 0 when everything passes, 1 on a verification failure,
// 2 on a usage or configuration error.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "dualweight/errors.hpp"
#include "dualweight/report.hpp"
#include "dualweight/suites.hpp"

namespace {

using nlohmann::json;

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  std::vector<std::string> systems;
  bool systems_given = false;
  int max_rank = 4;
  std::vector<std::string> suites{"all"};
  std::uint64_t seed = 1;
  long horizon = 100;
  std::string out;
  std::string format = "json";
  int jobs = 1;
  int traces = 1;
  std::vector<std::vector<int>> selections;
  bool series = false;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep))
    if (!cur.empty()) out.push_back(cur);
  return out;
}

// "1,2;2,1" -> {{0,1},{1,0}}.
std::vector<std::vector<int>> parse_selections(const std::string& text) {
  std::vector<std::vector<int>> out;
  for (const auto& part : split(text, ';')) {
    std::vector<int> sel;
    for (const auto& x : split(part, ',')) {
      try {
        std::size_t used = 0;
        const int v = std::stoi(x, &used);
        if (used != x.size() || v < 1) throw std::invalid_argument(x);
        sel.push_back(v - 1);
      } catch (const std::logic_error&) {
        throw UsageError("bad root index '" + x + "' in selection");
      }
    }
    out.push_back(sel);
  }
  return out;
}

std::vector<std::string> json_strings(const json& v, const std::string& key) {
  if (v.is_string()) return split(v.get<std::string>(), ',');
  if (!v.is_array()) throw UsageError("config key '" + key + "' must be a string or a list");
  std::vector<std::string> out;
  for (const auto& x : v) out.push_back(x.get<std::string>());
  return out;
}

void apply_config_file(const std::string& path, Config& cfg) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw UsageError("config " + path + ": " + e.what());
  }
  if (!j.is_object()) throw UsageError("config must be a JSON object");
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "system") {
        cfg.systems = json_strings(v, key);
        cfg.systems_given = true;
      } else if (key == "max_rank" || key == "max-rank") {
        cfg.max_rank = v.get<int>();
      } else if (key == "suite") {
        cfg.suites = json_strings(v, key);
      } else if (key == "seed") {
        cfg.seed = v.get<std::uint64_t>();
      } else if (key == "horizon") {
        cfg.horizon = v.get<long>();
      } else if (key == "out") {
        cfg.out = v.get<std::string>();
      } else if (key == "format") {
        cfg.format = v.get<std::string>();
      } else if (key == "jobs") {
        cfg.jobs = v.get<int>();
      } else if (key == "traces") {
        cfg.traces = v.get<int>();
      } else if (key == "selection") {
        cfg.selections = parse_selections(v.get<std::string>());
      } else if (key == "series") {
        cfg.series = v.get<bool>();
      } else {
        throw UsageError("unknown config key '" + key + "'");
      }
    }
  } catch (const json::exception& e) {
    throw UsageError("config " + path + ": " + e.what());
  }
}

void validate(const Config& cfg) {
  if (cfg.max_rank < 1) throw UsageError("max-rank must be at least 1");
  if (cfg.jobs < 1) throw UsageError("jobs must be at least 1");
  if (cfg.traces < 0) throw UsageError("traces must be nonnegative");
  if (cfg.horizon < 0) throw UsageError("horizon must be nonnegative");
  if (cfg.format != "json" && cfg.format != "csv") throw UsageError("format must be json or csv");
}

void emit(const Config& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream os(cfg.out, std::ios::binary);
  if (!os) throw UsageError("cannot write " + cfg.out);
  os << text;
}

int cmd_build(const Config& cfg) {
  if (cfg.systems.empty()) throw UsageError("build needs --system");
  std::string text;
  if (cfg.format == "csv") {
    for (const auto& s : cfg.systems) text += dw::system_csv(dw::RootSystem::build(s));
  } else {
    json out;
    if (cfg.systems.size() == 1) {
      out = dw::system_report(dw::RootSystem::build(cfg.systems.front()));
    } else {
      out = {{"schema", 1}, {"command", "build"}, {"systems", json::array()}};
      for (const auto& s : cfg.systems) out["systems"].push_back(dw::system_report(dw::RootSystem::build(s)));
    }
    text = out.dump(2) + "\n";
  }
  emit(cfg, text);
  return kPass;
}

int cmd_verify(const Config& cfg) {
  std::vector<std::string> suites;
  for (const auto& s : cfg.suites) {
    if (s == "all") {
      suites.insert(suites.end(), dw::suite_names().begin(), dw::suite_names().end());
    } else if (std::find(dw::suite_names().begin(), dw::suite_names().end(), s) != dw::suite_names().end()) {
      suites.push_back(s);
    } else {
      throw UsageError("unknown suite '" + s + "'");
    }
  }
  for (const auto& s : cfg.systems) dw::RootSystem::build(s);  // surface spec errors before running
  std::vector<dw::VerifyRow> rows;
  for (const auto& suite : suites) {
    const auto systems = cfg.systems_given ? cfg.systems : dw::default_systems_for(suite, cfg.max_rank);
    auto part = dw::run_suite(suite, systems, cfg.max_rank, cfg.jobs, cfg.seed);
    rows.insert(rows.end(), part.begin(), part.end());
  }
  emit(cfg, cfg.format == "csv" ? dw::verify_csv(rows) : dw::verify_report(rows).dump(2) + "\n");
  for (const auto& r : rows) {
    if (r.status == "fail") {
      std::cerr << "verification failure: " << r.suite << " " << r.anchor << " " << r.system << " alpha=" << r.alpha
                << " " << r.subsets << " " << r.evidence.dump() << "\n";
      return kFail;
    }
  }
  return kPass;
}

int cmd_simulate(const Config& cfg) {
  dw::SimulateOptions opt;
  opt.systems = cfg.systems_given ? cfg.systems : dw::default_systems(cfg.max_rank);
  opt.selections = cfg.selections;
  opt.max_rank = cfg.max_rank;
  opt.horizon = cfg.horizon;
  opt.traces = cfg.traces;
  opt.seed = cfg.seed;
  opt.jobs = cfg.jobs;
  opt.series = cfg.series;
  for (const auto& s : opt.systems) {
    const auto rs = dw::RootSystem::build(s);
    for (const auto& sel : opt.selections)
      for (int a : sel) rs.check_root(a);
  }
  const auto rows = dw::run_simulation(opt);
  // The echoed configuration leaves out jobs and the output path, which do
  // not influence the result.
  json sels = json::array();
  for (const auto& sel : opt.selections) {
    json s = json::array();
    for (int a : sel) s.push_back(a + 1);
    sels.push_back(s);
  }
  const json config = {{"systems", opt.systems}, {"max_rank", opt.max_rank}, {"horizon", opt.horizon},
                       {"traces", opt.traces},   {"seed", opt.seed},         {"selections", sels}};
  emit(cfg, cfg.format == "csv" ? dw::simulate_csv(rows) : dw::simulate_report(rows, config).dump(2) + "\n");
  for (const auto& r : rows) {
    if (r.status == "fail") {
      std::cerr << "simulation failure: " << r.message << "\n";
      return kFail;
    }
    if (r.status == "infeasible") std::cerr << "infeasible: " << r.message << "\n";
  }
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dual weights of root systems: exact verification and divergence simulation"};
  app.require_subcommand(1);

  Config cfg;
  std::string system_flag, suite_flag, selection_flag, config_path;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON file with the same keys as the flags");
    sub->add_option("--system", system_flag, "Comma-separated system specs, e.g. A3,B2xA1");
    sub->add_option("--max-rank", cfg.max_rank, "Skip systems of larger rank");
    sub->add_option("--seed", cfg.seed, "Base seed");
    sub->add_option("--out", cfg.out, "Output file (default stdout)");
    sub->add_option("--format", cfg.format, "json or csv");
    sub->add_option("--jobs", cfg.jobs, "Worker threads");
  };
  CLI::App* build = app.add_subcommand("build", "Print a root system and its weight table");
  add_common(build);
  CLI::App* verify = app.add_subcommand("verify", "Run verification suites");
  add_common(verify);
  verify->add_option("--suite", suite_flag, "Comma-separated suites, or all");
  CLI::App* simulate = app.add_subcommand("simulate", "Generate and check divergence traces");
  add_common(simulate);
  simulate->add_option("--horizon", cfg.horizon, "Time indices per trace");
  simulate->add_option("--traces", cfg.traces, "Traces per (system, selection)");
  simulate->add_option("--selection", selection_flag, "1-based root lists, e.g. 1,2;2,1 (default: all)");
  simulate->add_flag("--series", cfg.series, "Include full time series");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  CLI::App* active = app.get_subcommands().front();
  try {
    if (!config_path.empty()) {
      // Flags given on the command line override the file.
      Config file_cfg;
      apply_config_file(config_path, file_cfg);
      auto given = [&](const char* name) { return active->count(name) > 0; };
      if (!given("--max-rank")) cfg.max_rank = file_cfg.max_rank;
      if (!given("--seed")) cfg.seed = file_cfg.seed;
      if (!given("--out")) cfg.out = file_cfg.out;
      if (!given("--format")) cfg.format = file_cfg.format;
      if (!given("--jobs")) cfg.jobs = file_cfg.jobs;
      if (active != simulate || !given("--horizon")) cfg.horizon = file_cfg.horizon;
      if (active != simulate || !given("--traces")) cfg.traces = file_cfg.traces;
      if (active != simulate || !given("--series")) cfg.series = file_cfg.series;
      cfg.systems = file_cfg.systems;
      cfg.systems_given = file_cfg.systems_given;
      cfg.suites = file_cfg.suites;
      cfg.selections = file_cfg.selections;
    }
    if (active->count("--system")) {
      cfg.systems = split(system_flag, ',');
      cfg.systems_given = true;
    }
    if (active == verify && verify->count("--suite")) cfg.suites = split(suite_flag, ',');
    if (active == simulate && simulate->count("--selection")) cfg.selections = parse_selections(selection_flag);
    validate(cfg);
    if (active == build) return cmd_build(cfg);
    if (active == verify) return cmd_verify(cfg);
    return cmd_simulate(cfg);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const dw::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const dw::InvalidRank& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const dw::UnknownRoot& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const dw::PreconditionViolated& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const dw::Error& e) {
    std::cerr << "failure: " << e.what() << "\n";
    return kFail;
  }
}
