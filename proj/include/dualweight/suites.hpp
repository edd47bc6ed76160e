#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "dualweight/divergence.hpp"
#include "dualweight/root_system.hpp"

namespace dw {

/// One verified (system, alpha, subsets) outcome.
struct VerifyRow {
  std::string suite;
  /// Descriptive name of the statement being checked.
  std::string anchor;
  std::string system;
  /// 1-based simple root, 0 when the row is not about a single root.
  int alpha = 0;
  std::string subsets;
  std::string route;
  /// "pass", "fail", or "expected" (a control producing its intended violation).
  std::string status;
  nlohmann::json evidence;
  double wall_time = 0;
};

/// Suite names accepted by run_suite, in the order "all" runs them.
const std::vector<std::string>& suite_names();

/// Irreducible catalogue systems of rank 1..max_rank, followed by a few
/// reducible ones that fit.
std::vector<std::string> default_systems(int max_rank);
/// Systems a suite runs on when none are given: A2 and A3 for the controls,
/// default_systems(max_rank) otherwise.
std::vector<std::string> default_systems_for(const std::string& suite, int max_rank);

/// Runs one suite over the given systems. Systems whose rank exceeds
/// max_rank are skipped. Throws PreconditionViolated for an unknown suite.
std::vector<VerifyRow> run_suite(const std::string& suite, const std::vector<std::string>& systems, int max_rank,
                                 int jobs, std::uint64_t seed = 1);

bool all_pass(const std::vector<VerifyRow>& rows);

/// Ordered selections of distinct simple roots with length 1..max_length.
std::vector<std::vector<int>> all_selections(int rank, int max_length);

/// Outcome of one generated trace after divergence and induction replay.
struct SimRow {
  std::string system;
  std::vector<int> selection;
  std::uint64_t seed = 0;
  std::string status;  // "pass", "fail", "infeasible"
  std::string message;
  long horizon = 0;
  long n0 = 0;
  std::vector<RayWeight> weights;
  std::vector<RootSeries> roots;
  std::vector<std::string> branches;
};

struct SimulateOptions {
  std::vector<std::string> systems;
  /// Empty: every ordered selection up to the rank.
  std::vector<std::vector<int>> selections;
  int max_rank = 4;
  long horizon = 100;
  int traces = 1;
  std::uint64_t seed = 1;
  int jobs = 1;
  /// Keep the full time series in each row.
  bool series = false;
};

/// Trace t of a (system, selection) pair uses derive_seed(seed, t), so the
/// result depends only on the options, never on jobs.
std::vector<SimRow> run_simulation(const SimulateOptions& opt);

}  // namespace dw
