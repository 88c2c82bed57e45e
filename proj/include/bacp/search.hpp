#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "bacp/instance.hpp"
#include "bacp/model.hpp"

namespace bacp {

enum class ValueOrder {
  kZeroFirst,  // try "course not in this period" first
  kOneFirst,   // try "course in this period" first
};

enum class BoundMode {
  kRestartPerBound,  // a fresh tree for every tightened bound
  kContinueInTree,   // keep exploring the same tree under the tighter bound
};

struct SearchConfig {
  MatrixOrder var_order = MatrixOrder::kByPeriod;
  ValueOrder value_order = ValueOrder::kOneFirst;
  BoundMode bound_mode = BoundMode::kRestartPerBound;
  std::optional<std::uint64_t> node_limit;
  std::optional<std::chrono::duration<double>> time_limit;
};

struct SearchStats {
  std::uint64_t nodes = 0;     // branching decisions taken
  std::uint64_t failures = 0;  // propagation conflicts
  std::size_t peak_depth = 0;
  double elapsed_seconds = 0.0;
};

struct AnytimeEntry {
  Credits objective = 0;
  double seconds = 0.0;
  std::uint64_t nodes = 0;
};

enum class DecisionStatus { kSat, kUnsat, kLimitReached };
enum class OptStatus { kOptimal, kInfeasible, kIncomplete };

struct DecisionResult {
  DecisionStatus status = DecisionStatus::kUnsat;
  std::optional<Solution> solution;
  SearchStats stats;
};

struct OptResult {
  OptStatus status = OptStatus::kInfeasible;
  std::optional<Solution> best;
  std::vector<AnytimeEntry> anytime;
  SearchStats stats;
};

class BoundBelowBeta : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Branch {
  fd::VarId var;
  fd::Value value = 1;
  /// 0-based position of var in the branching sequence.
  std::size_t position = 0;
};

/// First unfixed assignment variable in the configured order, starting the
/// scan at position `from`. nullopt when every assignment variable is fixed.
std::optional<Branch> select_branch(const Model& model,
                                    const SearchConfig& config,
                                    std::size_t from = 0);

/// Is there a plan with maximum load <= max_load? The store is returned to
/// its pre-call state.
DecisionResult solve_decision(Model& model, Credits max_load,
                              const SearchConfig& config);

/// Called with each improving solution found by minimize.
using SolutionCallback = std::function<void(const Solution&, const AnytimeEntry&)>;

/// Minimizes the maximum period load by solving decision problems with a
/// bound tightened to (last objective - 1) after every solution.
OptResult minimize(Model& model, const SearchConfig& config,
                   const SolutionCallback& on_solution = {});

std::string_view to_string(MatrixOrder order);
std::string_view to_string(ValueOrder order);
std::string_view to_string(BoundMode mode);
std::string_view to_string(DecisionStatus status);
std::string_view to_string(OptStatus status);

}  // namespace bacp
