#include "bacp/search.hpp"

#include <string>

namespace bacp {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

/// Depth-first search over the assignment variables of one Model. Limits and
/// statistics span every call to explore() made on the same instance.
class DepthFirst {
 public:
  enum class Outcome { kExhausted, kStopped, kLimit };

  /// Return true to stop the search at this solution.
  using Leaf = std::function<bool(Solution)>;

  DepthFirst(Model& model, const SearchConfig& config, Clock::time_point start)
      : model_(model), config_(config), start_(start) {}

  Outcome explore(Credits bound, Leaf on_leaf) {
    bound_ = bound;
    on_leaf_ = std::move(on_leaf);
    fd::Store& store = model_.store();
    const fd::Mark root = store.save();
    Outcome out = Outcome::kExhausted;
    if (apply_bound()) out = descend(0, 0);
    store.restore(root);
    return out;
  }

  void tighten(Credits bound) { bound_ = bound; }
  const SearchStats& stats() {
    stats_.elapsed_seconds = seconds_since(start_);
    return stats_;
  }

 private:
  bool apply_bound() {
    fd::Store& store = model_.store();
    if (store.ub(model_.c_max()) <= bound_) return true;
    if (!store.set_ub(model_.c_max(), bound_) || !store.propagate().ok()) {
      ++stats_.failures;
      return false;
    }
    return true;
  }

  bool limit_reached() const {
    if (config_.node_limit && stats_.nodes >= *config_.node_limit) return true;
    return config_.time_limit && seconds_since(start_) >= config_.time_limit->count();
  }

  Outcome descend(std::size_t from, std::size_t depth) {
    if (depth > stats_.peak_depth) stats_.peak_depth = depth;
    auto branch = select_branch(model_, config_, from);
    if (!branch) {
      return on_leaf_(model_.extract_solution()) ? Outcome::kStopped
                                                 : Outcome::kExhausted;
    }
    fd::Store& store = model_.store();
    for (fd::Value value : {branch->value, 1 - branch->value}) {
      if (limit_reached()) return Outcome::kLimit;
      ++stats_.nodes;
      const fd::Mark mark = store.save();
      Outcome out = Outcome::kExhausted;
      if (!store.assign(branch->var, value).ok()) {
        ++stats_.failures;
      } else if (apply_bound()) {
        out = descend(branch->position + 1, depth + 1);
      }
      store.restore(mark);
      if (out != Outcome::kExhausted) return out;
    }
    return Outcome::kExhausted;
  }

  Model& model_;
  const SearchConfig& config_;
  Clock::time_point start_;
  Credits bound_ = 0;
  Leaf on_leaf_;
  SearchStats stats_;
};

void check_bound(const Model& model, Credits max_load) {
  if (max_load < model.instance().load_min) {
    throw BoundBelowBeta("max load " + std::to_string(max_load) +
                         " is below load_min " +
                         std::to_string(model.instance().load_min));
  }
}

}  // namespace

std::optional<Branch> select_branch(const Model& model,
                                    const SearchConfig& config,
                                    std::size_t from) {
  const auto& seq = model.branching_sequence(config.var_order);
  const fd::Store& store = model.store();
  for (std::size_t k = from; k < seq.size(); ++k) {
    if (!store.fixed(seq[k])) {
      return Branch{seq[k], config.value_order == ValueOrder::kOneFirst ? 1 : 0, k};
    }
  }
  return std::nullopt;
}

DecisionResult solve_decision(Model& model, Credits max_load,
                              const SearchConfig& config) {
  check_bound(model, max_load);
  DepthFirst dfs(model, config, Clock::now());
  DecisionResult result;
  const auto out = dfs.explore(max_load, [&](Solution s) {
    result.solution = std::move(s);
    return true;
  });
  result.status = out == DepthFirst::Outcome::kStopped ? DecisionStatus::kSat
                  : out == DepthFirst::Outcome::kLimit ? DecisionStatus::kLimitReached
                                                       : DecisionStatus::kUnsat;
  result.stats = dfs.stats();
  return result;
}

OptResult minimize(Model& model, const SearchConfig& config,
                   const SolutionCallback& on_solution) {
  const auto start = Clock::now();
  const CurriculumInstance& inst = model.instance();
  DepthFirst dfs(model, config, start);
  OptResult result;
  Credits bound = inst.load_max;

  auto record = [&](Solution s) {
    AnytimeEntry entry{s.objective, seconds_since(start), dfs.stats().nodes};
    result.anytime.push_back(entry);
    if (on_solution) on_solution(s, entry);
    // Objectives are integral, so "better than v" is "at most v - 1".
    bound = s.objective - 1;
    result.best = std::move(s);
  };

  DepthFirst::Outcome out = DepthFirst::Outcome::kExhausted;
  if (config.bound_mode == BoundMode::kRestartPerBound) {
    // C >= load_min is a domain bound, so a bound below it is unsatisfiable
    // without search.
    while (bound >= inst.load_min) {
      out = dfs.explore(bound, [&](Solution s) {
        record(std::move(s));
        return true;
      });
      if (out != DepthFirst::Outcome::kStopped) break;
    }
  } else {
    out = dfs.explore(bound, [&](Solution s) {
      record(std::move(s));
      dfs.tighten(bound);
      return bound < inst.load_min;
    });
  }

  if (out == DepthFirst::Outcome::kLimit) {
    result.status = OptStatus::kIncomplete;
  } else {
    result.status = result.best ? OptStatus::kOptimal : OptStatus::kInfeasible;
  }
  result.stats = dfs.stats();
  return result;
}

std::string_view to_string(MatrixOrder order) {
  return order == MatrixOrder::kByPeriod ? "by-period" : "by-course";
}

std::string_view to_string(ValueOrder order) {
  return order == ValueOrder::kOneFirst ? "one-first" : "zero-first";
}

std::string_view to_string(BoundMode mode) {
  return mode == BoundMode::kRestartPerBound ? "restart" : "continue";
}

std::string_view to_string(DecisionStatus status) {
  switch (status) {
    case DecisionStatus::kSat:
      return "Sat";
    case DecisionStatus::kUnsat:
      return "Unsat";
    case DecisionStatus::kLimitReached:
      return "LimitReached";
  }
  return "?";
}

std::string_view to_string(OptStatus status) {
  switch (status) {
    case OptStatus::kOptimal:
      return "Optimal";
    case OptStatus::kInfeasible:
      return "Infeasible";
    case OptStatus::kIncomplete:
      return "Incomplete";
  }
  return "?";
}

}  // namespace bacp
