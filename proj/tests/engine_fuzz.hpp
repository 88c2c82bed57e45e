#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "bacp/fd_store.hpp"

namespace bacp::testing {

struct EngineReport {
  int sequences = 0;
  std::uint64_t assigns = 0;
  std::uint64_t restores = 0;
  int idempotence_failures = 0;
  int monotonicity_failures = 0;
  int restore_failures = 0;
  int soundness_failures = 0;

  bool clean() const {
    return idempotence_failures == 0 && monotonicity_failures == 0 &&
           restore_failures == 0 && soundness_failures == 0;
  }
};

namespace detail {

inline std::uint64_t checksum(const fd::Store& s) {
  std::uint64_t h = 1469598103934665603ull;  // FNV-1a over all bounds
  for (std::uint32_t k = 0; k < s.num_vars(); ++k) {
    const fd::Domain& d = s.domain(fd::VarId{k});
    for (fd::Value v : {d.lb, d.ub}) {
      h ^= static_cast<std::uint64_t>(v);
      h *= 1099511628211ull;
    }
  }
  return h;
}

inline std::vector<fd::Domain> snapshot(const fd::Store& s) {
  std::vector<fd::Domain> out;
  for (std::uint32_t k = 0; k < s.num_vars(); ++k) out.push_back(s.domain(fd::VarId{k}));
  return out;
}

inline bool shrunk_or_equal(const std::vector<fd::Domain>& before, const fd::Store& s) {
  for (std::uint32_t k = 0; k < before.size(); ++k) {
    const fd::Domain& d = s.domain(fd::VarId{k});
    if (d.lb < before[k].lb || d.ub > before[k].ub) return false;
  }
  return true;
}

inline bool all_fixed(const fd::Store& s) {
  for (std::uint32_t k = 0; k < s.num_vars(); ++k) {
    if (!s.fixed(fd::VarId{k})) return false;
  }
  return true;
}

/// Binary and small integer variables under random linear constraints.
inline fd::Store random_store(std::mt19937_64& rng) {
  fd::Store s;
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  const int vars = pick(3, 9);
  for (int k = 0; k < vars; ++k) {
    if (pick(0, 2) == 0) {
      s.new_var(pick(-3, 0), pick(1, 6));
    } else {
      s.new_var(0, 1);
    }
  }
  const int cons = pick(1, 6);
  for (int k = 0; k < cons; ++k) {
    fd::LinearConstraint c;
    for (int v = 0; v < vars; ++v) {
      if (pick(0, 2) != 0) continue;
      const int w = pick(-4, 4);
      c.terms.push_back({w == 0 ? 1 : w, fd::VarId{static_cast<std::uint32_t>(v)}});
    }
    if (c.terms.empty()) {
      c.terms.push_back({1, fd::VarId{static_cast<std::uint32_t>(pick(0, vars - 1))}});
    }
    c.relation = static_cast<fd::Relation>(pick(0, 2));
    c.rhs = pick(-3, 8);
    s.post(std::move(c));
  }
  return s;
}

}  // namespace detail

/**
 * Runs `count` random save/assign/restore sequences, each on a fresh random
 * store that survives root propagation, and counts property violations:
 * a second propagate changing a bound, a bound loosening during an assign,
 * a restore not reproducing the checksum taken at its save, and a fixed
 * conflict-free store violating a constraint.
 */
inline EngineReport run_engine_sequences(std::uint64_t seed, int count) {
  using namespace detail;
  std::mt19937_64 rng(seed);
  EngineReport r;
  auto pick = [&](std::size_t hi) { return std::uniform_int_distribution<std::size_t>(0, hi)(rng); };

  while (r.sequences < count) {
    fd::Store s = random_store(rng);
    if (!s.propagate().ok()) continue;
    ++r.sequences;

    std::vector<std::pair<fd::Mark, std::uint64_t>> marks;
    auto unwind_to = [&](std::size_t level) {
      s.restore(marks[level].first);
      ++r.restores;
      if (checksum(s) != marks[level].second) ++r.restore_failures;
      marks.resize(level);
    };

    for (int step = 0; step < 40; ++step) {
      if (!marks.empty() && pick(3) == 0) {
        unwind_to(pick(marks.size() - 1));
        continue;
      }
      std::vector<fd::VarId> open;
      for (std::uint32_t k = 0; k < s.num_vars(); ++k) {
        if (!s.fixed(fd::VarId{k})) open.push_back(fd::VarId{k});
      }
      if (open.empty()) {
        if (marks.empty()) break;
        unwind_to(marks.size() - 1);
        continue;
      }
      marks.emplace_back(s.save(), checksum(s));
      const fd::VarId v = open[pick(open.size() - 1)];
      const fd::Value value = std::uniform_int_distribution<fd::Value>(s.lb(v), s.ub(v))(rng);
      const auto before = snapshot(s);
      const auto outcome = s.assign(v, value);
      ++r.assigns;
      if (!shrunk_or_equal(before, s)) ++r.monotonicity_failures;
      if (!outcome.ok()) {
        unwind_to(marks.size() - 1);
        continue;
      }
      const std::uint64_t changes = s.bound_changes();
      if (!s.propagate().ok() || s.bound_changes() != changes) ++r.idempotence_failures;
      if (all_fixed(s)) {
        for (fd::ConstraintId c = 0; c < s.num_constraints(); ++c) {
          if (!s.satisfied_when_fixed(c)) ++r.soundness_failures;
        }
      }
    }
    while (!marks.empty()) unwind_to(marks.size() - 1);
  }
  return r;
}

}  // namespace bacp::testing
