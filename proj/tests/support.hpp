#pragma once

#include <string>

#include "bacp/instance.hpp"
#include "bacp/model.hpp"
#include "bacp/oracle.hpp"

namespace bacp::testing {

inline std::string data_file(const std::string& name) {
  return std::string(BACP_DATA_DIR) + "/" + name;
}

inline std::string fixture_file(const std::string& name) {
  return std::string(BACP_TEST_DATA_DIR) + "/" + name;
}

inline CurriculumInstance fixture(const std::string& name) {
  return load_instance(fixture_file(name));
}

/// Does `period_of` extend to a conflict-free, fully fixed store? The
/// store is restored before returning.
inline bool network_accepts(Model& model, const Assignment& period_of) {
  auto& store = model.store();
  const fd::Mark mark = store.save();
  bool ok = true;
  for (std::size_t i = 0; ok && i < period_of.size(); ++i) {
    const fd::VarId v = model.x(i, period_of[i]);
    if (store.ub(v) < 1) {
      ok = false;
    } else if (!store.fixed(v)) {
      ok = store.assign(v, 1).ok();
    }
  }
  for (std::uint32_t k = 0; ok && k < store.num_vars(); ++k) {
    const fd::VarId v{k};
    if (!store.fixed(v)) ok = store.assign(v, store.lb(v)).ok();
  }
  store.restore(mark);
  return ok;
}

/// Calls f on every total assignment in mixed-radix order.
template <typename F>
void for_each_assignment(const CurriculumInstance& inst, F&& f) {
  Assignment a(inst.num_courses(), 1);
  const std::uint64_t total = candidate_count(inst);
  for (std::uint64_t k = 0; k < total; ++k) {
    f(static_cast<const Assignment&>(a));
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] < inst.periods) {
        ++a[i];
        break;
      }
      a[i] = 1;
    }
  }
}

/// Parameters for the k-th small random instance (m <= 9, n <= 3).
inline GenParams small_params(std::uint64_t seed) {
  static constexpr double kDensity[] = {0.0, 0.1, 0.25, 0.5};
  static constexpr double kSlack[] = {0.2, 0.5, 0.9};
  GenParams p;
  p.seed = seed;
  p.courses = 3 + seed % 7;
  p.periods = 2 + static_cast<int>(seed % 2);
  p.credit_min = 1;
  p.credit_max = 1 + static_cast<Credits>(seed % 5);
  p.prereq_density = kDensity[seed % 4];
  p.bound_slack = kSlack[(seed / 4) % 3];
  return p;
}

}  // namespace bacp::testing
