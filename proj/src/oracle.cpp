#include "bacp/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace bacp {

namespace {

class Stream {
 public:
  explicit Stream(std::uint64_t seed) : engine_(seed) {}

  /// Uniform integer in [lo, hi].
  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<std::int64_t>(engine_());
    const std::uint64_t limit =
        std::numeric_limits<std::uint64_t>::max() -
        std::numeric_limits<std::uint64_t>::max() % span;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return lo + static_cast<std::int64_t>(x % span);
  }

  /// Uniform double in [0, 1).
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return (a + b - 1) / b; }

}  // namespace

std::uint64_t candidate_count(const CurriculumInstance& inst) {
  std::uint64_t count = 1;
  const auto n = static_cast<std::uint64_t>(inst.periods);
  for (std::size_t i = 0; i < inst.num_courses(); ++i) {
    if (count > std::numeric_limits<std::uint64_t>::max() / n) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    count *= n;
  }
  return count;
}

OracleResult brute_force(const CurriculumInstance& inst) {
  const std::uint64_t total = candidate_count(inst);
  if (total > kBruteForceLimit) {
    throw TooLarge(std::to_string(inst.periods) + "^" +
                   std::to_string(inst.num_courses()) +
                   " candidate assignments exceed the enumeration limit of " +
                   std::to_string(kBruteForceLimit));
  }
  OracleResult result;
  Assignment a(inst.num_courses(), 1);
  for (std::uint64_t k = 0; k < total; ++k) {
    if (check_solution(inst, a).empty()) {
      ++result.feasible_count;
      const Credits value = objective(inst, a);
      if (!result.witness || value < result.objective) {
        result.objective = value;
        result.witness = make_solution(inst, a);
      }
    }
    // mixed-radix increment, course 0 fastest
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] < inst.periods) {
        ++a[i];
        break;
      }
      a[i] = 1;
    }
  }
  if (result.witness) result.status = OracleResult::Status::kOptimal;
  return result;
}

CurriculumInstance gen_instance(const GenParams& p) {
  if (p.courses < 1 || p.periods < 1) {
    throw std::invalid_argument("gen_instance: need at least one course and one period");
  }
  if (p.credit_min < 1 || p.credit_max < p.credit_min) {
    throw std::invalid_argument("gen_instance: credit range must satisfy 1 <= lo <= hi");
  }
  if (!(p.prereq_density >= 0.0 && p.prereq_density <= 1.0) ||
      !(p.bound_slack >= 0.0 && p.bound_slack <= 1.0)) {
    throw std::invalid_argument("gen_instance: density and slack must lie in [0, 1]");
  }

  Stream rng(p.seed);
  CurriculumInstance inst;
  inst.periods = p.periods;
  for (std::size_t i = 0; i < p.courses; ++i) {
    inst.courses.push_back({"c" + std::to_string(i + 1),
                            rng.uniform(p.credit_min, p.credit_max)});
  }
  for (std::size_t b = 1; b < p.courses; ++b) {
    for (std::size_t a = 0; a < b; ++a) {
      if (rng.unit() < p.prereq_density) inst.prerequisites.push_back({b, a});
    }
  }
  std::sort(inst.prerequisites.begin(), inst.prerequisites.end());

  const std::int64_t n = p.periods;
  const auto m = static_cast<std::int64_t>(p.courses);
  const Credits total = inst.total_credits();
  Credits max_credit = 0;
  for (const auto& c : inst.courses) max_credit = std::max(max_credit, c.credits);

  const double slack = p.bound_slack;
  auto scaled = [](double fraction, std::int64_t value) {
    return static_cast<std::int64_t>(std::floor(fraction * static_cast<double>(value)));
  };
  const Credits load_max_floor = std::max(max_credit, ceil_div(total, n));
  inst.load_max = load_max_floor + rng.uniform(0, scaled(slack, load_max_floor));
  inst.load_min = rng.uniform(0, scaled(1.0 - slack, total / n));
  const std::int64_t courses_max_floor = std::max<std::int64_t>(1, ceil_div(m, n));
  inst.courses_max = static_cast<int>(courses_max_floor +
                                      rng.uniform(0, scaled(slack, m)));
  inst.courses_min = static_cast<int>(rng.uniform(0, scaled(1.0 - slack, m / n)));
  return inst;
}

}  // namespace bacp
