#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>

#include "bacp/instance.hpp"

namespace bacp {

struct OracleResult {
  enum class Status { kOptimal, kInfeasible };

  Status status = Status::kInfeasible;
  Credits objective = 0;
  /// First optimal assignment in enumeration order (course 1 varies fastest).
  std::optional<Solution> witness;
  std::uint64_t feasible_count = 0;
};

class TooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Largest n^m that brute_force accepts.
inline constexpr std::uint64_t kBruteForceLimit = 10'000'000;

/// n^m, saturating at UINT64_MAX.
std::uint64_t candidate_count(const CurriculumInstance& inst);

/// Enumerates every total assignment and keeps those check_solution accepts.
OracleResult brute_force(const CurriculumInstance& inst);

struct GenParams {
  std::uint64_t seed = 1;
  std::size_t courses = 6;
  int periods = 3;
  Credits credit_min = 1;
  Credits credit_max = 5;
  /// Probability of each (later, earlier) prerequisite pair.
  double prereq_density = 0.2;
  /// 0 draws the load and course-count bounds as tight as the counting
  /// conditions allow, 1 leaves them loose.
  double bound_slack = 0.5;
};

/**
 * Deterministic random instance.
 *
 * The stream is std::mt19937_64 seeded with `seed`; integers are drawn by
 * rejection sampling on raw 64-bit outputs and probabilities from the top 53
 * bits, so the output is identical on every platform. Prerequisite edges
 * only point from a later course to an earlier one, so declaration order is
 * a topological order. The bounds always pass validate_instance; the
 * instance may still be infeasible.
 */
CurriculumInstance gen_instance(const GenParams& params);

}  // namespace bacp
