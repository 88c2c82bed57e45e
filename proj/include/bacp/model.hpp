#pragma once

#include <stdexcept>
#include <vector>

#include "bacp/fd_store.hpp"
#include "bacp/instance.hpp"

namespace bacp {

/// How the course x period matrix is flattened into the branching sequence.
enum class MatrixOrder {
  kByPeriod,  // all courses of period 1, then period 2, ...
  kByCourse,  // all periods of course 1, then course 2, ...
};

struct MatrixShape {
  std::size_t courses = 0;
  int periods = 0;
};

class IndexOutOfRange : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// 1-based position of entry (course_number, period) in the flattened matrix.
/// Both arguments are 1-based. kByPeriod gives (period-1)*m + course_number,
/// kByCourse gives (course_number-1)*n + period.
std::size_t linear_index(std::size_t course_number, Period period,
                         MatrixShape shape, MatrixOrder order);

struct ModelOptions {
  /// Drop the per-period minimum load and minimum course count
  /// propagators, leaving only the bounds on C for the load window and the
  /// maximum course count.
  bool paper_faithful = false;
  /// Post periods * C >= total credits. The max load is never below the
  /// average load, so this only raises the lower bound of C; it prunes no
  /// assignment variable but lets root propagation refute bounds below the
  /// average.
  bool average_load_bound = true;
  /// Post sum_j c_j = total credits. Implied by the load and assign-once
  /// constraints; it never changes the solution set but lets bounds
  /// reasoning share the total load across periods during search.
  bool implied_total_load = false;
};

class RootConflict : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotFullyAssigned : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/**
 * The constraint network over the 0/1 course-period matrix.
 *
 * Variables: x(i, j) in [0, 1] for every course i and period j, the period
 * loads c_j in [0, load_max] and the bound C in [load_min, load_max].
 * Constraints, for every period j and course i:
 *
 *   sum_i credits_i * x(i, j) - c_j = 0
 *   c_j - C <= 0
 *   sum_j x(i, j) = 1
 *   sum_i x(i, j) <= courses_max
 *   sum_i x(i, j) >= courses_min          (omitted when paper_faithful)
 *   c_j >= load_min                      (omitted when paper_faithful)
 *
 * and for each prerequisite (b requires a): x(b, 1) = 0 and, for j >= 2,
 * sum_{r<j} x(a, r) - x(b, j) >= 0. The implied constraints selected in
 * ModelOptions are posted on top.
 */
class Model {
 public:
  /// Builds the network and runs root propagation. Throws RootConflict when
  /// the root store fails.
  static Model build(const CurriculumInstance& inst, ModelOptions options = {});

  const CurriculumInstance& instance() const { return instance_; }
  const ModelOptions& options() const { return options_; }
  MatrixShape shape() const {
    return {instance_.num_courses(), instance_.periods};
  }

  fd::Store& store() { return store_; }
  const fd::Store& store() const { return store_; }

  /// course is a 0-based index, period is 1-based.
  fd::VarId x(std::size_t course, Period period) const;
  fd::VarId load(Period period) const;
  fd::VarId c_max() const { return c_max_; }

  /// Assignment variables in branching order for the given order.
  const std::vector<fd::VarId>& branching_sequence(MatrixOrder order) const;

  bool all_assigned() const;

  /// Reads the assignment off a store whose x variables are all fixed.
  /// Throws NotFullyAssigned otherwise.
  Solution extract_solution() const;

 private:
  Model(CurriculumInstance inst, ModelOptions options);

  CurriculumInstance instance_;
  ModelOptions options_;
  fd::Store store_;
  std::vector<fd::VarId> x_;  // row-major: course * periods + (period - 1)
  std::vector<fd::VarId> loads_;
  fd::VarId c_max_;
  std::vector<fd::VarId> by_period_;
  std::vector<fd::VarId> by_course_;
};

}  // namespace bacp
