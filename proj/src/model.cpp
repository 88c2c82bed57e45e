#include "bacp/model.hpp"

#include <string>

namespace bacp {

using fd::LinearConstraint;
using fd::Relation;
using fd::Term;

std::size_t linear_index(std::size_t course_number, Period period,
                         MatrixShape shape, MatrixOrder order) {
  if (course_number < 1 || course_number > shape.courses || period < 1 ||
      period > shape.periods) {
    throw IndexOutOfRange("linear_index: (" + std::to_string(course_number) +
                          ", " + std::to_string(period) +
                          ") outside the matrix");
  }
  const auto j = static_cast<std::size_t>(period);
  const auto n = static_cast<std::size_t>(shape.periods);
  return order == MatrixOrder::kByPeriod ? (j - 1) * shape.courses + course_number
                                         : (course_number - 1) * n + j;
}

Model::Model(CurriculumInstance inst, ModelOptions options)
    : instance_(std::move(inst)), options_(options) {}

Model Model::build(const CurriculumInstance& inst, ModelOptions options) {
  Model model(inst, options);
  fd::Store& s = model.store_;
  const std::size_t m = inst.num_courses();
  const int n = inst.periods;

  model.x_.reserve(m * static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < m; ++i) {
    for (int j = 1; j <= n; ++j) model.x_.push_back(s.new_var(0, 1));
  }
  for (int j = 1; j <= n; ++j) model.loads_.push_back(s.new_var(0, inst.load_max));
  model.c_max_ = s.new_var(inst.load_min, inst.load_max);

  for (int j = 1; j <= n; ++j) {
    LinearConstraint load{{}, Relation::kEq, 0};
    LinearConstraint count_max{{}, Relation::kLe, inst.courses_max};
    for (std::size_t i = 0; i < m; ++i) {
      load.terms.push_back({inst.courses[i].credits, model.x(i, j)});
      count_max.terms.push_back({1, model.x(i, j)});
    }
    load.terms.push_back({-1, model.load(j)});
    LinearConstraint count_min{count_max.terms, Relation::kGe, inst.courses_min};
    s.post(std::move(load));
    s.post({{{1, model.load(j)}, {-1, model.c_max_}}, Relation::kLe, 0});
    s.post(std::move(count_max));
    if (!options.paper_faithful) {
      s.post(std::move(count_min));
      s.post({{{1, model.load(j)}}, Relation::kGe, inst.load_min});
    }
  }
  if (options.implied_total_load) {
    LinearConstraint total{{}, Relation::kEq, inst.total_credits()};
    for (int j = 1; j <= n; ++j) total.terms.push_back({1, model.load(j)});
    s.post(std::move(total));
  }
  if (options.average_load_bound) {
    s.post({{{n, model.c_max_}}, Relation::kGe, inst.total_credits()});
  }
  for (std::size_t i = 0; i < m; ++i) {
    LinearConstraint once{{}, Relation::kEq, 1};
    for (int j = 1; j <= n; ++j) once.terms.push_back({1, model.x(i, j)});
    s.post(std::move(once));
  }
  for (const auto& p : inst.prerequisites) {
    s.post({{{1, model.x(p.course, 1)}}, Relation::kEq, 0});
    for (int j = 2; j <= n; ++j) {
      LinearConstraint before{{}, Relation::kGe, 0};
      for (int r = 1; r < j; ++r) {
        before.terms.push_back({1, model.x(p.requires_course, r)});
      }
      before.terms.push_back({-1, model.x(p.course, j)});
      s.post(std::move(before));
    }
  }

  const MatrixShape shape = model.shape();
  for (MatrixOrder order : {MatrixOrder::kByPeriod, MatrixOrder::kByCourse}) {
    auto& seq = order == MatrixOrder::kByPeriod ? model.by_period_ : model.by_course_;
    seq.resize(model.x_.size());
    for (std::size_t i = 0; i < m; ++i) {
      for (int j = 1; j <= n; ++j) {
        seq[linear_index(i + 1, j, shape, order) - 1] = model.x(i, j);
      }
    }
  }

  if (auto outcome = s.propagate(); !outcome.ok()) {
    throw RootConflict("root propagation failed at constraint " +
                       std::to_string(*outcome.conflict));
  }
  return model;
}

fd::VarId Model::x(std::size_t course, Period period) const {
  if (course >= instance_.num_courses() || period < 1 ||
      period > instance_.periods) {
    throw IndexOutOfRange("x(" + std::to_string(course) + ", " +
                          std::to_string(period) + ")");
  }
  return x_[course * static_cast<std::size_t>(instance_.periods) +
            static_cast<std::size_t>(period - 1)];
}

fd::VarId Model::load(Period period) const {
  if (period < 1 || period > instance_.periods) {
    throw IndexOutOfRange("load(" + std::to_string(period) + ")");
  }
  return loads_[static_cast<std::size_t>(period - 1)];
}

const std::vector<fd::VarId>& Model::branching_sequence(MatrixOrder order) const {
  return order == MatrixOrder::kByPeriod ? by_period_ : by_course_;
}

bool Model::all_assigned() const {
  for (fd::VarId v : x_) {
    if (!store_.fixed(v)) return false;
  }
  return true;
}

Solution Model::extract_solution() const {
  const std::size_t m = instance_.num_courses();
  Assignment period_of(m, 0);
  for (std::size_t i = 0; i < m; ++i) {
    for (int j = 1; j <= instance_.periods; ++j) {
      const fd::VarId v = x(i, j);
      if (!store_.fixed(v)) {
        throw NotFullyAssigned("course " + instance_.courses[i].id +
                               " has an unfixed period variable");
      }
      if (store_.lb(v) == 1) period_of[i] = j;
    }
    if (period_of[i] == 0) {
      throw NotFullyAssigned("course " + instance_.courses[i].id +
                             " has no period");
    }
  }
  return make_solution(instance_, std::move(period_of));
}

}  // namespace bacp
