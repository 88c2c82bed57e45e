#include "bacp/fd_store.hpp"

#include <algorithm>
#include <string>

namespace bacp::fd {

namespace {

Value floor_div(Value a, Value b) {
  Value q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

Value ceil_div(Value a, Value b) {
  Value q = a / b;
  if ((a % b != 0) && ((a < 0) == (b < 0))) ++q;
  return q;
}

}  // namespace

VarId Store::new_var(Value lb, Value ub) {
  if (lb > ub) {
    throw InvalidBounds("new_var: lb " + std::to_string(lb) + " > ub " +
                        std::to_string(ub));
  }
  domains_.push_back({lb, ub});
  watchers_.emplace_back();
  return VarId{static_cast<std::uint32_t>(domains_.size() - 1)};
}

void Store::check_var(VarId v) const {
  if (v.index >= domains_.size()) {
    throw UnknownVariable("unknown variable " + std::to_string(v.index));
  }
}

const Domain& Store::domain(VarId v) const {
  check_var(v);
  return domains_[v.index];
}

const LinearConstraint& Store::constraint(ConstraintId c) const {
  return constraints_.at(c);
}

ConstraintId Store::post(LinearConstraint c) {
  for (std::size_t k = 0; k < c.terms.size(); ++k) {
    check_var(c.terms[k].var);
    if (c.terms[k].coeff == 0) {
      throw std::invalid_argument("post: zero coefficient");
    }
    for (std::size_t l = 0; l < k; ++l) {
      if (c.terms[l].var == c.terms[k].var) {
        throw std::invalid_argument("post: variable appears twice");
      }
    }
  }
  const auto id = static_cast<ConstraintId>(constraints_.size());
  for (const auto& t : c.terms) watchers_[t.var.index].push_back(id);
  constraints_.push_back(std::move(c));
  queued_.push_back(0);
  enqueue(id);
  return id;
}

void Store::enqueue(ConstraintId c) {
  if (!queued_[c]) {
    queued_[c] = 1;
    queue_.push_back(c);
  }
}

bool Store::update(VarId v, Value lb, Value ub, ConstraintId source) {
  Domain& d = domains_[v.index];
  if (lb <= d.lb && ub >= d.ub) return true;
  const Value new_lb = std::max(lb, d.lb);
  const Value new_ub = std::min(ub, d.ub);
  if (new_lb > new_ub) return false;
  if (!marks_.empty()) trail_.push_back({v, d});
  d.lb = new_lb;
  d.ub = new_ub;
  ++bound_changes_;
  for (ConstraintId c : watchers_[v.index]) {
    if (c != source) enqueue(c);
  }
  return true;
}

bool Store::set_lb(VarId v, Value value) {
  check_var(v);
  return update(v, value, domains_[v.index].ub, ConstraintId(-1));
}

bool Store::set_ub(VarId v, Value value) {
  check_var(v);
  return update(v, domains_[v.index].lb, value, ConstraintId(-1));
}

// Enforces sum(sign * coeff * var) <= sign * rhs.
bool Store::propagate_le(ConstraintId id, const std::vector<Term>& terms,
                         Value rhs, Value sign, bool& changed) {
  Value min_sum = 0;
  for (const auto& t : terms) {
    const Value w = sign * t.coeff;
    const Domain& d = domains_[t.var.index];
    min_sum += w > 0 ? w * d.lb : w * d.ub;
  }
  const Value limit = sign * rhs;
  if (min_sum > limit) return false;
  for (const auto& t : terms) {
    const Value w = sign * t.coeff;
    const Domain d = domains_[t.var.index];
    const Value own = w > 0 ? w * d.lb : w * d.ub;
    const Value allowed = limit - (min_sum - own);
    if (w > 0) {
      const Value new_ub = floor_div(allowed, w);
      if (new_ub < d.ub) {
        if (!update(t.var, d.lb, new_ub, id)) return false;
        changed = true;
      }
    } else {
      const Value new_lb = ceil_div(allowed, w);
      if (new_lb > d.lb) {
        if (!update(t.var, new_lb, d.ub, id)) return false;
        changed = true;
      }
    }
  }
  return true;
}

bool Store::run(ConstraintId id) {
  const LinearConstraint& c = constraints_[id];
  bool changed = true;
  while (changed) {
    changed = false;
    if (c.relation != Relation::kGe &&
        !propagate_le(id, c.terms, c.rhs, 1, changed)) {
      return false;
    }
    if (c.relation != Relation::kLe &&
        !propagate_le(id, c.terms, c.rhs, -1, changed)) {
      return false;
    }
    // A single LE pass is already at its own fixpoint.
    if (c.relation != Relation::kEq) break;
  }
  return true;
}

PropagationOutcome Store::propagate() {
  while (!queue_.empty()) {
    const ConstraintId c = queue_.front();
    queue_.pop_front();
    queued_[c] = 0;
    if (!run(c)) return PropagationOutcome::failed(c);
  }
  return PropagationOutcome::fixpoint();
}

PropagationOutcome Store::assign(VarId v, Value value) {
  check_var(v);
  const Domain& d = domains_[v.index];
  if (value < d.lb || value > d.ub) {
    throw ValueOutsideDomain("assign: value " + std::to_string(value) +
                             " outside [" + std::to_string(d.lb) + ", " +
                             std::to_string(d.ub) + "]");
  }
  update(v, value, value, ConstraintId(-1));
  return propagate();
}

Mark Store::save() {
  const std::uint64_t serial = next_serial_++;
  marks_.push_back({trail_.size(), serial, queue_.empty(), constraints_.size()});
  return Mark{marks_.size() - 1, serial};
}

void Store::restore(Mark mark) {
  if (mark.level >= marks_.size() || marks_[mark.level].serial != mark.serial) {
    throw InvalidMark("restore: mark is not live");
  }
  const MarkEntry entry = marks_[mark.level];
  while (trail_.size() > entry.trail_size) {
    const TrailEntry& e = trail_.back();
    domains_[e.var.index] = e.old;
    trail_.pop_back();
  }
  marks_.resize(mark.level);
  if (entry.queue_was_empty) {
    // Back at the saved fixpoint; only constraints posted since then can
    // still prune anything.
    for (ConstraintId c : queue_) queued_[c] = 0;
    queue_.clear();
    for (std::size_t c = entry.num_constraints; c < constraints_.size(); ++c) {
      enqueue(static_cast<ConstraintId>(c));
    }
  }
}

bool Store::satisfied_when_fixed(ConstraintId id) const {
  const LinearConstraint& c = constraints_.at(id);
  Value sum = 0;
  for (const auto& t : c.terms) {
    const Domain& d = domains_[t.var.index];
    if (!d.fixed()) return false;
    sum += t.coeff * d.lb;
  }
  switch (c.relation) {
    case Relation::kLe:
      return sum <= c.rhs;
    case Relation::kEq:
      return sum == c.rhs;
    case Relation::kGe:
      return sum >= c.rhs;
  }
  return false;
}

}  // namespace bacp::fd
