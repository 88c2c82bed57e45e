#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <stdexcept>
#include <vector>

namespace bacp::fd {

using Value = std::int64_t;

/// Dense handle into one Store. Handles are never reused.
struct VarId {
  std::uint32_t index = 0;

  friend bool operator==(VarId, VarId) = default;
};

using ConstraintId = std::uint32_t;

struct Domain {
  Value lb = 0;
  Value ub = 0;

  bool fixed() const { return lb == ub; }
  friend bool operator==(const Domain&, const Domain&) = default;
};

enum class Relation { kLe, kEq, kGe };

struct Term {
  Value coeff = 0;
  VarId var;
};

/// sum(coeff * var) <relation> rhs
struct LinearConstraint {
  std::vector<Term> terms;
  Relation relation = Relation::kLe;
  Value rhs = 0;
};

/// Either a fixpoint was reached, or the named constraint failed.
struct PropagationOutcome {
  std::optional<ConstraintId> conflict;

  bool ok() const { return !conflict.has_value(); }
  static PropagationOutcome fixpoint() { return {}; }
  static PropagationOutcome failed(ConstraintId c) { return {c}; }
};

/// Token returned by Store::save.
struct Mark {
  std::size_t level = 0;
  std::uint64_t serial = 0;
};

class InvalidBounds : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};
class UnknownVariable : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};
class ValueOutsideDomain : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};
class InvalidMark : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/**
 * Interval-domain store with linear propagators.
 *
 * Every posted constraint is kept bounds consistent: for a term w*v in
 * sum(w*v) <= r the bound of v is tightened so that the term together with
 * the minimum of the remaining terms cannot exceed r. EQ is LE and GE.
 * Propagation is driven by a FIFO queue of constraint ids; a constraint is
 * queued at most once while pending and is woken when any of its variables
 * changes a bound.
 *
 * Domain changes are trailed; save() and restore() give exact chronological
 * backtracking. A store is single-owner and not thread safe.
 */
class Store {
 public:
  VarId new_var(Value lb, Value ub);
  ConstraintId post(LinearConstraint c);

  std::size_t num_vars() const { return domains_.size(); }
  std::size_t num_constraints() const { return constraints_.size(); }

  const Domain& domain(VarId v) const;
  Value lb(VarId v) const { return domain(v).lb; }
  Value ub(VarId v) const { return domain(v).ub; }
  bool fixed(VarId v) const { return domain(v).fixed(); }
  const LinearConstraint& constraint(ConstraintId c) const;

  /// Fixes v to value and propagates. Throws ValueOutsideDomain when value is
  /// not within the current bounds.
  PropagationOutcome assign(VarId v, Value value);

  /// Tightens bounds without propagating; returns false if the domain would
  /// become empty (the store is left unchanged in that case).
  bool set_lb(VarId v, Value value);
  bool set_ub(VarId v, Value value);

  /// Runs all pending and newly woken constraints to a fixpoint. The first
  /// call after post() runs every constraint not yet propagated.
  PropagationOutcome propagate();

  Mark save();
  void restore(Mark mark);
  std::size_t depth() const { return marks_.size(); }

  /// Whether c holds for the current bounds when every variable is fixed.
  bool satisfied_when_fixed(ConstraintId c) const;

  /// Number of bound changes performed since construction.
  std::uint64_t bound_changes() const { return bound_changes_; }

 private:
  struct TrailEntry {
    VarId var;
    Domain old;
  };
  struct MarkEntry {
    std::size_t trail_size;
    std::uint64_t serial;
    bool queue_was_empty;
    std::size_t num_constraints;
  };

  void check_var(VarId v) const;
  bool update(VarId v, Value lb, Value ub, ConstraintId source);
  bool propagate_le(ConstraintId id, const std::vector<Term>& terms, Value rhs,
                    Value sign, bool& changed);
  bool run(ConstraintId id);
  void enqueue(ConstraintId c);

  std::vector<Domain> domains_;
  std::vector<std::vector<ConstraintId>> watchers_;
  std::vector<LinearConstraint> constraints_;
  std::vector<char> queued_;
  std::deque<ConstraintId> queue_;
  std::vector<TrailEntry> trail_;
  std::vector<MarkEntry> marks_;
  std::uint64_t next_serial_ = 1;
  std::uint64_t bound_changes_ = 0;
};

}  // namespace bacp::fd
