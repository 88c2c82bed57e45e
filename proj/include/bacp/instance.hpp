#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace bacp {

/// Period numbers are 1-based throughout.
using Period = int;
using Credits = std::int64_t;

struct Course {
  std::string id;
  Credits credits = 1;

  friend bool operator==(const Course&, const Course&) = default;
};

/// A prerequisite pair: `course` must be taken strictly after `requires_course`.
/// Both are 0-based indices into CurriculumInstance::courses.
struct Prerequisite {
  std::size_t course = 0;
  std::size_t requires_course = 0;

  friend auto operator<=>(const Prerequisite&, const Prerequisite&) = default;
};

/**
 * Problem data for one curriculum.
 *
 * The order of `courses` is the curriculum order; the search heuristics
 * linearize the assignment matrix along it.
 */
struct CurriculumInstance {
  std::vector<Course> courses;
  int periods = 1;
  Credits load_min = 0;
  Credits load_max = 0;
  int courses_min = 0;
  int courses_max = 0;
  std::vector<Prerequisite> prerequisites;  // sorted, no duplicates

  std::size_t num_courses() const { return courses.size(); }
  Credits total_credits() const;
  std::optional<std::size_t> find_course(std::string_view id) const;

  friend bool operator==(const CurriculumInstance&,
                         const CurriculumInstance&) = default;
};

/// Course index (0-based) -> period (1-based).
using Assignment = std::vector<Period>;

struct Solution {
  Assignment period_of;
  std::vector<Credits> loads;  // loads[j-1] is the load of period j
  Credits objective = 0;
};

enum class ViolationKind {
  kUnassigned,
  kPrerequisite,
  kLoadBelowMin,
  kLoadAboveMax,
  kCoursesBelowMin,
  kCoursesAboveMax,
};

struct Violation {
  ViolationKind kind;
  /// Period for the per-period kinds; 0 otherwise.
  Period period = 0;
  /// Course index for kUnassigned, (course, requires_course) for kPrerequisite.
  std::size_t course = 0;
  std::size_t requires_course = 0;
  std::string detail;
};

std::string_view to_string(ViolationKind kind);

enum class ParseErrorKind {
  kSyntax,
  kDuplicateCourse,
  kUnknownCourse,
  kCyclicPrerequisites,
  kMissingDirective,
  kNonPositiveCredits,
  kInvalidValue,
};

class ParseError : public std::runtime_error {
 public:
  ParseError(ParseErrorKind kind, int line, const std::string& what)
      : std::runtime_error(what), kind_(kind), line_(line) {}

  ParseErrorKind kind() const { return kind_; }
  /// 1-based line number, or 0 when the error is not tied to a line.
  int line() const { return line_; }

 private:
  ParseErrorKind kind_;
  int line_;
};

class OutOfRangePeriod : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

CurriculumInstance parse_instance(std::istream& in);
CurriculumInstance parse_instance_text(std::string_view text);
CurriculumInstance load_instance(const std::string& path);

/// Canonical text form; parse_instance(serialize_instance(x)) == x.
std::string serialize_instance(const CurriculumInstance& inst);

/// Solution files: `<course_id> <period>` per line. Throws ParseError when a
/// course is unknown, repeated, or missing, or a period is not a number.
Assignment parse_solution(const CurriculumInstance& inst, std::istream& in);
Assignment parse_solution_text(const CurriculumInstance& inst,
                               std::string_view text);
std::string serialize_solution(const CurriculumInstance& inst,
                               const Assignment& period_of);

/// Necessary counting conditions only; an empty result does not prove
/// feasibility.
std::vector<std::string> validate_instance(const CurriculumInstance& inst);

std::vector<Credits> compute_loads(const CurriculumInstance& inst,
                                   const Assignment& period_of);
Credits objective(const CurriculumInstance& inst, const Assignment& period_of);

/// One entry per violated constraint occurrence. Entries with period 0 or
/// out of range are reported as kUnassigned; other checks skip them.
std::vector<Violation> check_solution(const CurriculumInstance& inst,
                                      const Assignment& period_of);

Solution make_solution(const CurriculumInstance& inst, Assignment period_of);

}  // namespace bacp
