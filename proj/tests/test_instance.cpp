#include <algorithm>
#include <numeric>
#include <sstream>

#include "bacp/instance.hpp"
#include "bacp/oracle.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace bacp;
using bacp::testing::fixture;

namespace {

const char* kT1 =
    "periods 2\nload_min 2\nload_max 5\ncourses_min 1\ncourses_max 1\n"
    "course a 3\ncourse b 2\nprereq b a\n";

ParseErrorKind parse_error_kind(const std::string& text) {
  try {
    parse_instance_text(text);
  } catch (const ParseError& e) {
    return e.kind();
  }
  FAIL("expected a parse error");
  return ParseErrorKind::kSyntax;
}

bool has(const std::vector<Violation>& vs, ViolationKind kind, Period period = 0) {
  return std::any_of(vs.begin(), vs.end(), [&](const Violation& v) {
    return v.kind == kind && (period == 0 || v.period == period);
  });
}

CurriculumInstance tiny(std::size_t m, int n, Credits credits) {
  CurriculumInstance inst;
  inst.periods = n;
  for (std::size_t i = 0; i < m; ++i) {
    inst.courses.push_back({"k" + std::to_string(i), credits});
  }
  inst.load_min = 0;
  inst.load_max = 100;
  inst.courses_min = 0;
  inst.courses_max = static_cast<int>(m);
  return inst;
}

}  // namespace

TEST_CASE("parse T1") {
  const auto inst = parse_instance_text(kT1);
  CHECK(inst.num_courses() == 2);
  CHECK(inst.periods == 2);
  CHECK(inst.load_min == 2);
  CHECK(inst.load_max == 5);
  CHECK(inst.courses_min == 1);
  CHECK(inst.courses_max == 1);
  CHECK(inst.courses[0] == Course{"a", 3});
  CHECK(inst.courses[1] == Course{"b", 2});
  REQUIRE(inst.prerequisites.size() == 1);
  CHECK(inst.prerequisites[0] == Prerequisite{1, 0});
  CHECK(fixture("t1.txt") == inst);
}

TEST_CASE("directives may come in any order and comments are ignored") {
  const auto inst = parse_instance_text(
      "# header\n\ncourses_max 1\nload_max 5 # trailing\nperiods 2\n"
      "courses_min 1\nload_min 2\n  course a 3\ncourse b 2\nprereq b a\n");
  CHECK(inst == parse_instance_text(kT1));
}

TEST_CASE("parse errors") {
  SUBCASE("unknown course in prerequisite") {
    try {
      parse_instance_text(std::string(kT1) + "prereq b z\n");
      FAIL("no error");
    } catch (const ParseError& e) {
      CHECK(e.kind() == ParseErrorKind::kUnknownCourse);
      CHECK(std::string(e.what()).find("z") != std::string::npos);
      CHECK(e.line() == 9);
    }
  }
  SUBCASE("two-cycle") {
    CHECK(parse_error_kind(std::string(kT1) + "prereq a b\n") ==
          ParseErrorKind::kCyclicPrerequisites);
  }
  SUBCASE("longer cycle lists its members") {
    try {
      parse_instance_text(std::string(kT1) + "course c 1\nprereq c b\nprereq a c\n");
      FAIL("no error");
    } catch (const ParseError& e) {
      CHECK(e.kind() == ParseErrorKind::kCyclicPrerequisites);
      const std::string msg = e.what();
      for (const char* id : {"a", "b", "c"}) CHECK(msg.find(id) != std::string::npos);
    }
  }
  SUBCASE("self prerequisite") {
    CHECK(parse_error_kind(std::string(kT1) + "prereq a a\n") ==
          ParseErrorKind::kCyclicPrerequisites);
  }
  SUBCASE("duplicate course") {
    CHECK(parse_error_kind(std::string(kT1) + "course a 4\n") ==
          ParseErrorKind::kDuplicateCourse);
  }
  SUBCASE("missing directive") {
    CHECK(parse_error_kind("periods 2\nload_min 2\nload_max 5\ncourses_min 1\n"
                           "course a 3\n") == ParseErrorKind::kMissingDirective);
    CHECK(parse_error_kind("periods 2\n") == ParseErrorKind::kMissingDirective);
  }
  SUBCASE("non-positive credits") {
    CHECK(parse_error_kind(std::string(kT1) + "course z 0\n") ==
          ParseErrorKind::kNonPositiveCredits);
    CHECK(parse_error_kind(std::string(kT1) + "course z -2\n") ==
          ParseErrorKind::kNonPositiveCredits);
  }
  SUBCASE("syntax") {
    CHECK(parse_error_kind(std::string(kT1) + "course bad-id 3\n") == ParseErrorKind::kSyntax);
    CHECK(parse_error_kind(std::string(kT1) + "course z\n") == ParseErrorKind::kSyntax);
    CHECK(parse_error_kind(std::string(kT1) + "course z 3x\n") == ParseErrorKind::kSyntax);
    CHECK(parse_error_kind(std::string(kT1) + "lecture z 3\n") == ParseErrorKind::kSyntax);
    CHECK(parse_error_kind(std::string(kT1) + "periods 3\n") == ParseErrorKind::kSyntax);
  }
  SUBCASE("invalid values") {
    CHECK(parse_error_kind("periods 0\nload_min 0\nload_max 5\ncourses_min 0\n"
                           "courses_max 1\ncourse a 1\n") == ParseErrorKind::kInvalidValue);
    CHECK(parse_error_kind("periods 2\nload_min 6\nload_max 5\ncourses_min 0\n"
                           "courses_max 1\ncourse a 1\n") == ParseErrorKind::kInvalidValue);
    CHECK(parse_error_kind("periods 2\nload_min 0\nload_max 5\ncourses_min 2\n"
                           "courses_max 1\ncourse a 1\n") == ParseErrorKind::kInvalidValue);
  }
}

TEST_CASE("duplicate prerequisite lines collapse") {
  const auto inst = parse_instance_text(std::string(kT1) + "prereq b a\n");
  CHECK(inst.prerequisites.size() == 1);
}

TEST_CASE("serialize then parse is the identity") {
  CHECK(parse_instance_text(serialize_instance(fixture("t1.txt"))) == fixture("t1.txt"));
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    GenParams p = bacp::testing::small_params(seed);
    p.courses = 1 + seed % 15;
    p.prereq_density = 0.3;
    const auto inst = gen_instance(p);
    CHECK(parse_instance_text(serialize_instance(inst)) == inst);
  }
}

TEST_CASE("validate_instance") {
  CHECK(validate_instance(fixture("t1.txt")).empty());
  CHECK(validate_instance(fixture("t2.txt")).empty());

  SUBCASE("too many courses for the count bound") {
    auto inst = tiny(3, 2, 1);
    inst.courses_max = 1;
    const auto defects = validate_instance(inst);
    REQUIRE(defects.size() == 1);
    CHECK(defects[0].rfind("m > ε·n", 0) == 0);
  }
  SUBCASE("course heavier than the load cap") {
    auto inst = tiny(2, 2, 5);
    inst.load_max = 4;
    const auto defects = validate_instance(inst);
    CHECK(std::any_of(defects.begin(), defects.end(), [](const std::string& d) {
      return d.rfind("max credit exceeds γ", 0) == 0;
    }));
  }
  SUBCASE("each counting check") {
    auto inst = tiny(2, 2, 1);
    inst.courses_min = 2;
    CHECK(validate_instance(inst).at(0).rfind("m < δ·n", 0) == 0);
    inst = tiny(2, 2, 1);
    inst.load_min = 2;
    CHECK(validate_instance(inst).at(0).rfind("total credits < β·n", 0) == 0);
    inst = tiny(4, 2, 1);
    inst.load_max = 1;
    CHECK(validate_instance(inst).at(0).rfind("total credits > γ·n", 0) == 0);
  }
}

TEST_CASE("compute_loads and objective") {
  const auto t1 = fixture("t1.txt");
  CHECK(compute_loads(t1, {1, 2}) == std::vector<Credits>{3, 2});
  CHECK(compute_loads(t1, {1, 1}) == std::vector<Credits>{5, 0});
  CHECK(objective(t1, {1, 2}) == 3);

  const auto t2 = fixture("t2.txt");
  const Assignment pairs{1, 2, 3, 3, 2, 1};  // {1,6} {2,5} {3,4}
  CHECK(compute_loads(t2, pairs) == std::vector<Credits>{7, 7, 7});
  CHECK(objective(t2, pairs) == 7);

  CHECK_THROWS_AS(compute_loads(t1, {1, 3}), OutOfRangePeriod);
  CHECK_THROWS_AS(compute_loads(t1, {0, 1}), OutOfRangePeriod);
  CHECK_THROWS_AS(compute_loads(t1, {1}), std::invalid_argument);
}

TEST_CASE("credit conservation and objective equals max load") {
  const auto t2 = fixture("t2.txt");
  bacp::testing::for_each_assignment(t2, [&](const Assignment& a) {
    const auto loads = compute_loads(t2, a);
    REQUIRE(std::accumulate(loads.begin(), loads.end(), Credits{0}) == t2.total_credits());
    REQUIRE(objective(t2, a) == *std::max_element(loads.begin(), loads.end()));
  });
}

TEST_CASE("check_solution") {
  const auto t1 = fixture("t1.txt");
  CHECK(check_solution(t1, {1, 2}).empty());

  const auto inverted = check_solution(t1, {2, 1});
  REQUIRE(has(inverted, ViolationKind::kPrerequisite));
  const auto& pv = *std::find_if(inverted.begin(), inverted.end(), [](const Violation& v) {
    return v.kind == ViolationKind::kPrerequisite;
  });
  CHECK(pv.course == 1);
  CHECK(pv.requires_course == 0);
  CHECK(to_string(pv.kind) == "PrerequisiteViolation");

  const auto crowded = check_solution(t1, {1, 1});
  CHECK(has(crowded, ViolationKind::kCoursesAboveMax, 1));
  CHECK(has(crowded, ViolationKind::kCoursesBelowMin, 2));
  CHECK(has(crowded, ViolationKind::kLoadBelowMin, 2));
  CHECK(has(crowded, ViolationKind::kPrerequisite));

  SUBCASE("load above max") {
    auto inst = tiny(2, 2, 3);
    inst.load_max = 5;
    CHECK(has(check_solution(inst, {1, 1}), ViolationKind::kLoadAboveMax, 1));
    CHECK(check_solution(inst, {1, 2}).empty());
  }
  SUBCASE("unassigned and out-of-range periods") {
    const auto vs = check_solution(t1, {0, 3});
    CHECK(std::count_if(vs.begin(), vs.end(), [](const Violation& v) {
            return v.kind == ViolationKind::kUnassigned;
          }) == 2);
    CHECK(has(check_solution(t1, {1}), ViolationKind::kUnassigned));
  }
  SUBCASE("every violation carries a description") {
    for (const auto& v : check_solution(t1, {1, 1})) CHECK_FALSE(v.detail.empty());
  }
}

TEST_CASE("solution file format") {
  const auto t1 = fixture("t1.txt");
  CHECK(parse_solution_text(t1, "b 2\n# comment\na 1\n") == Assignment{1, 2});
  CHECK(parse_solution_text(t1, serialize_solution(t1, {2, 1})) == Assignment{2, 1});

  auto kind = [&](const std::string& text) {
    try {
      parse_solution_text(t1, text);
    } catch (const ParseError& e) {
      return e.kind();
    }
    FAIL("expected an error");
    return ParseErrorKind::kSyntax;
  };
  CHECK(kind("a 1\n") == ParseErrorKind::kMissingDirective);
  CHECK(kind("a 1\nb 2\nz 1\n") == ParseErrorKind::kUnknownCourse);
  CHECK(kind("a 1\nb 2\na 2\n") == ParseErrorKind::kDuplicateCourse);
  CHECK(kind("a 1\nb 3\n") == ParseErrorKind::kInvalidValue);
  CHECK(kind("a\nb 2\n") == ParseErrorKind::kSyntax);
}

TEST_CASE("make_solution fills loads and objective") {
  const auto s = make_solution(fixture("t1.txt"), {1, 2});
  CHECK(s.loads == std::vector<Credits>{3, 2});
  CHECK(s.objective == 3);
}

TEST_CASE("transcribed fixtures load and pass the counting checks") {
  for (const char* name : {"bacp8.txt", "bacp10.txt", "bacp12.txt"}) {
    CAPTURE(name);
    const auto inst = load_instance(bacp::testing::data_file(name));
    CHECK(validate_instance(inst).empty());
  }
  CHECK(load_instance(bacp::testing::data_file("bacp8.txt")).num_courses() == 46);
  CHECK(load_instance(bacp::testing::data_file("bacp10.txt")).num_courses() == 42);
  CHECK_THROWS(load_instance(bacp::testing::data_file("missing.txt")));
}
