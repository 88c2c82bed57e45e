#include "bacp/instance.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace bacp {

namespace {

std::vector<std::string_view> tokenize(std::string_view line) {
  if (auto hash = line.find('#'); hash != std::string_view::npos) {
    line = line.substr(0, hash);
  }
  std::vector<std::string_view> tokens;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() &&
           (line[pos] == ' ' || line[pos] == '\t' || line[pos] == '\r')) {
      ++pos;
    }
    std::size_t end = pos;
    while (end < line.size() && line[end] != ' ' && line[end] != '\t' &&
           line[end] != '\r') {
      ++end;
    }
    if (end > pos) tokens.push_back(line.substr(pos, end - pos));
    pos = end;
  }
  return tokens;
}

std::optional<std::int64_t> to_integer(std::string_view token) {
  std::int64_t value = 0;
  auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    return std::nullopt;
  }
  return value;
}

bool valid_id(std::string_view id) {
  return !id.empty() && std::all_of(id.begin(), id.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
           (c >= '0' && c <= '9') || c == '_';
  });
}

std::string quote(std::string_view s) { return "'" + std::string(s) + "'"; }

// Returns the ids along one cycle of the prerequisite graph, or empty.
std::vector<std::string> find_cycle(const CurriculumInstance& inst) {
  const std::size_t m = inst.num_courses();
  std::vector<std::vector<std::size_t>> succ(m);
  for (const auto& p : inst.prerequisites) {
    succ[p.requires_course].push_back(p.course);
  }
  enum : char { kWhite, kGrey, kBlack };
  std::vector<char> color(m, kWhite);
  std::vector<std::size_t> parent(m, m);
  for (std::size_t root = 0; root < m; ++root) {
    if (color[root] != kWhite) continue;
    // iterative DFS: (node, next successor slot)
    std::vector<std::pair<std::size_t, std::size_t>> stack{{root, 0}};
    color[root] = kGrey;
    while (!stack.empty()) {
      auto& [node, slot] = stack.back();
      if (slot == succ[node].size()) {
        color[node] = kBlack;
        stack.pop_back();
        continue;
      }
      std::size_t next = succ[node][slot++];
      if (color[next] == kGrey) {
        std::vector<std::string> cycle{inst.courses[next].id};
        for (std::size_t v = node; v != next; v = parent[v]) {
          cycle.push_back(inst.courses[v].id);
        }
        std::reverse(cycle.begin() + 1, cycle.end());
        return cycle;
      }
      if (color[next] == kWhite) {
        color[next] = kGrey;
        parent[next] = node;
        stack.emplace_back(next, 0);
      }
    }
  }
  return {};
}

}  // namespace

Credits CurriculumInstance::total_credits() const {
  return std::accumulate(
      courses.begin(), courses.end(), Credits{0},
      [](Credits acc, const Course& c) { return acc + c.credits; });
}

std::optional<std::size_t> CurriculumInstance::find_course(
    std::string_view id) const {
  for (std::size_t i = 0; i < courses.size(); ++i) {
    if (courses[i].id == id) return i;
  }
  return std::nullopt;
}

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kUnassigned:
      return "Unassigned";
    case ViolationKind::kPrerequisite:
      return "PrerequisiteViolation";
    case ViolationKind::kLoadBelowMin:
      return "LoadBelowMin";
    case ViolationKind::kLoadAboveMax:
      return "LoadAboveMax";
    case ViolationKind::kCoursesBelowMin:
      return "CoursesBelowMin";
    case ViolationKind::kCoursesAboveMax:
      return "CoursesAboveMax";
  }
  return "?";
}

CurriculumInstance parse_instance(std::istream& in) {
  CurriculumInstance inst;
  struct Directive {
    const char* name;
    std::function<void(std::int64_t)> set;
    bool seen = false;
  };
  std::vector<Directive> directives = {
      {"periods", [&](std::int64_t v) { inst.periods = static_cast<int>(v); }},
      {"load_min", [&](std::int64_t v) { inst.load_min = v; }},
      {"load_max", [&](std::int64_t v) { inst.load_max = v; }},
      {"courses_min",
       [&](std::int64_t v) { inst.courses_min = static_cast<int>(v); }},
      {"courses_max",
       [&](std::int64_t v) { inst.courses_max = static_cast<int>(v); }},
  };
  std::unordered_map<std::string, std::size_t> index;
  bool header_checked = false;

  auto check_header = [&](int line_no) {
    if (header_checked) return;
    for (const auto& d : directives) {
      if (!d.seen) {
        throw ParseError(ParseErrorKind::kMissingDirective, line_no,
                         std::string("missing directive '") + d.name + "'");
      }
    }
    if (inst.periods < 1) {
      throw ParseError(ParseErrorKind::kInvalidValue, line_no,
                       "periods must be at least 1");
    }
    if (inst.load_min < 0 || inst.courses_min < 0) {
      throw ParseError(ParseErrorKind::kInvalidValue, line_no,
                       "load_min and courses_min must be non-negative");
    }
    if (inst.load_min > inst.load_max) {
      throw ParseError(ParseErrorKind::kInvalidValue, line_no,
                       "load_min exceeds load_max");
    }
    if (inst.courses_min > inst.courses_max) {
      throw ParseError(ParseErrorKind::kInvalidValue, line_no,
                       "courses_min exceeds courses_max");
    }
    header_checked = true;
  };

  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto tokens = tokenize(raw);
    if (tokens.empty()) continue;
    const std::string_view keyword = tokens[0];

    auto syntax = [&](const std::string& msg) {
      return ParseError(ParseErrorKind::kSyntax, line_no,
                        "line " + std::to_string(line_no) + ": " + msg);
    };

    if (keyword == "course") {
      check_header(line_no);
      if (tokens.size() != 3) throw syntax("expected 'course <id> <credits>'");
      if (!valid_id(tokens[1])) throw syntax("invalid course id " + quote(tokens[1]));
      auto credits = to_integer(tokens[2]);
      if (!credits) throw syntax("credits must be an integer");
      std::string id(tokens[1]);
      if (index.count(id)) {
        throw ParseError(ParseErrorKind::kDuplicateCourse, line_no,
                         "duplicate course " + quote(id));
      }
      if (*credits < 1) {
        throw ParseError(ParseErrorKind::kNonPositiveCredits, line_no,
                         "course " + quote(id) + " has non-positive credits");
      }
      index.emplace(id, inst.courses.size());
      inst.courses.push_back({std::move(id), *credits});
    } else if (keyword == "prereq") {
      if (tokens.size() != 3) throw syntax("expected 'prereq <course> <required>'");
      std::size_t ids[2];
      for (int k = 0; k < 2; ++k) {
        auto it = index.find(std::string(tokens[k + 1]));
        if (it == index.end()) {
          throw ParseError(ParseErrorKind::kUnknownCourse, line_no,
                           "unknown course " + quote(tokens[k + 1]));
        }
        ids[k] = it->second;
      }
      if (ids[0] == ids[1]) {
        throw ParseError(ParseErrorKind::kCyclicPrerequisites, line_no,
                         "course " + quote(tokens[1]) + " requires itself");
      }
      inst.prerequisites.push_back({ids[0], ids[1]});
    } else {
      auto d = std::find_if(directives.begin(), directives.end(),
                            [&](const Directive& d) { return keyword == d.name; });
      if (d == directives.end()) throw syntax("unknown keyword " + quote(keyword));
      if (!inst.courses.empty()) {
        throw syntax(std::string(keyword) + " must precede all course lines");
      }
      if (d->seen) throw syntax("repeated directive " + quote(keyword));
      if (tokens.size() != 2) throw syntax("expected '" + std::string(keyword) + " <value>'");
      auto value = to_integer(tokens[1]);
      if (!value) throw syntax("value must be an integer");
      d->set(*value);
      d->seen = true;
    }
  }
  check_header(0);

  std::sort(inst.prerequisites.begin(), inst.prerequisites.end());
  inst.prerequisites.erase(
      std::unique(inst.prerequisites.begin(), inst.prerequisites.end()),
      inst.prerequisites.end());

  if (auto cycle = find_cycle(inst); !cycle.empty()) {
    std::string msg = "cyclic prerequisites:";
    for (const auto& id : cycle) msg += " " + id;
    throw ParseError(ParseErrorKind::kCyclicPrerequisites, 0, msg);
  }
  return inst;
}

CurriculumInstance parse_instance_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_instance(in);
}

CurriculumInstance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open instance file '" + path + "'");
  return parse_instance(in);
}

std::string serialize_instance(const CurriculumInstance& inst) {
  std::ostringstream out;
  out << "periods " << inst.periods << '\n'
      << "load_min " << inst.load_min << '\n'
      << "load_max " << inst.load_max << '\n'
      << "courses_min " << inst.courses_min << '\n'
      << "courses_max " << inst.courses_max << '\n';
  for (const auto& c : inst.courses) {
    out << "course " << c.id << ' ' << c.credits << '\n';
  }
  for (const auto& p : inst.prerequisites) {
    out << "prereq " << inst.courses[p.course].id << ' '
        << inst.courses[p.requires_course].id << '\n';
  }
  return out.str();
}

Assignment parse_solution(const CurriculumInstance& inst, std::istream& in) {
  Assignment period_of(inst.num_courses(), 0);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto tokens = tokenize(raw);
    if (tokens.empty()) continue;
    if (tokens.size() != 2) {
      throw ParseError(ParseErrorKind::kSyntax, line_no,
                       "line " + std::to_string(line_no) +
                           ": expected '<course_id> <period>'");
    }
    auto course = inst.find_course(tokens[0]);
    if (!course) {
      throw ParseError(ParseErrorKind::kUnknownCourse, line_no,
                       "unknown course " + quote(tokens[0]));
    }
    auto period = to_integer(tokens[1]);
    if (!period) {
      throw ParseError(ParseErrorKind::kSyntax, line_no,
                       "line " + std::to_string(line_no) +
                           ": period must be an integer");
    }
    if (period_of[*course] != 0) {
      throw ParseError(ParseErrorKind::kDuplicateCourse, line_no,
                       "course " + quote(tokens[0]) + " listed twice");
    }
    if (*period < 1 || *period > inst.periods) {
      throw ParseError(ParseErrorKind::kInvalidValue, line_no,
                       "period " + std::to_string(*period) + " out of range");
    }
    period_of[*course] = static_cast<Period>(*period);
  }
  for (std::size_t i = 0; i < period_of.size(); ++i) {
    if (period_of[i] == 0) {
      throw ParseError(ParseErrorKind::kMissingDirective, 0,
                       "solution has no period for course " +
                           quote(inst.courses[i].id));
    }
  }
  return period_of;
}

Assignment parse_solution_text(const CurriculumInstance& inst,
                               std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_solution(inst, in);
}

std::string serialize_solution(const CurriculumInstance& inst,
                               const Assignment& period_of) {
  std::ostringstream out;
  for (std::size_t i = 0; i < inst.num_courses(); ++i) {
    out << inst.courses[i].id << ' ' << period_of.at(i) << '\n';
  }
  return out.str();
}

std::vector<std::string> validate_instance(const CurriculumInstance& inst) {
  std::vector<std::string> defects;
  const auto m = static_cast<std::int64_t>(inst.num_courses());
  const std::int64_t n = inst.periods;
  const Credits total = inst.total_credits();
  auto show = [](auto a, auto b) {
    return " (" + std::to_string(a) + " vs " + std::to_string(b) + ")";
  };
  if (inst.courses_min * n > m) {
    defects.push_back("m < δ·n" + show(m, inst.courses_min * n));
  }
  if (m > inst.courses_max * n) {
    defects.push_back("m > ε·n" + show(m, inst.courses_max * n));
  }
  if (inst.load_min * n > total) {
    defects.push_back("total credits < β·n" + show(total, inst.load_min * n));
  }
  if (total > inst.load_max * n) {
    defects.push_back("total credits > γ·n" + show(total, inst.load_max * n));
  }
  Credits max_credit = 0;
  for (const auto& c : inst.courses) max_credit = std::max(max_credit, c.credits);
  if (max_credit > inst.load_max) {
    defects.push_back("max credit exceeds γ" + show(max_credit, inst.load_max));
  }
  return defects;
}

std::vector<Credits> compute_loads(const CurriculumInstance& inst,
                                   const Assignment& period_of) {
  if (period_of.size() != inst.num_courses()) {
    throw std::invalid_argument("assignment size does not match course count");
  }
  std::vector<Credits> loads(static_cast<std::size_t>(inst.periods), 0);
  for (std::size_t i = 0; i < period_of.size(); ++i) {
    const Period j = period_of[i];
    if (j < 1 || j > inst.periods) {
      throw OutOfRangePeriod("course '" + inst.courses[i].id +
                             "' mapped to period " + std::to_string(j));
    }
    loads[static_cast<std::size_t>(j - 1)] += inst.courses[i].credits;
  }
  return loads;
}

Credits objective(const CurriculumInstance& inst, const Assignment& period_of) {
  const auto loads = compute_loads(inst, period_of);
  return *std::max_element(loads.begin(), loads.end());
}

std::vector<Violation> check_solution(const CurriculumInstance& inst,
                                      const Assignment& period_of) {
  std::vector<Violation> out;
  const std::size_t m = inst.num_courses();
  auto assigned = [&](std::size_t i) {
    return i < period_of.size() && period_of[i] >= 1 &&
           period_of[i] <= inst.periods;
  };

  for (std::size_t i = 0; i < m; ++i) {
    if (!assigned(i)) {
      out.push_back({ViolationKind::kUnassigned, 0, i, 0,
                     "course " + inst.courses[i].id + " has no period"});
    }
  }
  for (const auto& p : inst.prerequisites) {
    if (!assigned(p.course) || !assigned(p.requires_course)) continue;
    if (period_of[p.requires_course] >= period_of[p.course]) {
      out.push_back({ViolationKind::kPrerequisite, 0, p.course,
                     p.requires_course,
                     "course " + inst.courses[p.course].id + " (period " +
                         std::to_string(period_of[p.course]) + ") requires " +
                         inst.courses[p.requires_course].id + " (period " +
                         std::to_string(period_of[p.requires_course]) + ")"});
    }
  }

  const auto n = static_cast<std::size_t>(inst.periods);
  std::vector<Credits> loads(n, 0);
  std::vector<int> counts(n, 0);
  for (std::size_t i = 0; i < m; ++i) {
    if (!assigned(i)) continue;
    const auto j = static_cast<std::size_t>(period_of[i] - 1);
    loads[j] += inst.courses[i].credits;
    ++counts[j];
  }
  for (std::size_t j = 0; j < n; ++j) {
    const auto period = static_cast<Period>(j + 1);
    const std::string where = "period " + std::to_string(period);
    if (loads[j] < inst.load_min) {
      out.push_back({ViolationKind::kLoadBelowMin, period, 0, 0,
                     where + " load " + std::to_string(loads[j]) + " < " +
                         std::to_string(inst.load_min)});
    }
    if (loads[j] > inst.load_max) {
      out.push_back({ViolationKind::kLoadAboveMax, period, 0, 0,
                     where + " load " + std::to_string(loads[j]) + " > " +
                         std::to_string(inst.load_max)});
    }
    if (counts[j] < inst.courses_min) {
      out.push_back({ViolationKind::kCoursesBelowMin, period, 0, 0,
                     where + " has " + std::to_string(counts[j]) +
                         " courses < " + std::to_string(inst.courses_min)});
    }
    if (counts[j] > inst.courses_max) {
      out.push_back({ViolationKind::kCoursesAboveMax, period, 0, 0,
                     where + " has " + std::to_string(counts[j]) +
                         " courses > " + std::to_string(inst.courses_max)});
    }
  }
  return out;
}

Solution make_solution(const CurriculumInstance& inst, Assignment period_of) {
  Solution s;
  s.loads = compute_loads(inst, period_of);
  s.objective = *std::max_element(s.loads.begin(), s.loads.end());
  s.period_of = std::move(period_of);
  return s;
}

}  // namespace bacp
