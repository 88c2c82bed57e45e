#include "bacp/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "bacp/instance.hpp"
#include "bacp/model.hpp"
#include "bacp/oracle.hpp"
#include "bacp/report.hpp"
#include "bacp/search.hpp"

namespace bacp {

namespace {

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SolveArgs {
  std::string instance;
  std::string mode = "minimize";
  std::optional<Credits> max_load;
  MatrixOrder var_order = MatrixOrder::kByPeriod;
  ValueOrder value_order = ValueOrder::kOneFirst;
  BoundMode bound_mode = BoundMode::kRestartPerBound;
  std::optional<std::uint64_t> node_limit;
  std::optional<double> time_limit;
  std::string anytime_log;
  std::string solution_out;
  std::string format = "table";
  bool paper_faithful = false;
  bool implied_total_load = false;
  bool matrix = false;
  bool parallel = false;
};

std::string seconds2(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", s);
  return buf;
}

CurriculumInstance read_instance(const std::string& path) {
  try {
    return load_instance(path);
  } catch (const ParseError& e) {
    throw InputError(path + ": " + e.what());
  } catch (const std::runtime_error& e) {
    throw InputError(e.what());
  }
}

std::string instance_name(const std::string& path) {
  return std::filesystem::path(path).stem().string();
}

SearchConfig make_config(const SolveArgs& a) {
  SearchConfig c;
  c.var_order = a.var_order;
  c.value_order = a.value_order;
  c.bound_mode = a.bound_mode;
  c.node_limit = a.node_limit;
  if (a.time_limit) c.time_limit = std::chrono::duration<double>(*a.time_limit);
  return c;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw InputError("cannot write '" + path + "'");
  f << text;
}

int exit_code_for(const std::string& status) {
  if (status == "Optimal" || status == "Sat") return kExitSolved;
  if (status == "Infeasible" || status == "Unsat") return kExitNoSolution;
  return kExitIncomplete;
}

void print_record(std::ostream& out, const RunRecord& r, const std::string& format,
                  const SearchConfig& config) {
  if (format == "json") {
    out << to_json(r).dump() << '\n';
    return;
  }
  if (format == "csv") {
    out << record_csv_header() << '\n' << record_csv_row(r) << '\n';
    return;
  }
  out << "instance   " << r.instance << '\n'
      << "config     " << r.var_order << ", " << r.value_order << ", "
      << r.bound_mode << '\n'
      << "status     " << r.status << '\n'
      << "objective  " << (r.objective ? std::to_string(*r.objective) : "-") << '\n'
      << "nodes      " << r.nodes << '\n'
      << "failures   " << r.failures << '\n'
      << "seconds    " << seconds2(r.elapsed_seconds) << '\n';
  if (r.status == "Incomplete" || r.status == "LimitReached") {
    out << "limit reached:";
    if (config.node_limit) out << " node limit " << *config.node_limit;
    if (config.time_limit) out << " time limit " << config.time_limit->count() << "s";
    out << '\n';
  }
  if (!r.anytime.empty()) {
    out << "\n  C [credits]  time [s]  nodes\n";
    for (const auto& e : r.anytime) {
      out << "  " << std::setw(11) << e.objective << "  " << std::setw(8)
          << seconds2(e.seconds) << "  " << e.nodes << '\n';
    }
  }
}

struct MatrixCell {
  SearchConfig config;
  RunRecord record;
};

RunRecord run_one(const CurriculumInstance& inst, const std::string& name,
                  const ModelOptions& options, const SearchConfig& config,
                  std::optional<Solution>* best) {
  OptResult result;
  try {
    Model model = Model::build(inst, options);
    result = minimize(model, config);
  } catch (const RootConflict&) {
    result.status = OptStatus::kInfeasible;
  }
  if (best) *best = result.best;
  return make_record(name, config, result);
}

int solve_matrix(const SolveArgs& a, const CurriculumInstance& inst,
                 const ModelOptions& options, std::ostream& out) {
  const std::string name = instance_name(a.instance);
  std::vector<MatrixCell> cells;
  for (MatrixOrder vo : {MatrixOrder::kByCourse, MatrixOrder::kByPeriod}) {
    for (ValueOrder val : {ValueOrder::kZeroFirst, ValueOrder::kOneFirst}) {
      SearchConfig c = make_config(a);
      c.var_order = vo;
      c.value_order = val;
      cells.push_back({c, {}});
    }
  }
  if (a.parallel) {
    std::vector<std::future<RunRecord>> jobs;
    for (auto& cell : cells) {
      jobs.push_back(std::async(std::launch::async, [&inst, &name, &options, &cell] {
        return run_one(inst, name, options, cell.config, nullptr);
      }));
    }
    for (std::size_t k = 0; k < cells.size(); ++k) cells[k].record = jobs[k].get();
  } else {
    for (auto& cell : cells) cell.record = run_one(inst, name, options, cell.config, nullptr);
  }

  if (a.format == "json") {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& cell : cells) arr.push_back(to_json(cell.record));
    out << arr.dump() << '\n';
  } else if (a.format == "csv") {
    out << record_csv_header() << '\n';
    for (const auto& cell : cells) out << record_csv_row(cell.record) << '\n';
  } else {
    auto column = [](const RunRecord& r) { return r.var_order + "/" + r.value_order; };
    auto first = [](const RunRecord& r) {
      return r.anytime.empty() ? std::string("∞") : seconds2(r.anytime.front().seconds);
    };
    auto optimum = [](const RunRecord& r) {
      return r.status == "Optimal" ? seconds2(r.anytime.back().seconds) : std::string("∞");
    };
    // pad by code points so the infinity sign lines up
    auto pad = [](const std::string& text, std::size_t width) {
      std::size_t glyphs = 0;
      for (unsigned char ch : text) glyphs += (ch & 0xC0) != 0x80;
      return text + std::string(glyphs < width ? width - glyphs : 1, ' ');
    };
    auto row = [&](const std::string& label, auto cell_text) {
      out << pad(label, 22);
      for (const auto& cell : cells) out << pad(cell_text(cell.record), 24);
      out << '\n';
    };
    out << "instance " << name << '\n';
    row("", column);
    row("first solution [s]", first);
    row("proved optimum [s]", optimum);
    row("best C [credits]", [](const RunRecord& r) {
      return r.objective ? std::to_string(*r.objective) : std::string("-");
    });
    row("status", [](const RunRecord& r) { return r.status; });
    row("nodes", [](const RunRecord& r) { return std::to_string(r.nodes); });
  }

  bool any_infeasible = false, any_incomplete = false;
  for (const auto& cell : cells) {
    any_infeasible |= cell.record.status == "Infeasible";
    any_incomplete |= cell.record.status == "Incomplete";
  }
  return any_infeasible ? kExitNoSolution : any_incomplete ? kExitIncomplete : kExitSolved;
}

int cmd_solve(const SolveArgs& a, std::ostream& out) {
  if (a.format != "table" && a.format != "csv" && a.format != "json") {
    throw InputError("--format must be table, csv or json");
  }
  const CurriculumInstance inst = read_instance(a.instance);
  ModelOptions options;
  options.paper_faithful = a.paper_faithful;
  options.implied_total_load = a.implied_total_load;
  if (a.matrix) return solve_matrix(a, inst, options, out);

  const SearchConfig config = make_config(a);
  const std::string name = instance_name(a.instance);
  RunRecord record;
  std::optional<Solution> solution;

  if (a.mode == "decision") {
    if (!a.max_load) throw InputError("--mode decision requires --max-load");
    if (*a.max_load < inst.load_min) {
      throw InputError("--max-load " + std::to_string(*a.max_load) +
                       " is below load_min " + std::to_string(inst.load_min));
    }
    DecisionResult result;
    try {
      Model model = Model::build(inst, options);
      result = solve_decision(model, *a.max_load, config);
    } catch (const RootConflict&) {
      result.status = DecisionStatus::kUnsat;
    }
    solution = result.solution;
    record = make_record(name, config, result);
  } else if (a.mode == "minimize") {
    record = run_one(inst, name, options, config, &solution);
  } else {
    throw InputError("--mode must be minimize or decision");
  }

  print_record(out, record, a.format, config);
  if (!a.anytime_log.empty()) {
    std::ostringstream csv;
    write_anytime_csv(csv, record.anytime);
    write_file(a.anytime_log, csv.str());
  }
  if (!a.solution_out.empty() && solution) {
    write_file(a.solution_out, serialize_solution(inst, solution->period_of));
  }
  return exit_code_for(record.status);
}

int cmd_check(const std::string& instance_path, const std::string& solution_path,
              std::ostream& out) {
  const CurriculumInstance inst = read_instance(instance_path);
  std::ifstream in(solution_path);
  if (!in) throw InputError("cannot open solution file '" + solution_path + "'");
  Assignment period_of;
  try {
    period_of = parse_solution(inst, in);
  } catch (const ParseError& e) {
    throw InputError(solution_path + ": " + e.what());
  }
  const auto violations = check_solution(inst, period_of);
  if (violations.empty()) {
    out << "feasible\nobjective " << objective(inst, period_of) << '\n';
    return kExitSolved;
  }
  out << violations.size() << " violation(s)\n";
  for (const auto& v : violations) out << to_string(v.kind) << ": " << v.detail << '\n';
  return kExitNoSolution;
}

int cmd_oracle(const std::string& instance_path, std::ostream& out) {
  const CurriculumInstance inst = read_instance(instance_path);
  OracleResult result;
  try {
    result = brute_force(inst);
  } catch (const TooLarge& e) {
    throw InputError(std::string(e.what()) +
                     "; use 'solve' for instances of this size");
  }
  if (result.status == OracleResult::Status::kInfeasible) {
    out << "infeasible\ncandidates " << candidate_count(inst) << '\n';
    return kExitNoSolution;
  }
  out << "optimum " << result.objective << '\n'
      << "feasible " << result.feasible_count << '\n'
      << "witness\n"
      << serialize_solution(inst, result.witness->period_of);
  return kExitSolved;
}

template <typename Enum>
CLI::Option* add_enum(CLI::App* app, const std::string& name, Enum& target,
                      const std::map<std::string, Enum>& values, const std::string& help) {
  return app->add_option_function<std::string>(
                name, [&target, values](const std::string& v) { target = values.at(CLI::detail::to_lower(v)); },
                help)
      ->check(CLI::IsMember(values, CLI::ignore_case));
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Balanced academic curriculum solver and benchmark harness", "bacp"};
  app.require_subcommand(1);

  SolveArgs solve;
  auto* s = app.add_subcommand("solve", "minimize the maximum period load, or answer a decision query");
  s->add_option("--instance", solve.instance, "instance file")->required();
  s->add_option("--mode", solve.mode, "minimize | decision")
      ->check(CLI::IsMember({"minimize", "decision"}));
  s->add_option("--max-load", solve.max_load, "load bound K for --mode decision");
  add_enum(s, "--var-order", solve.var_order,
           std::map<std::string, MatrixOrder>{{"by-course", MatrixOrder::kByCourse},
                                              {"by-period", MatrixOrder::kByPeriod}},
           "by-course | by-period");
  add_enum(s, "--value-order", solve.value_order,
           std::map<std::string, ValueOrder>{{"zero-first", ValueOrder::kZeroFirst},
                                             {"one-first", ValueOrder::kOneFirst}},
           "zero-first | one-first");
  add_enum(s, "--bound-mode", solve.bound_mode,
           std::map<std::string, BoundMode>{{"restart", BoundMode::kRestartPerBound},
                                            {"continue", BoundMode::kContinueInTree}},
           "restart | continue");
  s->add_option("--node-limit", solve.node_limit, "stop after N branching decisions")
      ->check(CLI::PositiveNumber);
  s->add_option("--time-limit", solve.time_limit, "stop after SECS seconds")
      ->check(CLI::PositiveNumber);
  s->add_option("--anytime-log", solve.anytime_log, "write objective,seconds,nodes CSV");
  s->add_option("--solution-out", solve.solution_out, "write the best solution");
  s->add_option("--format", solve.format, "table | csv | json");
  s->add_flag("--paper-faithful", solve.paper_faithful,
              "omit the per-period minimum load and course-count constraints");
  s->add_flag("--implied-total-load", solve.implied_total_load,
              "post sum of period loads = total credits");
  s->add_flag("--matrix", solve.matrix, "run all four var/value order combinations");
  s->add_flag("--parallel", solve.parallel, "with --matrix, run the combinations concurrently");

  std::string check_instance, check_solution_path;
  auto* c = app.add_subcommand("check", "check a solution file against every constraint");
  c->add_option("--instance", check_instance, "instance file")->required();
  c->add_option("--solution", check_solution_path, "solution file")->required();

  std::string oracle_instance;
  auto* o = app.add_subcommand("oracle", "exact optimum by exhaustive enumeration");
  o->add_option("--instance", oracle_instance, "instance file")->required();

  GenParams gen;
  auto* g = app.add_subcommand("gen", "write a random instance to standard output");
  g->add_option("--seed", gen.seed, "PRNG seed");
  g->add_option("--courses", gen.courses, "number of courses")->check(CLI::PositiveNumber);
  g->add_option("--periods", gen.periods, "number of periods")->check(CLI::PositiveNumber);
  g->add_option("--credit-min", gen.credit_min, "smallest course credit")->check(CLI::PositiveNumber);
  g->add_option("--credit-max", gen.credit_max, "largest course credit")->check(CLI::PositiveNumber);
  g->add_option("--density", gen.prereq_density, "prerequisite probability")
      ->check(CLI::Range(0.0, 1.0));
  g->add_option("--slack", gen.bound_slack, "bound looseness in [0, 1]")
      ->check(CLI::Range(0.0, 1.0));

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitInputError;
  }

  try {
    if (*s) return cmd_solve(solve, out);
    if (*c) return cmd_check(check_instance, check_solution_path, out);
    if (*o) return cmd_oracle(oracle_instance, out);
    const CurriculumInstance inst = gen_instance(gen);
    out << "# generated: seed " << gen.seed << ", " << gen.courses << " courses, "
        << gen.periods << " periods\n"
        << serialize_instance(inst);
    return kExitSolved;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
  }
  return kExitInputError;
}

}  // namespace bacp
