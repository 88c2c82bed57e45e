#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "bacp/search.hpp"
#include "json.hpp"

namespace bacp {

/// One solver run as it appears in reports.
struct RunRecord {
  std::string instance;
  std::string var_order;    // by-course | by-period
  std::string value_order;  // zero-first | one-first
  std::string bound_mode;   // restart | continue
  std::string status;       // Optimal, Infeasible, Incomplete, Sat, Unsat, LimitReached
  std::optional<Credits> objective;
  std::uint64_t nodes = 0;
  std::uint64_t failures = 0;
  double elapsed_seconds = 0.0;
  std::vector<AnytimeEntry> anytime;

  friend bool operator==(const RunRecord&, const RunRecord&);
};

RunRecord make_record(std::string instance, const SearchConfig& config,
                      const OptResult& result);
RunRecord make_record(std::string instance, const SearchConfig& config,
                      const DecisionResult& result);

nlohmann::json to_json(const RunRecord& record);
RunRecord record_from_json(const nlohmann::json& j);

/// Header line for write_record_csv, without trailing newline.
std::string record_csv_header();
/// One CSV line (no newline). Anytime entries go into the last column as
/// objective:seconds:nodes separated by ';'.
std::string record_csv_row(const RunRecord& record);
RunRecord record_from_csv_row(const std::string& row);

/// Anytime log: header `objective,seconds,nodes`, seconds with 2 decimals.
void write_anytime_csv(std::ostream& out, const std::vector<AnytimeEntry>& log);
std::vector<AnytimeEntry> read_anytime_csv(std::istream& in);

/// Strictly decreasing objectives and nondecreasing seconds and nodes.
bool anytime_log_consistent(const std::vector<AnytimeEntry>& log);

}  // namespace bacp
