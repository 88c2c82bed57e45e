#include "bacp/report.hpp"

#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace bacp {

namespace {

std::string shortest(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

template <typename T>
T parse_number(std::string_view text, const char* what) {
  T value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw std::invalid_argument(std::string("bad ") + what + " '" +
                                std::string(text) + "'");
  }
  return value;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  if (!s.empty() && s.back() == sep) parts.emplace_back();
  return parts;
}

RunRecord base_record(std::string instance, const SearchConfig& config) {
  RunRecord r;
  r.instance = std::move(instance);
  r.var_order = to_string(config.var_order);
  r.value_order = to_string(config.value_order);
  r.bound_mode = to_string(config.bound_mode);
  return r;
}

}  // namespace

bool operator==(const RunRecord& a, const RunRecord& b) {
  auto same_log = [](const std::vector<AnytimeEntry>& x,
                     const std::vector<AnytimeEntry>& y) {
    if (x.size() != y.size()) return false;
    for (std::size_t k = 0; k < x.size(); ++k) {
      if (x[k].objective != y[k].objective || x[k].seconds != y[k].seconds ||
          x[k].nodes != y[k].nodes) {
        return false;
      }
    }
    return true;
  };
  return a.instance == b.instance && a.var_order == b.var_order &&
         a.value_order == b.value_order && a.bound_mode == b.bound_mode &&
         a.status == b.status && a.objective == b.objective &&
         a.nodes == b.nodes && a.failures == b.failures &&
         a.elapsed_seconds == b.elapsed_seconds && same_log(a.anytime, b.anytime);
}

RunRecord make_record(std::string instance, const SearchConfig& config,
                      const OptResult& result) {
  RunRecord r = base_record(std::move(instance), config);
  r.status = to_string(result.status);
  if (result.best) r.objective = result.best->objective;
  r.nodes = result.stats.nodes;
  r.failures = result.stats.failures;
  r.elapsed_seconds = result.stats.elapsed_seconds;
  r.anytime = result.anytime;
  return r;
}

RunRecord make_record(std::string instance, const SearchConfig& config,
                      const DecisionResult& result) {
  RunRecord r = base_record(std::move(instance), config);
  r.status = to_string(result.status);
  r.nodes = result.stats.nodes;
  r.failures = result.stats.failures;
  r.elapsed_seconds = result.stats.elapsed_seconds;
  if (result.solution) {
    r.objective = result.solution->objective;
    r.anytime.push_back({result.solution->objective, result.stats.elapsed_seconds,
                         result.stats.nodes});
  }
  return r;
}

nlohmann::json to_json(const RunRecord& r) {
  nlohmann::json log = nlohmann::json::array();
  for (const auto& e : r.anytime) {
    log.push_back({{"objective", e.objective}, {"seconds", e.seconds}, {"nodes", e.nodes}});
  }
  return {
      {"instance", r.instance},
      {"var_order", r.var_order},
      {"value_order", r.value_order},
      {"bound_mode", r.bound_mode},
      {"status", r.status},
      {"objective", r.objective ? nlohmann::json(*r.objective) : nlohmann::json(nullptr)},
      {"nodes", r.nodes},
      {"failures", r.failures},
      {"elapsed_seconds", r.elapsed_seconds},
      {"anytime", log},
  };
}

RunRecord record_from_json(const nlohmann::json& j) {
  RunRecord r;
  r.instance = j.at("instance").get<std::string>();
  r.var_order = j.at("var_order").get<std::string>();
  r.value_order = j.at("value_order").get<std::string>();
  r.bound_mode = j.at("bound_mode").get<std::string>();
  r.status = j.at("status").get<std::string>();
  if (!j.at("objective").is_null()) r.objective = j.at("objective").get<Credits>();
  r.nodes = j.at("nodes").get<std::uint64_t>();
  r.failures = j.at("failures").get<std::uint64_t>();
  r.elapsed_seconds = j.at("elapsed_seconds").get<double>();
  for (const auto& e : j.at("anytime")) {
    r.anytime.push_back({e.at("objective").get<Credits>(), e.at("seconds").get<double>(),
                         e.at("nodes").get<std::uint64_t>()});
  }
  return r;
}

std::string record_csv_header() {
  return "instance,var_order,value_order,bound_mode,status,objective,nodes,"
         "failures,seconds,anytime";
}

std::string record_csv_row(const RunRecord& r) {
  std::string log;
  for (const auto& e : r.anytime) {
    if (!log.empty()) log += ';';
    log += std::to_string(e.objective) + ':' + shortest(e.seconds) + ':' +
           std::to_string(e.nodes);
  }
  return r.instance + ',' + r.var_order + ',' + r.value_order + ',' + r.bound_mode +
         ',' + r.status + ',' + (r.objective ? std::to_string(*r.objective) : "") +
         ',' + std::to_string(r.nodes) + ',' + std::to_string(r.failures) + ',' +
         shortest(r.elapsed_seconds) + ',' + log;
}

RunRecord record_from_csv_row(const std::string& row) {
  const auto f = split(row, ',');
  if (f.size() != 10) throw std::invalid_argument("run record row needs 10 fields");
  RunRecord r;
  r.instance = f[0];
  r.var_order = f[1];
  r.value_order = f[2];
  r.bound_mode = f[3];
  r.status = f[4];
  if (!f[5].empty()) r.objective = parse_number<Credits>(f[5], "objective");
  r.nodes = parse_number<std::uint64_t>(f[6], "nodes");
  r.failures = parse_number<std::uint64_t>(f[7], "failures");
  r.elapsed_seconds = parse_number<double>(f[8], "seconds");
  if (!f[9].empty()) {
    for (const auto& entry : split(f[9], ';')) {
      const auto parts = split(entry, ':');
      if (parts.size() != 3) throw std::invalid_argument("bad anytime entry '" + entry + "'");
      r.anytime.push_back({parse_number<Credits>(parts[0], "objective"),
                           parse_number<double>(parts[1], "seconds"),
                           parse_number<std::uint64_t>(parts[2], "nodes")});
    }
  }
  return r;
}

void write_anytime_csv(std::ostream& out, const std::vector<AnytimeEntry>& log) {
  out << "objective,seconds,nodes\n";
  char seconds[32];
  for (const auto& e : log) {
    std::snprintf(seconds, sizeof seconds, "%.2f", e.seconds);
    out << e.objective << ',' << seconds << ',' << e.nodes << '\n';
  }
}

std::vector<AnytimeEntry> read_anytime_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "objective,seconds,nodes") {
    throw std::invalid_argument("anytime log must start with 'objective,seconds,nodes'");
  }
  std::vector<AnytimeEntry> log;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 3) throw std::invalid_argument("bad anytime row '" + line + "'");
    log.push_back({parse_number<Credits>(f[0], "objective"),
                   parse_number<double>(f[1], "seconds"),
                   parse_number<std::uint64_t>(f[2], "nodes")});
  }
  return log;
}

bool anytime_log_consistent(const std::vector<AnytimeEntry>& log) {
  for (std::size_t k = 1; k < log.size(); ++k) {
    if (log[k].objective >= log[k - 1].objective) return false;
    if (log[k].seconds < log[k - 1].seconds) return false;
    if (log[k].nodes < log[k - 1].nodes) return false;
  }
  return true;
}

}  // namespace bacp
