#include "cgt/report_io.hpp"

#include <unistd.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "cgt/errors.hpp"

namespace cgt {

using nlohmann::json;

json budget_to_json(const SearchBudget& budget) {
  return json{{"max_orbits", budget.max_orbits},
              {"max_total_degree", budget.max_total_degree},
              {"max_classes", budget.max_classes},
              {"time_limit_ms", budget.time_limit_ms}};
}

SearchBudget budget_from_json(const json& j) {
  try {
    SearchBudget b;
    b.max_orbits = j.at("max_orbits").get<int>();
    b.max_total_degree = j.at("max_total_degree").get<int>();
    b.max_classes = j.at("max_classes").get<int>();
    b.time_limit_ms = j.at("time_limit_ms").get<long long>();
    return b;
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad budget: ") + e.what());
  }
}

json report_to_json(const MeasureReport& report) {
  return json{{"group", report.group},
              {"invariant", report.invariant},
              {"value", report.value},
              {"exhaustive", report.exhaustive},
              {"witness", report.witness},
              {"budget", budget_to_json(report.budget)},
              {"elapsed_ms", report.elapsed_ms}};
}

MeasureReport report_from_json(const json& j) {
  try {
    MeasureReport r;
    r.group = j.at("group").get<std::string>();
    r.invariant = j.at("invariant").get<std::string>();
    r.value = j.at("value").get<int>();
    r.exhaustive = j.at("exhaustive").get<bool>();
    r.witness = j.at("witness");
    r.budget = budget_from_json(j.at("budget"));
    r.elapsed_ms = j.at("elapsed_ms").get<long long>();
    return r;
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad report: ") + e.what());
  }
}

json report_document(const std::vector<MeasureReport>& reports) {
  json arr = json::array();
  for (const auto& r : reports) arr.push_back(report_to_json(r));
  return json{{"format", "measure-reports"}, {"version", 1}, {"reports", arr}};
}

std::vector<MeasureReport> parse_report_document(const json& doc) {
  if (!doc.is_object() || doc.value("format", "") != "measure-reports")
    throw ParseError("not a measure report document");
  if (doc.value("version", 0) != 1)
    throw ParseError("unsupported report document version");
  std::vector<MeasureReport> out;
  for (const auto& j : doc.at("reports")) out.push_back(report_from_json(j));
  return out;
}

std::string render_json(const json& j) { return j.dump(1) + "\n"; }

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
  std::string tmp = path + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp);
    out << content;
    out.flush();
    if (!out) throw IoError("short write to " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw IoError("cannot move " + tmp + " into place");
  }
}

std::string strip_timing_lines(const std::string& text) {
  std::istringstream in(text);
  std::ostringstream out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find("elapsed_ms") != std::string::npos) continue;
    out << line << "\n";
  }
  return out.str();
}

}  // namespace cgt
