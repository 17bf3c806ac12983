#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "cgt/measures.hpp"

namespace cgt {

nlohmann::json budget_to_json(const SearchBudget& budget);
SearchBudget budget_from_json(const nlohmann::json& j);

nlohmann::json report_to_json(const MeasureReport& report);
MeasureReport report_from_json(const nlohmann::json& j);

// Wraps reports in a versioned envelope; parse rejects foreign formats.
nlohmann::json report_document(const std::vector<MeasureReport>& reports);
std::vector<MeasureReport> parse_report_document(const nlohmann::json& doc);

// The one rendering used for files and stdout, so outputs are comparable
// byte for byte.
std::string render_json(const nlohmann::json& j);

std::string read_text_file(const std::string& path);

// Writes to a temporary file in the target directory and renames it into
// place, so concurrent readers never observe a partial file.
void write_file_atomic(const std::string& path, const std::string& content);

// Drops lines carrying wall-clock measurements ("elapsed_ms") so two runs
// of the same computation can be compared verbatim.
std::string strip_timing_lines(const std::string& text);

}  // namespace cgt
