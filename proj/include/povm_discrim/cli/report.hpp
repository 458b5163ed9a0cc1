#pragma once

// Report documents shared by the CLI commands.
//
// Every --json report is an object with
//   "command"      string
//   "status"       integer exit status (0..3)
//   "result"       object
//   "diagnostics"  object
// and optionally
//   "task"         object (echo of the parsed task)
//   "probe"        array of [re, im] pairs, or null
//   "table"        array of {"pattern": string, "conclusion": string, ...}

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "povm_discrim/unambiguous.hpp"

namespace povm_discrim::cli {

nlohmann::json task_echo(const TaskSpec& task);

// Rows keyed by pattern letter names, with orbit sizes for alphabet size k.
nlohmann::json region_table(const RegionMap& map, const std::vector<std::string>& names, std::size_t k);
nlohmann::json assignment_table(const Assignment& assignment, const std::vector<std::string>& names, std::size_t k);

// Schema violations of a report; empty when the document is well-formed.
std::vector<std::string> check_report_schema(const nlohmann::json& report);

// Plain-text rendering of a report document.
void render_text(const nlohmann::json& report, std::ostream& out);

std::string format_complex(double re, double im, int precision = 6);

}  // namespace povm_discrim::cli
