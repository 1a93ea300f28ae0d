#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>

#include <nlohmann/json.hpp>

#include "monoflow/analyses.hpp"
#include "monoflow/solver.hpp"

namespace monoflow::cli {

enum class Format { json, table };

struct RunConfig {
  std::string input_path;
  std::string analysis = "rd";
  std::size_t context_depth = 16;
  Format format = Format::json;
  bool dump_flow = false;
  bool call_to_return_edge = false;
};

enum ExitCode : int {
  ok = 0,
  program_error = 1,      // syntax or static semantic error
  ill_formed = 2,         // a call without a matching return
  context_overflow = 3,   // call string deeper than the bound
  usage_error = 4,        // unreadable input, bad options
};

using Document = nlohmann::ordered_json;

/// The output document for one solved analysis.
Document build_document(const analyses::Analysis& analysis, const EmbellishedFramework& fw,
                        const AnalysisResult& result, const RunConfig& config);

/// One line per entry/exit value, in document order.
std::string render_table(const Document& doc);

/// Runs on an already built program (lets callers hand in flows that did not
/// come from the parser).
int run_program(simplehal::TaggedProgram program, const RunConfig& config, std::ostream& out,
                std::ostream& err);

/// Runs on program text.
int run_source(std::string_view source, const RunConfig& config, std::ostream& out,
               std::ostream& err);

/// Reads config.input_path and runs on it.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace monoflow::cli
