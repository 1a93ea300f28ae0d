#include "monoflow/cli.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include "monoflow/error.hpp"

namespace monoflow::cli {

namespace {

Document render_contexts(const analyses::Analysis& a, const ContextMap& v) {
  Document out = Document::object();
  for (const auto& [delta, value] : v.entries()) out[to_string(delta)] = a.render(value);
  return out;
}

}  // namespace

Document build_document(const analyses::Analysis& analysis, const EmbellishedFramework& fw,
                        const AnalysisResult& result, const RunConfig& config) {
  Document doc;
  doc["program"] = simplehal::render_labeled(analysis.program().program.ast);
  if (config.dump_flow) {
    Document flows = Document::array();
    for (const auto& f : analysis.program().flows) {
      flows.push_back({{"from", to_string(f.from)}, {"to", to_string(f.to)},
                       {"kind", to_string(f.kind)}});
    }
    doc["flows"] = std::move(flows);
  }
  Document entry = Document::object();
  for (const auto& [l, v] : result.entry) entry[to_string(l)] = render_contexts(analysis, v);
  doc["entry"] = std::move(entry);

  Document exit = Document::object();
  for (const auto& [l, outputs] : result.exit) {
    Document per_successor = Document::object();
    for (const auto& [succ, v] : outputs) {
      per_successor[to_string(succ)] = render_contexts(analysis, v);
    }
    exit[to_string(l)] = std::move(per_successor);
  }
  doc["exit"] = std::move(exit);

  doc["meta"] = {{"analysis", analysis.name()},
                 {"direction", to_string(fw.direction())},
                 {"k", config.context_depth},
                 {"iterations", result.iterations}};
  return doc;
}

std::string render_table(const Document& doc) {
  std::ostringstream out;
  const auto& meta = doc.at("meta");
  out << "# analysis " << meta.at("analysis").get<std::string>() << ", "
      << meta.at("direction").get<std::string>() << ", k = " << meta.at("k").get<std::size_t>()
      << ", iterations = " << meta.at("iterations").get<std::size_t>() << "\n";
  for (const auto& [label, contexts] : doc.at("entry").items()) {
    for (const auto& [ctx, value] : contexts.items()) {
      out << "entry\t" << label << "\t" << ctx << "\t" << value.get<std::string>() << "\n";
    }
  }
  for (const auto& [label, successors] : doc.at("exit").items()) {
    for (const auto& [succ, contexts] : successors.items()) {
      for (const auto& [ctx, value] : contexts.items()) {
        out << "exit\t" << label << " -> " << succ << "\t" << ctx << "\t"
            << value.get<std::string>() << "\n";
      }
    }
  }
  return out.str();
}

int run_program(simplehal::TaggedProgram program, const RunConfig& config, std::ostream& out,
                std::ostream& err) {
  if (config.context_depth < 1) {
    err << "monoflow: context depth must be at least 1\n";
    return usage_error;
  }
  const auto analysis = analyses::make(config.analysis, std::move(program));
  if (!analysis) {
    err << "monoflow: unknown analysis '" << config.analysis << "'\n";
    return usage_error;
  }
  try {
    const auto fw = embellish(analyses::Analysis::framework(analysis),
                              EmbellishOptions{config.context_depth, false});
    const auto result = solve(fw);
    for (const auto& w : result.warnings) err << "monoflow: warning: " << w << "\n";
    const Document doc = build_document(*analysis, fw, result, config);
    if (config.format == Format::json) {
      out << doc.dump(2) << "\n";
    } else {
      out << render_table(doc);
    }
  } catch (const WellFormednessError& e) {
    err << "monoflow: ill-formed flows: " << e.what() << "\n";
    return ill_formed;
  } catch (const ContextDepthExceeded& e) {
    err << "monoflow: " << e.what() << "\n";
    return context_overflow;
  }
  return ok;
}

int run_source(std::string_view source, const RunConfig& config, std::ostream& out,
               std::ostream& err) {
  simplehal::TaggedProgram program;
  try {
    program = simplehal::load(source, {config.call_to_return_edge});
  } catch (const SyntaxError& e) {
    err << config.input_path << ":" << e.what() << "\n";
    return program_error;
  } catch (const SemanticError& e) {
    err << config.input_path << ": " << e.what() << "\n";
    return program_error;
  }
  return run_program(std::move(program), config, out, err);
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  std::ifstream in(config.input_path, std::ios::binary);
  if (!in) {
    err << "monoflow: cannot read '" << config.input_path << "'\n";
    return usage_error;
  }
  std::ostringstream text;
  text << in.rdbuf();
  return run_source(text.str(), config, out, err);
}

}  // namespace monoflow::cli
