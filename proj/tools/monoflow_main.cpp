#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "monoflow/cli.hpp"

int main(int argc, char** argv) {
  using monoflow::cli::Format;
  monoflow::cli::RunConfig config;

  CLI::App app{"Interprocedural dataflow analysis of SimpleHal programs"};
  app.add_option("--analysis", config.analysis, "Analysis to run")
      ->required()
      ->check(CLI::IsMember(monoflow::analyses::names()));
  app.add_option("--context-depth", config.context_depth, "Longest call string allowed")
      ->check(CLI::PositiveNumber);
  app.add_option("--format", config.format, "Output format")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, Format>{{"json", Format::json}, {"table", Format::table}}));
  app.add_flag("--dump-flow", config.dump_flow, "Include the tagged flows in the output");
  app.add_flag("--call-to-return-edge", config.call_to_return_edge,
               "Add a normal edge from each call point to its return point");
  app.add_option("file", config.input_path, "Program to analyse")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : monoflow::cli::usage_error;
  }
  return monoflow::cli::run(config, std::cout, std::cerr);
}
