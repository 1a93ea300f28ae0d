#pragma once

// SimpleHal: a small while-language with assignments, read, conditionals,
// loops and single-value/single-result procedures. This is the bundled
// frontend; the framework and solver only see labels and tagged flows.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "monoflow/label.hpp"

namespace monoflow::simplehal {

struct SourcePos {
  std::size_t line = 1;
  std::size_t column = 1;
};

/// Arithmetic and boolean expressions share one node type.
struct Expr {
  enum class Kind : std::uint8_t {
    num, var, neg, add, sub, mul, div,   // arithmetic
    not_, and_, or_, eq, gt, ge          // boolean
  };

  Kind kind = Kind::num;
  std::int64_t number = 0;
  std::string name;
  std::vector<Expr> operands;

  static Expr num(std::int64_t n);
  static Expr var(std::string name);
  static Expr unary(Kind k, Expr e);
  static Expr binary(Kind k, Expr a, Expr b);

  bool is_boolean() const;
  friend bool operator==(const Expr&, const Expr&) = default;
};

/// Free variables of an expression.
std::set<std::string> fv(const Expr& e);
std::string to_string(const Expr& e);

struct Command {
  enum class Kind : std::uint8_t { assign, read, seq, if_, while_, call };

  Kind kind = Kind::seq;
  std::string var;              // assign/read target; call result variable
  std::string proc;             // call target
  Expr expr;                    // assign rhs; condition; call argument
  std::vector<Command> body;    // seq: items; if: {then, else}; while: {body}
  std::uint32_t label = 0;      // 0 until labeled
  SourcePos pos;

  static Command assign(std::string x, Expr a);
  static Command read(std::string x);
  static Command seq(std::vector<Command> items);
  static Command if_(Expr b, Command then_branch, Command else_branch);
  static Command while_(Expr b, Command body);
  static Command call(std::string proc, Expr arg, std::string result);

  /// Labeling is ignored.
  bool same_shape(const Command& other) const;
};

struct Procedure {
  std::string name;
  std::string value_param;
  std::string result_param;
  Command body;
  std::uint32_t entry_label = 0;   // `is`
  std::uint32_t exit_label = 0;    // `end`
  SourcePos pos;
};

struct Ast {
  std::vector<Procedure> procedures;
  Command main;
};

/// Parses a program: procedure declarations followed by the main command.
/// Throws SyntaxError with the offending line and column.
Ast parse(std::string_view source);

/// An elementary block: the unit a label names.
struct Block {
  enum class Kind : std::uint8_t { assign, read, condition, call, entry, exit };

  struct Callee {
    std::string name;
    std::string value_param;
    std::string result_param;
    std::uint32_t entry_label = 0;
    std::uint32_t exit_label = 0;
  };

  Kind kind = Kind::assign;
  std::uint32_t label = 0;
  std::string var;                 // assign/read target; call result variable
  Expr expr;                       // assign rhs; condition; call argument
  std::string procedure;           // enclosing procedure; empty in main
  std::string target;              // call blocks: procedure name as written
  std::optional<Callee> callee;    // call blocks whose target is declared
};

std::string to_string(const Block& b);

struct LabeledProgram {
  Ast ast;
  std::map<Label, Block> labeling;
  /// Split labels back to the labels they replaced.
  std::map<Label, Label> rho;
  std::set<std::string> variables;
  /// Parameters of each procedure. All other variables are global.
  std::map<std::string, std::set<std::string>> locals;

  /// ⟦B⟧ℓ; split labels resolve through ρ.
  const Block& block(Label l) const;
  Label rho_of(Label l) const;
  bool is_global(const std::string& var) const;
  std::set<std::string> all_locals() const;
};

/// Numbers every block 1, 2, … in source order: the main command first, then
/// each procedure (entry, body, exit) in declaration order. Checks that
/// procedures are declared once and that parameter names are private to
/// their procedure; throws SemanticError otherwise.
LabeledProgram label_program(Ast ast);

std::uint32_t init(const Command& c);
std::set<std::uint32_t> final(const Command& c);
FlowSet flow(const Command& c);
/// flow(body) plus the edges from the entry label and into the exit label.
FlowSet flow(const Procedure& p);

struct TaggedFlowOptions {
  /// Emit the normal edge (ℓ_c, ℓ_r) at every call site.
  bool call_to_return_edge = false;
};

/// A labeled program after call/return splitting, with its tagged flows.
struct TaggedProgram {
  LabeledProgram program;
  std::set<TaggedFlow> flows;
  Label init;
  std::set<Label> finals;

  FlowSet untagged() const;
};

/// Splits every call label ℓ into ℓ_c / ℓ_r, emits (ℓ_c, ℓ_n):C and
/// (ℓ_x, ℓ_r):R, and tags everything else N. Throws SemanticError for calls
/// to undeclared procedures.
TaggedProgram build_tagged_flows(LabeledProgram p, TaggedFlowOptions options = {});

/// parse → label_program → build_tagged_flows.
TaggedProgram load(std::string_view source, TaggedFlowOptions options = {});

/// Source text with every block annotated by its label, e.g. `[x := 3]_1`.
std::string render_labeled(const Ast& ast);

}  // namespace monoflow::simplehal
