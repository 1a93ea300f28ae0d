#include <algorithm>
#include <sstream>

#include "monoflow/error.hpp"
#include "monoflow/simplehal.hpp"

namespace monoflow::simplehal {

// ---------------------------------------------------------------------------
// Expressions

Expr Expr::num(std::int64_t n) {
  Expr e;
  e.kind = Kind::num;
  e.number = n;
  return e;
}

Expr Expr::var(std::string name) {
  Expr e;
  e.kind = Kind::var;
  e.name = std::move(name);
  return e;
}

Expr Expr::unary(Kind k, Expr a) {
  Expr e;
  e.kind = k;
  e.operands.push_back(std::move(a));
  return e;
}

Expr Expr::binary(Kind k, Expr a, Expr b) {
  Expr e;
  e.kind = k;
  e.operands.push_back(std::move(a));
  e.operands.push_back(std::move(b));
  return e;
}

bool Expr::is_boolean() const { return kind >= Kind::not_; }

namespace {

void collect_fv(const Expr& e, std::set<std::string>& out) {
  if (e.kind == Expr::Kind::var) out.insert(e.name);
  for (const auto& o : e.operands) collect_fv(o, out);
}

int precedence(Expr::Kind k) {
  using K = Expr::Kind;
  switch (k) {
    case K::or_: return 1;
    case K::and_: return 2;
    case K::not_: return 3;
    case K::eq: case K::gt: case K::ge: return 4;
    case K::add: case K::sub: return 5;
    case K::mul: case K::div: return 6;
    case K::neg: return 7;
    case K::num: case K::var: return 8;
  }
  return 0;
}

const char* symbol(Expr::Kind k) {
  using K = Expr::Kind;
  switch (k) {
    case K::add: return " + ";
    case K::sub: return " - ";
    case K::mul: return " * ";
    case K::div: return " / ";
    case K::and_: return " and ";
    case K::or_: return " or ";
    case K::eq: return " = ";
    case K::gt: return " > ";
    case K::ge: return " >= ";
    default: return "";
  }
}

void print(const Expr& e, std::ostream& out, int outer) {
  using K = Expr::Kind;
  const int p = precedence(e.kind);
  const bool parens = p < outer;
  if (parens) out << '(';
  switch (e.kind) {
    case K::num:
      out << e.number;
      break;
    case K::var:
      out << e.name;
      break;
    case K::neg:
      out << '-';
      print(e.operands[0], out, p);
      break;
    case K::not_:
      out << "not ";
      print(e.operands[0], out, p);
      break;
    default:
      // Left-associative: the right operand needs parentheses at equal
      // precedence.
      print(e.operands[0], out, p);
      out << symbol(e.kind);
      print(e.operands[1], out, p + 1);
      break;
  }
  if (parens) out << ')';
}

}  // namespace

std::set<std::string> fv(const Expr& e) {
  std::set<std::string> out;
  collect_fv(e, out);
  return out;
}

std::string to_string(const Expr& e) {
  std::ostringstream out;
  print(e, out, 0);
  return out.str();
}

// ---------------------------------------------------------------------------
// Commands

Command Command::assign(std::string x, Expr a) {
  Command c;
  c.kind = Kind::assign;
  c.var = std::move(x);
  c.expr = std::move(a);
  return c;
}

Command Command::read(std::string x) {
  Command c;
  c.kind = Kind::read;
  c.var = std::move(x);
  return c;
}

Command Command::seq(std::vector<Command> items) {
  Command c;
  c.kind = Kind::seq;
  // c1;(c2;c3) and (c1;c2);c3 denote the same program: keep sequences flat.
  for (auto& item : items) {
    if (item.kind == Kind::seq) {
      for (auto& inner : item.body) c.body.push_back(std::move(inner));
    } else {
      c.body.push_back(std::move(item));
    }
  }
  return c;
}

Command Command::if_(Expr b, Command then_branch, Command else_branch) {
  Command c;
  c.kind = Kind::if_;
  c.expr = std::move(b);
  c.body.push_back(std::move(then_branch));
  c.body.push_back(std::move(else_branch));
  return c;
}

Command Command::while_(Expr b, Command body) {
  Command c;
  c.kind = Kind::while_;
  c.expr = std::move(b);
  c.body.push_back(std::move(body));
  return c;
}

Command Command::call(std::string proc, Expr arg, std::string result) {
  Command c;
  c.kind = Kind::call;
  c.proc = std::move(proc);
  c.expr = std::move(arg);
  c.var = std::move(result);
  return c;
}

bool Command::same_shape(const Command& other) const {
  if (kind != other.kind || var != other.var || proc != other.proc || !(expr == other.expr) ||
      body.size() != other.body.size()) {
    return false;
  }
  for (std::size_t i = 0; i < body.size(); ++i) {
    if (!body[i].same_shape(other.body[i])) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Labeling

const Block& LabeledProgram::block(Label l) const {
  auto it = labeling.find(l);
  if (it == labeling.end()) it = labeling.find(rho_of(l));
  if (it == labeling.end()) {
    throw std::out_of_range("label " + to_string(l) + " is not in the labeling");
  }
  return it->second;
}

Label LabeledProgram::rho_of(Label l) const {
  auto it = rho.find(l);
  return it == rho.end() ? l : it->second;
}

bool LabeledProgram::is_global(const std::string& var) const {
  return std::none_of(locals.begin(), locals.end(),
                      [&](const auto& kv) { return kv.second.contains(var); });
}

std::set<std::string> LabeledProgram::all_locals() const {
  std::set<std::string> out;
  for (const auto& [proc, names] : locals) out.insert(names.begin(), names.end());
  return out;
}

namespace {

class Labeler {
 public:
  explicit Labeler(LabeledProgram& out) : out_(out) {}

  void label(Command& c, const std::string& procedure) {
    using K = Command::Kind;
    switch (c.kind) {
      case K::seq:
        for (auto& item : c.body) label(item, procedure);
        return;
      case K::assign:
        add(c, Block::Kind::assign, procedure);
        return;
      case K::read:
        add(c, Block::Kind::read, procedure);
        return;
      case K::call:
        add(c, Block::Kind::call, procedure);
        return;
      case K::if_:
        add(c, Block::Kind::condition, procedure);
        label(c.body[0], procedure);
        label(c.body[1], procedure);
        return;
      case K::while_:
        add(c, Block::Kind::condition, procedure);
        label(c.body[0], procedure);
        return;
    }
  }

  std::uint32_t fresh() { return next_++; }

  void add_marker(std::uint32_t l, Block::Kind kind, const std::string& procedure) {
    Block b;
    b.kind = kind;
    b.label = l;
    b.procedure = procedure;
    out_.labeling.emplace(Label::plain(l), std::move(b));
  }

 private:
  void add(Command& c, Block::Kind kind, const std::string& procedure) {
    c.label = fresh();
    Block b;
    b.kind = kind;
    b.label = c.label;
    b.var = c.var;
    b.expr = c.expr;
    b.procedure = procedure;
    b.target = c.proc;
    out_.labeling.emplace(Label::plain(c.label), std::move(b));
  }

  LabeledProgram& out_;
  std::uint32_t next_ = 1;
};

void collect_vars(const Command& c, std::set<std::string>& out) {
  if (!c.var.empty()) out.insert(c.var);
  for (const auto& v : fv(c.expr)) out.insert(v);
  for (const auto& b : c.body) collect_vars(b, out);
}

[[noreturn]] void semantic_error(const SourcePos& pos, const std::string& msg) {
  throw SemanticError(std::to_string(pos.line) + ":" + std::to_string(pos.column) + ": " +
                      msg);
}

void check_scoping(const Ast& ast) {
  std::map<std::string, std::string> owner;  // parameter → procedure
  std::set<std::string> names;
  for (const auto& p : ast.procedures) {
    if (!names.insert(p.name).second) {
      semantic_error(p.pos, "procedure '" + p.name + "' is declared more than once");
    }
    if (p.value_param == p.result_param) {
      semantic_error(p.pos, "procedure '" + p.name + "' uses '" + p.value_param +
                                "' for both parameters");
    }
    for (const auto* param : {&p.value_param, &p.result_param}) {
      auto [it, fresh] = owner.emplace(*param, p.name);
      if (!fresh) {
        semantic_error(p.pos, "parameter '" + *param + "' of '" + p.name +
                                  "' is already a parameter of '" + it->second + "'");
      }
    }
  }
  auto check_body = [&](const Command& body, const std::string& procedure,
                        const SourcePos& pos) {
    std::set<std::string> used;
    collect_vars(body, used);
    for (const auto& v : used) {
      auto it = owner.find(v);
      if (it != owner.end() && it->second != procedure) {
        semantic_error(pos, "'" + v + "' is a parameter of '" + it->second +
                                "' and cannot be used " +
                                (procedure.empty() ? std::string("in the main command")
                                                   : "in '" + procedure + "'"));
      }
    }
  };
  check_body(ast.main, "", ast.main.pos);
  for (const auto& p : ast.procedures) check_body(p.body, p.name, p.pos);
}

}  // namespace

LabeledProgram label_program(Ast ast) {
  check_scoping(ast);
  LabeledProgram out;
  Labeler labeler(out);
  labeler.label(ast.main, "");
  for (auto& p : ast.procedures) {
    p.entry_label = labeler.fresh();
    labeler.add_marker(p.entry_label, Block::Kind::entry, p.name);
    labeler.label(p.body, p.name);
    p.exit_label = labeler.fresh();
    labeler.add_marker(p.exit_label, Block::Kind::exit, p.name);
  }

  std::map<std::string, const Procedure*> by_name;
  for (const auto& p : ast.procedures) {
    by_name.emplace(p.name, &p);
    out.locals[p.name] = {p.value_param, p.result_param};
    out.variables.insert(p.value_param);
    out.variables.insert(p.result_param);
    collect_vars(p.body, out.variables);
  }
  collect_vars(ast.main, out.variables);

  for (auto& [l, b] : out.labeling) {
    if (b.kind != Block::Kind::call) continue;
    auto it = by_name.find(b.target);
    if (it == by_name.end()) continue;  // reported by build_tagged_flows
    const Procedure& p = *it->second;
    b.callee = Block::Callee{p.name, p.value_param, p.result_param, p.entry_label, p.exit_label};
  }
  out.ast = std::move(ast);
  return out;
}

// ---------------------------------------------------------------------------
// init / final / flow

std::uint32_t init(const Command& c) {
  if (c.kind == Command::Kind::seq) return init(c.body.front());
  return c.label;
}

std::set<std::uint32_t> final(const Command& c) {
  using K = Command::Kind;
  switch (c.kind) {
    case K::seq:
      return final(c.body.back());
    case K::if_: {
      auto out = final(c.body[0]);
      auto other = final(c.body[1]);
      out.insert(other.begin(), other.end());
      return out;
    }
    default:
      return {c.label};
  }
}

FlowSet flow(const Command& c) {
  using K = Command::Kind;
  FlowSet out;
  auto merge = [&](const FlowSet& f) { out.insert(f.begin(), f.end()); };
  switch (c.kind) {
    case K::assign:
    case K::read:
    case K::call:
      break;
    case K::seq:
      for (std::size_t i = 0; i < c.body.size(); ++i) {
        merge(flow(c.body[i]));
        if (i + 1 < c.body.size()) {
          const Label next = Label::plain(init(c.body[i + 1]));
          for (auto l : final(c.body[i])) out.insert({Label::plain(l), next});
        }
      }
      break;
    case K::if_:
      merge(flow(c.body[0]));
      merge(flow(c.body[1]));
      out.insert({Label::plain(c.label), Label::plain(init(c.body[0]))});
      out.insert({Label::plain(c.label), Label::plain(init(c.body[1]))});
      break;
    case K::while_:
      merge(flow(c.body[0]));
      out.insert({Label::plain(c.label), Label::plain(init(c.body[0]))});
      for (auto l : final(c.body[0])) out.insert({Label::plain(l), Label::plain(c.label)});
      break;
  }
  return out;
}

FlowSet flow(const Procedure& p) {
  FlowSet out = flow(p.body);
  out.insert({Label::plain(p.entry_label), Label::plain(init(p.body))});
  for (auto l : final(p.body)) out.insert({Label::plain(l), Label::plain(p.exit_label)});
  return out;
}

// ---------------------------------------------------------------------------
// Call/return splitting

FlowSet TaggedProgram::untagged() const {
  FlowSet out;
  for (const auto& f : flows) out.insert(f.flow());
  return out;
}

TaggedProgram build_tagged_flows(LabeledProgram p, TaggedFlowOptions options) {
  std::set<std::uint32_t> call_labels;
  for (const auto& [l, b] : p.labeling) {
    if (b.kind != Block::Kind::call) continue;
    if (!b.callee) {
      throw SemanticError("call at label " + to_string(l) +
                          " targets undeclared procedure '" + b.target + "'");
    }
    call_labels.insert(l.number);
  }

  auto as_source = [&](Label l) {
    return call_labels.contains(l.number) ? Label::ret(l.number) : l;
  };
  auto as_target = [&](Label l) {
    return call_labels.contains(l.number) ? Label::call(l.number) : l;
  };

  TaggedProgram out;
  FlowSet plain = flow(p.ast.main);
  for (const auto& proc : p.ast.procedures) {
    FlowSet f = flow(proc);
    plain.insert(f.begin(), f.end());
  }
  for (const auto& f : plain) {
    out.flows.insert({as_source(f.from), as_target(f.to), FlowKind::normal});
  }

  for (auto n : call_labels) {
    const Label original = Label::plain(n);
    Block b = p.labeling.at(original);
    const auto& callee = *b.callee;
    out.flows.insert({Label::call(n), Label::plain(callee.entry_label), FlowKind::call});
    out.flows.insert({Label::plain(callee.exit_label), Label::ret(n), FlowKind::ret});
    if (options.call_to_return_edge) {
      out.flows.insert({Label::call(n), Label::ret(n), FlowKind::normal});
    }
    p.labeling.erase(original);
    p.labeling.emplace(Label::call(n), b);
    p.labeling.emplace(Label::ret(n), std::move(b));
    p.rho[Label::call(n)] = original;
    p.rho[Label::ret(n)] = original;
  }

  out.init = as_target(Label::plain(init(p.ast.main)));
  for (auto l : final(p.ast.main)) out.finals.insert(as_source(Label::plain(l)));
  out.program = std::move(p);
  return out;
}

TaggedProgram load(std::string_view source, TaggedFlowOptions options) {
  return build_tagged_flows(label_program(parse(source)), options);
}

// ---------------------------------------------------------------------------
// Rendering

std::string to_string(const Block& b) {
  using K = Block::Kind;
  switch (b.kind) {
    case K::assign:
      return b.var + " := " + to_string(b.expr);
    case K::read:
      return "read(" + b.var + ")";
    case K::condition:
      return to_string(b.expr);
    case K::call:
      return "call " + b.target + "(" +
             to_string(b.expr) + ", " + b.var + ")";
    case K::entry:
      return "is " + b.procedure;
    case K::exit:
      return "end " + b.procedure;
  }
  return "";
}

namespace {

void render(const Command& c, std::ostream& out, int indent) {
  using K = Command::Kind;
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  auto nested = [&](const Command& sub) {
    if (sub.kind == K::seq) {
      out << " (\n";
      render(sub, out, indent + 1);
      out << "\n" << pad << ")";
    } else {
      out << "\n";
      render(sub, out, indent + 1);
    }
  };
  switch (c.kind) {
    case K::seq:
      for (std::size_t i = 0; i < c.body.size(); ++i) {
        if (i) out << ";\n";
        render(c.body[i], out, indent);
      }
      return;
    case K::assign:
      out << pad << "[" << c.var << " := " << to_string(c.expr) << "]_" << c.label;
      return;
    case K::read:
      out << pad << "[read(" << c.var << ")]_" << c.label;
      return;
    case K::call:
      out << pad << "[call " << c.proc << "(" << to_string(c.expr) << ", " << c.var
          << ")]_" << c.label;
      return;
    case K::if_:
      out << pad << "if [" << to_string(c.expr) << "]_" << c.label << " then";
      nested(c.body[0]);
      out << "\n" << pad << "else";
      nested(c.body[1]);
      return;
    case K::while_:
      out << pad << "while [" << to_string(c.expr) << "]_" << c.label << " do";
      nested(c.body[0]);
      return;
  }
}

}  // namespace

std::string render_labeled(const Ast& ast) {
  std::ostringstream out;
  for (const auto& p : ast.procedures) {
    out << "proc " << p.name << "(val " << p.value_param << ", res " << p.result_param
        << ") is_" << p.entry_label << "\n";
    render(p.body, out, 1);
    out << "\nend_" << p.exit_label << "\n";
  }
  render(ast.main, out, 0);
  out << "\n";
  return out.str();
}

}  // namespace monoflow::simplehal
