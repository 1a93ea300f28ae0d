#include "monoflow/analyses.hpp"

#include <limits>

#include "monoflow/error.hpp"

namespace monoflow::analyses {

using simplehal::Block;
using simplehal::Expr;

ImplicitFramework Analysis::framework(const std::shared_ptr<const Analysis>& self) {
  ImplicitFramework impl;
  impl.lattice = self->lattice();
  const auto& p = self->program();
  if (self->direction() == Direction::forward) {
    impl.start_labels = {p.init};
  } else {
    impl.start_labels = p.finals;
  }
  impl.flows = p.flows;
  impl.initial = self->initial();
  impl.direction = self->direction();
  impl.transfer = [self](Label at, FlowKind kind, const Value& in) {
    return self->transfer(at, kind, in);
  };
  return impl;
}

// ---------------------------------------------------------------------------
// Reaching definitions

std::string ReachingDefinitions::token(const std::string& var,
                                       std::optional<std::uint32_t> label) {
  return "(" + var + "," + (label ? std::to_string(*label) : std::string("?")) + ")";
}

ReachingDefinitions::ReachingDefinitions(simplehal::TaggedProgram program)
    : Analysis(std::move(program)) {
  const auto& lp = this->program().program;
  TokenSet universe;
  for (const auto& x : lp.variables) universe.insert(token(x, std::nullopt));
  for (const auto& [l, b] : lp.labeling) {
    switch (b.kind) {
      case Block::Kind::assign:
      case Block::Kind::read:
      case Block::Kind::call:
        universe.insert(token(b.var, l.number));
        break;
      default:
        break;
    }
    if (b.kind == Block::Kind::call && b.callee) {
      universe.insert(token(b.callee->value_param, b.callee->entry_label));
    }
  }
  lattice_ = std::make_shared<PowersetLattice>(std::move(universe));
}

Value ReachingDefinitions::initial() const {
  TokenSet out;
  for (const auto& x : program().program.variables) out.insert(token(x, std::nullopt));
  return out;
}

Value ReachingDefinitions::kill(const Value& in, const std::string& var) const {
  const std::string prefix = "(" + var + ",";
  TokenSet out;
  for (const auto& t : in.as_set()) {
    if (t.compare(0, prefix.size(), prefix) != 0) out.insert(t);
  }
  return out;
}

Value ReachingDefinitions::kill_gen(const Value& in, const std::string& var,
                                    std::uint32_t label) const {
  TokenSet out = kill(in, var).as_set();
  out.insert(token(var, label));
  return out;
}

Value ReachingDefinitions::transfer(Label at, FlowKind kind, const Value& in) const {
  const Block& b = block(at);
  switch (kind) {
    case FlowKind::call:
      return kill_gen(in, b.callee->value_param, b.callee->entry_label);
    case FlowKind::ret:
      return kill_gen(in, b.var, at.number);
    case FlowKind::normal:
      break;
  }
  switch (b.kind) {
    case Block::Kind::assign:
    case Block::Kind::read:
      return kill_gen(in, b.var, at.number);
    case Block::Kind::call:
      // Only the optional call-to-return edge leaves ℓ_c normally; the
      // result variable is redefined on return.
      return at.point == Label::Point::call ? kill(in, b.var) : in;
    default:
      return in;
  }
}

// ---------------------------------------------------------------------------
// Live variables

LiveVariables::LiveVariables(simplehal::TaggedProgram program) : Analysis(std::move(program)) {
  lattice_ = std::make_shared<PowersetLattice>(this->program().program.variables);
}

Value LiveVariables::transfer(Label at, FlowKind kind, const Value& in) const {
  const Block& b = block(at);
  TokenSet v = in.as_set();
  auto add_fv = [&](const Expr& e) {
    for (auto& x : simplehal::fv(e)) v.insert(x);
  };
  switch (kind) {
    case FlowKind::call:   // ℓ_r → ℓ_x: into the callee from its exit
      v.erase(b.var);
      v.insert(b.callee->result_param);
      return v;
    case FlowKind::ret:    // ℓ_n → ℓ_c: out of the callee through its entry
      v.erase(b.callee->value_param);
      v.erase(b.callee->result_param);
      add_fv(b.expr);
      return v;
    case FlowKind::normal:
      break;
  }
  switch (b.kind) {
    case Block::Kind::assign:
      v.erase(b.var);
      add_fv(b.expr);
      return v;
    case Block::Kind::read:
      v.erase(b.var);
      return v;
    case Block::Kind::condition:
      add_fv(b.expr);
      return v;
    case Block::Kind::call:
      // Reversed call-to-return edge, ℓ_r → ℓ_c.
      if (at.point == Label::Point::ret) {
        v.erase(b.var);
        add_fv(b.expr);
      }
      return v;
    default:
      return v;
  }
}

// ---------------------------------------------------------------------------
// Constant propagation

namespace {

std::vector<std::string> sorted_vars(const simplehal::TaggedProgram& p) {
  return {p.program.variables.begin(), p.program.variables.end()};
}

template <class Op>
Flat checked(Op op) {
  std::int64_t r = 0;
  return op(r) ? Flat::top() : Flat::of(r);
}

Flat truth(bool b) { return Flat::of(b ? 1 : 0); }

}  // namespace

Flat evaluate(const Expr& e, const std::function<Flat(const std::string&)>& env) {
  using K = Expr::Kind;
  switch (e.kind) {
    case K::num:
      return Flat::of(e.number);
    case K::var:
      return env(e.name);
    default:
      break;
  }
  std::vector<Flat> args;
  for (const auto& op : e.operands) args.push_back(evaluate(op, env));
  for (const auto& a : args) {
    if (a.is_bottom()) return Flat::bottom();
  }
  for (const auto& a : args) {
    if (a.is_top()) return Flat::top();
  }
  const std::int64_t a = args[0].constant;
  const std::int64_t b = args.size() > 1 ? args[1].constant : 0;
  switch (e.kind) {
    case K::neg:
      return checked(
          [&](std::int64_t& r) { return __builtin_sub_overflow(std::int64_t{0}, a, &r); });
    case K::add:
      return checked([&](std::int64_t& r) { return __builtin_add_overflow(a, b, &r); });
    case K::sub:
      return checked([&](std::int64_t& r) { return __builtin_sub_overflow(a, b, &r); });
    case K::mul:
      return checked([&](std::int64_t& r) { return __builtin_mul_overflow(a, b, &r); });
    case K::div:
      if (b == 0 || (a == std::numeric_limits<std::int64_t>::min() && b == -1)) {
        return Flat::top();
      }
      return Flat::of(a / b);
    case K::not_:
      return truth(a == 0);
    case K::and_:
      return truth(a != 0 && b != 0);
    case K::or_:
      return truth(a != 0 || b != 0);
    case K::eq:
      return truth(a == b);
    case K::gt:
      return truth(a > b);
    case K::ge:
      return truth(a >= b);
    default:
      return Flat::top();
  }
}

ConstantPropagation::ConstantPropagation(simplehal::TaggedProgram program)
    : Analysis(std::move(program)) {
  map_ = std::make_shared<MapLattice>(sorted_vars(this->program()),
                                      std::make_shared<FlatLattice>());
  lattice_ = map_;
}

Value ConstantPropagation::initial() const { return map_->constant(Flat::top()); }

Value ConstantPropagation::forget_locals(const Value& in) const {
  Value out = in;
  for (const auto& x : program().program.all_locals()) out = map_->with(out, x, Flat::top());
  return out;
}

Value ConstantPropagation::transfer(Label at, FlowKind kind, const Value& in) const {
  const Block& b = block(at);
  auto env = [&](const std::string& x) { return map_->get(in, x).as_flat(); };
  switch (kind) {
    case FlowKind::call: {
      Value out = forget_locals(in);
      return map_->with(out, b.callee->value_param, evaluate(b.expr, env));
    }
    case FlowKind::ret: {
      const Value result = map_->get(in, b.callee->result_param);
      return map_->with(forget_locals(in), b.var, result);
    }
    case FlowKind::normal:
      break;
  }
  switch (b.kind) {
    case Block::Kind::assign:
      return map_->with(in, b.var, evaluate(b.expr, env));
    case Block::Kind::read:
      return map_->with(in, b.var, Flat::top());
    case Block::Kind::call:
      // Call-to-return edge: the result variable comes from the return.
      return at.point == Label::Point::call ? map_->with(in, b.var, Flat::bottom()) : in;
    default:
      return in;
  }
}

// ---------------------------------------------------------------------------

std::vector<std::string> names() { return {"rd", "lv", "cp"}; }

AnalysisPtr make(const std::string& name, simplehal::TaggedProgram program) {
  if (name == "rd") return std::make_shared<ReachingDefinitions>(std::move(program));
  if (name == "lv") return std::make_shared<LiveVariables>(std::move(program));
  if (name == "cp") return std::make_shared<ConstantPropagation>(std::move(program));
  return nullptr;
}

}  // namespace monoflow::analyses
