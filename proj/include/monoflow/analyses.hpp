#pragma once

// Bundled analyses over SimpleHal programs: reaching definitions (forward),
// live variables (backward), constant propagation (forward).

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "monoflow/framework.hpp"
#include "monoflow/simplehal.hpp"

namespace monoflow::analyses {

class Analysis {
 public:
  virtual ~Analysis() = default;

  virtual std::string name() const = 0;
  virtual Direction direction() const = 0;
  virtual const LatticePtr& lattice() const = 0;
  virtual Value initial() const = 0;
  virtual Value transfer(Label at, FlowKind kind, const Value& in) const = 0;

  const simplehal::TaggedProgram& program() const { return program_; }
  std::string render(const Value& v) const { return lattice()->render(v); }

  /// The implicit framework over this analysis' program. The transfer
  /// function keeps `self` alive.
  static ImplicitFramework framework(const std::shared_ptr<const Analysis>& self);

 protected:
  explicit Analysis(simplehal::TaggedProgram program) : program_(std::move(program)) {}

  const simplehal::Block& block(Label at) const { return program_.program.block(at); }

 private:
  simplehal::TaggedProgram program_;
};

using AnalysisPtr = std::shared_ptr<const Analysis>;

/// Definitions are tokens "(x,3)"; "(x,?)" is the unknown definition at
/// program entry.
class ReachingDefinitions final : public Analysis {
 public:
  explicit ReachingDefinitions(simplehal::TaggedProgram program);

  static std::string token(const std::string& var, std::optional<std::uint32_t> label);

  std::string name() const override { return "rd"; }
  Direction direction() const override { return Direction::forward; }
  const LatticePtr& lattice() const override { return lattice_; }
  Value initial() const override;
  Value transfer(Label at, FlowKind kind, const Value& in) const override;

 private:
  Value kill_gen(const Value& in, const std::string& var, std::uint32_t label) const;
  Value kill(const Value& in, const std::string& var) const;

  LatticePtr lattice_;
};

class LiveVariables final : public Analysis {
 public:
  explicit LiveVariables(simplehal::TaggedProgram program);

  std::string name() const override { return "lv"; }
  Direction direction() const override { return Direction::backward; }
  const LatticePtr& lattice() const override { return lattice_; }
  Value initial() const override { return TokenSet{}; }
  Value transfer(Label at, FlowKind kind, const Value& in) const override;

 private:
  LatticePtr lattice_;
};

class ConstantPropagation final : public Analysis {
 public:
  explicit ConstantPropagation(simplehal::TaggedProgram program);

  std::string name() const override { return "cp"; }
  Direction direction() const override { return Direction::forward; }
  const LatticePtr& lattice() const override { return lattice_; }
  Value initial() const override;
  Value transfer(Label at, FlowKind kind, const Value& in) const override;

  const MapLattice& map_lattice() const { return *map_; }

 private:
  /// Every procedure parameter reset to ⊤.
  Value forget_locals(const Value& in) const;

  std::shared_ptr<const MapLattice> map_;
  LatticePtr lattice_;
};

/// Abstract evaluation over the flat lattice: strict in ⊥, ⊤ absorbs, and
/// overflow or division by zero gives ⊤. Booleans evaluate to 0/1.
Flat evaluate(const simplehal::Expr& e, const std::function<Flat(const std::string&)>& env);

/// "rd", "lv", "cp".
std::vector<std::string> names();

/// Builds the named analysis for `program`; nullptr for an unknown name.
AnalysisPtr make(const std::string& name, simplehal::TaggedProgram program);

}  // namespace monoflow::analyses
