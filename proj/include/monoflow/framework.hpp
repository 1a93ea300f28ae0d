#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "monoflow/label.hpp"
#include "monoflow/lattice.hpp"
#include "monoflow/partial_map.hpp"

namespace monoflow {

/// A call string: pending call points, most recent last. The empty string is
/// the context of the program's start.
struct Context {
  std::vector<Label> calls;

  bool empty() const { return calls.empty(); }
  std::size_t depth() const { return calls.size(); }

  friend auto operator<=>(const Context&, const Context&) = default;
};

/// "[]", "[2_c]", "[2_c,5_c]".
std::string to_string(const Context& c);

/// A dataflow value per context: the embellished property space Δ ⇀ L.
using ContextMap = PartialMap<Context>;

enum class Direction : std::uint8_t { forward, backward };

const char* to_string(Direction d);

/// The single user transfer function. `at` names the block being crossed;
/// split call/return labels are passed as-is so an analysis can tell the two
/// halves apart, and ρ(at) names the original call block. Must be monotone
/// in the value argument.
using TransferFunction = std::function<Value(Label at, FlowKind kind, const Value& in)>;

/// The minimal user description of an analysis.
struct ImplicitFramework {
  LatticePtr lattice;
  /// Start labels: init for forward analyses, the final labels for backward.
  std::set<Label> start_labels;
  /// Tagged flows in program order; backward analyses are reversed by
  /// embellish().
  std::set<TaggedFlow> flows;
  Value initial;
  TransferFunction transfer;
  Direction direction = Direction::forward;
};

struct WellFormednessReport {
  /// Call flows with no return flow into the partner of their source.
  std::vector<TaggedFlow> unmatched_calls;

  bool ok() const { return unmatched_calls.empty(); }
  std::string describe() const;
};

/// Every call flow out of ℓ_c needs a return flow into ℓ_r, and vice versa
/// when the flows are reversed.
WellFormednessReport check_wellformed(const std::set<TaggedFlow>& flows);

struct EmbellishOptions {
  /// Longest call string allowed; a deeper push raises ContextDepthExceeded.
  std::size_t context_bound = 16;
  /// Keep every value in the empty context, i.e. a context-insensitive run.
  bool collapse_contexts = false;
};

/// (L̂, S, F, Γ, λ̂, F̂) inferred from an ImplicitFramework. Immutable.
class EmbellishedFramework {
 public:
  const Lattice& value_lattice() const { return *lattice_; }
  const LatticePtr& value_lattice_ptr() const { return lattice_; }
  const std::set<Label>& start_labels() const { return start_labels_; }
  /// F with Γ, in analysis direction.
  const std::vector<TaggedFlow>& flows() const { return flows_; }
  /// λ̂ = {Λ ↦ λ}.
  const ContextMap& initial() const { return initial_; }
  ContextMap bottom() const { return ContextMap(lattice_); }
  std::size_t context_bound() const { return options_.context_bound; }
  bool collapsed() const { return options_.collapse_contexts; }
  Direction direction() const { return direction_; }

  /// Every label occurring in F or S.
  const std::set<Label>& labels() const { return labels_; }
  /// Indices into flows() of the flows leaving `l`.
  const std::vector<std::size_t>& outgoing(Label l) const;
  /// Indices into flows() of the flows entering `l`.
  const std::vector<std::size_t>& incoming(Label l) const;

  /// f̂ᴺ_ℓ: transfer in every context, domain unchanged.
  ContextMap apply_normal(Label at, const ContextMap& v) const;
  /// f̂ᶜ_ℓ: transfer, then push the call point of `at`.
  ContextMap apply_call(Label at, const ContextMap& v) const;
  /// f̂ᴿ: keep contexts ending in the call point paired with `return_point`,
  /// pop it, then transfer.
  ContextMap apply_return(Label from, Label return_point, const ContextMap& v) const;
  /// f^Γ(ℓ,ℓ′)_ℓ for a flow of this framework.
  ContextMap apply(const TaggedFlow& f, const ContextMap& v) const;

  Value transfer(Label at, FlowKind kind, const Value& in) const {
    return transfer_(at, kind, in);
  }

 private:
  friend EmbellishedFramework embellish(ImplicitFramework, EmbellishOptions);

  EmbellishedFramework(LatticePtr lattice, ContextMap initial)
      : lattice_(std::move(lattice)), initial_(std::move(initial)) {}

  LatticePtr lattice_;
  std::set<Label> start_labels_;
  std::vector<TaggedFlow> flows_;
  ContextMap initial_;
  TransferFunction transfer_;
  Direction direction_ = Direction::forward;
  EmbellishOptions options_;
  std::set<Label> labels_;
  std::map<Label, std::vector<std::size_t>> outgoing_;
  std::map<Label, std::vector<std::size_t>> incoming_;
};

/// Reverses the flows of backward analyses (swapping the C and R tags so a
/// call is still entered through a push), checks well-formedness, and builds
/// λ̂ and F̂. Throws WellFormednessError, or std::invalid_argument if the
/// context bound is zero.
EmbellishedFramework embellish(ImplicitFramework impl, EmbellishOptions options = {});

struct MonotonicityViolation {
  Label at;
  FlowKind kind;
  Value smaller;
  Value larger;
};

/// Checks transfer(ℓ, kind, ·) on every ordered pair of `samples` for each
/// (label, kind) the flows use.
std::vector<MonotonicityViolation> sample_monotonicity(const ImplicitFramework& impl,
                                                        const std::vector<Value>& samples);

}  // namespace monoflow
