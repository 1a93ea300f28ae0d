#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "monoflow/framework.hpp"

namespace monoflow {

/// Successor key of an exit table; nullopt is the `end` placeholder used for
/// labels without successors.
using Successor = std::optional<Label>;

std::string to_string(const Successor& s);

struct AnalysisResult {
  /// MFP∘: the value entering each label.
  std::map<Label, ContextMap> entry;
  /// MFP•: per label, the value sent along each outgoing flow (or to end).
  std::map<Label, std::map<Successor, ContextMap>> exit;
  /// Step-2 iterations for solve(); full sweeps for naive_fixpoint().
  std::size_t iterations = 0;
  /// Step-2 iterations that strictly grew some Analysis[ℓ′].
  std::size_t increases = 0;
  std::vector<std::string> warnings;

  /// Structural equality of the entry and exit tables.
  bool same_tables(const AnalysisResult& other) const {
    return entry == other.entry && exit == other.exit;
  }
};

struct SolveOptions {
  /// Order in which the flows are consed onto the initial worklist, as a
  /// permutation of flow indices. Empty means index order.
  std::vector<std::size_t> seed_order;
  /// When set, Analysis[ℓ] ⊑ bound[ℓ] is asserted after every step-2
  /// iteration (std::logic_error on failure). Meant for the least fixpoint.
  const std::map<Label, ContextMap>* invariant_bound = nullptr;
};

/// The worklist algorithm: seed, iterate to stability, then read off the
/// entry and exit tables.
AnalysisResult solve(const EmbellishedFramework& fw, const SolveOptions& options = {});

/// Round-robin evaluation of the dataflow equations from ⊥ until nothing
/// changes. Slow; used as an oracle.
AnalysisResult naive_fixpoint(const EmbellishedFramework& fw);

struct ResidualViolation {
  Label from;
  Label to;   // equal to `from` for a start-label violation
  std::string message;
};

/// Checks f(entry[ℓ]) ⊑ entry[ℓ′] on every flow and λ̂ ⊑ entry[s] on every
/// start label. Empty means the result is a post-fixpoint.
std::vector<ResidualViolation> verify_df_residual(const EmbellishedFramework& fw,
                                                  const AnalysisResult& r);

/// Upper bound on step-2 iterations: |F| × (1 + Σ_ℓ |Δ(ℓ)| × (height(L) + 1)),
/// with Δ(ℓ) the contexts observed at ℓ in the result.
std::size_t iteration_bound(const EmbellishedFramework& fw, const AnalysisResult& r);

}  // namespace monoflow
