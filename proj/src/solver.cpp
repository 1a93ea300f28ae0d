#include "monoflow/solver.hpp"

#include <algorithm>
#include <stdexcept>

namespace monoflow {

std::string to_string(const Successor& s) { return s ? to_string(*s) : "end"; }

namespace {

std::vector<std::size_t> checked_seed_order(const EmbellishedFramework& fw,
                                            const SolveOptions& options) {
  const std::size_t n = fw.flows().size();
  std::vector<std::size_t> order = options.seed_order;
  if (order.empty()) {
    order.resize(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    return order;
  }
  std::vector<std::size_t> sorted = order;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted.size() != n || sorted[i] != i) {
      throw std::invalid_argument("seed order is not a permutation of the flows");
    }
  }
  return order;
}

ContextMap initial_at(const EmbellishedFramework& fw, Label l) {
  return fw.start_labels().contains(l) ? fw.initial() : fw.bottom();
}

// Fig. 6: outputs along every outgoing flow, or to `end` when there is none.
void fill_exits(const EmbellishedFramework& fw, AnalysisResult& r) {
  for (const auto& [l, value] : r.entry) {
    auto& outputs = r.exit[l];
    const auto& out = fw.outgoing(l);
    if (out.empty()) {
      outputs.emplace(std::nullopt, fw.apply_normal(l, value));
      continue;
    }
    for (std::size_t i : out) {
      const auto& f = fw.flows()[i];
      outputs.emplace(f.to, fw.apply(f, value));
    }
  }
}

}  // namespace

AnalysisResult solve(const EmbellishedFramework& fw, const SolveOptions& options) {
  const auto& flows = fw.flows();
  AnalysisResult r;

  // Step 1.
  std::vector<std::size_t> worklist;   // back() is the head
  for (std::size_t i : checked_seed_order(fw, options)) worklist.push_back(i);
  std::map<Label, ContextMap>& analysis = r.entry;
  for (Label l : fw.labels()) analysis.emplace(l, initial_at(fw, l));

  // Last (input, output) seen per flow, to spot non-monotone transfers.
  std::vector<std::optional<std::pair<ContextMap, ContextMap>>> seen(flows.size());
  std::vector<bool> warned(flows.size(), false);

  // Step 2.
  while (!worklist.empty()) {
    const std::size_t i = worklist.back();
    worklist.pop_back();
    ++r.iterations;
    const TaggedFlow& f = flows[i];
    const ContextMap& in = analysis.at(f.from);
    ContextMap out = fw.apply(f, in);

    if (seen[i] && !warned[i] && leq_partial(seen[i]->first, in) &&
        !leq_partial(seen[i]->second, out)) {
      warned[i] = true;
      r.warnings.push_back("transfer along (" + to_string(f.from) + "," + to_string(f.to) +
                           ") is not monotone");
    }
    seen[i] = std::make_pair(in, out);

    ContextMap& target = analysis.at(f.to);
    if (!leq_partial(out, target)) {
      target = join_partial(target, out);
      ++r.increases;
      for (std::size_t j : fw.outgoing(f.to)) worklist.push_back(j);
    }

    if (options.invariant_bound) {
      auto it = options.invariant_bound->find(f.to);
      if (it == options.invariant_bound->end() || !leq_partial(target, it->second)) {
        throw std::logic_error("loop invariant violated at " + to_string(f.to));
      }
    }
  }

  // Step 3.
  fill_exits(fw, r);
  return r;
}

AnalysisResult naive_fixpoint(const EmbellishedFramework& fw) {
  AnalysisResult r;
  for (Label l : fw.labels()) r.entry.emplace(l, fw.bottom());

  bool changed = true;
  while (changed) {
    changed = false;
    ++r.iterations;
    for (Label l : fw.labels()) {
      ContextMap value = initial_at(fw, l);
      for (std::size_t i : fw.incoming(l)) {
        const auto& f = fw.flows()[i];
        value = join_partial(value, fw.apply(f, r.entry.at(f.from)));
      }
      if (value != r.entry.at(l)) {
        r.entry.at(l) = std::move(value);
        changed = true;
      }
    }
  }
  fill_exits(fw, r);
  return r;
}

std::vector<ResidualViolation> verify_df_residual(const EmbellishedFramework& fw,
                                                  const AnalysisResult& r) {
  std::vector<ResidualViolation> out;
  const ContextMap none = fw.bottom();
  auto entry = [&](Label l) -> const ContextMap& {
    auto it = r.entry.find(l);
    return it == r.entry.end() ? none : it->second;
  };
  for (Label s : fw.start_labels()) {
    if (!leq_partial(fw.initial(), entry(s))) {
      out.push_back({s, s, "initial value not below entry of start label " + to_string(s)});
    }
  }
  for (const auto& f : fw.flows()) {
    if (!leq_partial(fw.apply(f, entry(f.from)), entry(f.to))) {
      out.push_back({f.from, f.to,
                     "flow (" + to_string(f.from) + "," + to_string(f.to) + ") not stable"});
    }
  }
  return out;
}

std::size_t iteration_bound(const EmbellishedFramework& fw, const AnalysisResult& r) {
  const std::size_t h = fw.value_lattice().height();
  std::size_t increases = 0;
  for (const auto& [l, value] : r.entry) increases += value.size() * (h + 1);
  return fw.flows().size() * (1 + increases);
}

}  // namespace monoflow
