#include "monoflow/framework.hpp"

#include <stdexcept>

#include "monoflow/error.hpp"

namespace monoflow {

std::string to_string(const Context& c) {
  std::string out = "[";
  for (std::size_t i = 0; i < c.calls.size(); ++i) {
    if (i) out += ",";
    out += to_string(c.calls[i]);
  }
  return out + "]";
}

const char* to_string(Direction d) {
  return d == Direction::forward ? "forward" : "backward";
}

std::string WellFormednessReport::describe() const {
  if (ok()) return "ok";
  std::string out = "calls without a matching return:";
  for (const auto& f : unmatched_calls) {
    out += " (" + to_string(f.from) + "," + to_string(f.to) + ")";
  }
  return out;
}

WellFormednessReport check_wellformed(const std::set<TaggedFlow>& flows) {
  std::set<Label> returned_to;
  for (const auto& f : flows) {
    if (f.kind == FlowKind::ret) returned_to.insert(f.to);
  }
  WellFormednessReport report;
  for (const auto& f : flows) {
    if (f.kind != FlowKind::call) continue;
    if (!f.from.is_split() || !returned_to.contains(f.from.partner())) {
      report.unmatched_calls.push_back(f);
    }
  }
  return report;
}

namespace {

const std::vector<std::size_t> kNoFlows;

}  // namespace

const std::vector<std::size_t>& EmbellishedFramework::outgoing(Label l) const {
  auto it = outgoing_.find(l);
  return it == outgoing_.end() ? kNoFlows : it->second;
}

const std::vector<std::size_t>& EmbellishedFramework::incoming(Label l) const {
  auto it = incoming_.find(l);
  return it == incoming_.end() ? kNoFlows : it->second;
}

ContextMap EmbellishedFramework::apply_normal(Label at, const ContextMap& v) const {
  ContextMap out(lattice_);
  for (const auto& [delta, value] : v.entries()) {
    out.set(delta, transfer_(at, FlowKind::normal, value));
  }
  return out;
}

ContextMap EmbellishedFramework::apply_call(Label at, const ContextMap& v) const {
  if (!at.is_split()) {
    throw std::invalid_argument("call flow leaves " + to_string(at) +
                                ", which is not a call or return point");
  }
  const Label site = at.call_point();
  ContextMap out(lattice_);
  for (const auto& [delta, value] : v.entries()) {
    Value transferred = transfer_(at, FlowKind::call, value);
    if (options_.collapse_contexts) {
      // Several contexts cannot arise here: everything stays at Λ.
      out.set(delta, std::move(transferred));
      continue;
    }
    if (delta.depth() >= options_.context_bound) {
      throw ContextDepthExceeded(to_string(site), to_string(delta), options_.context_bound);
    }
    Context pushed = delta;
    pushed.calls.push_back(site);
    out.set(pushed, std::move(transferred));
  }
  return out;
}

ContextMap EmbellishedFramework::apply_return(Label from, Label return_point,
                                              const ContextMap& v) const {
  (void)from;
  if (!return_point.is_split()) {
    throw std::invalid_argument("return flow enters " + to_string(return_point) +
                                ", which is not a call or return point");
  }
  const Label site = return_point.call_point();
  ContextMap out(lattice_);
  for (const auto& [delta, value] : v.entries()) {
    if (options_.collapse_contexts) {
      out.set(delta, transfer_(return_point, FlowKind::ret, value));
      continue;
    }
    if (delta.empty() || delta.calls.back() != site) continue;
    Context popped = delta;
    popped.calls.pop_back();
    out.set(popped, transfer_(return_point, FlowKind::ret, value));
  }
  return out;
}

ContextMap EmbellishedFramework::apply(const TaggedFlow& f, const ContextMap& v) const {
  switch (f.kind) {
    case FlowKind::normal:
      return apply_normal(f.from, v);
    case FlowKind::call:
      return apply_call(f.from, v);
    case FlowKind::ret:
      return apply_return(f.from, f.to, v);
  }
  throw std::logic_error("unknown flow kind");
}

EmbellishedFramework embellish(ImplicitFramework impl, EmbellishOptions options) {
  if (options.context_bound < 1) {
    throw std::invalid_argument("context bound must be at least 1");
  }
  if (!impl.lattice) throw std::invalid_argument("framework has no lattice");
  if (!impl.transfer) throw std::invalid_argument("framework has no transfer function");
  if (impl.start_labels.empty()) throw std::invalid_argument("framework has no start labels");

  std::set<TaggedFlow> flows;
  if (impl.direction == Direction::forward) {
    flows = std::move(impl.flows);
  } else {
    for (const auto& f : impl.flows) {
      FlowKind kind = f.kind;
      if (kind == FlowKind::call) {
        kind = FlowKind::ret;
      } else if (kind == FlowKind::ret) {
        kind = FlowKind::call;
      }
      flows.insert({f.to, f.from, kind});
    }
  }

  const auto report = check_wellformed(flows);
  if (!report.ok()) throw WellFormednessError(report.describe());

  ContextMap initial(impl.lattice);
  initial.set(Context{}, impl.initial);

  EmbellishedFramework fw(impl.lattice, std::move(initial));
  fw.start_labels_ = std::move(impl.start_labels);
  fw.flows_.assign(flows.begin(), flows.end());
  fw.transfer_ = std::move(impl.transfer);
  fw.direction_ = impl.direction;
  fw.options_ = options;
  fw.labels_ = fw.start_labels_;
  for (std::size_t i = 0; i < fw.flows_.size(); ++i) {
    const auto& f = fw.flows_[i];
    fw.labels_.insert(f.from);
    fw.labels_.insert(f.to);
    fw.outgoing_[f.from].push_back(i);
    fw.incoming_[f.to].push_back(i);
  }
  return fw;
}

std::vector<MonotonicityViolation> sample_monotonicity(const ImplicitFramework& impl,
                                                        const std::vector<Value>& samples) {
  std::set<std::pair<Label, FlowKind>> uses;
  for (const auto& f : impl.flows) {
    uses.insert({f.from, FlowKind::normal});
    uses.insert({f.to, FlowKind::normal});
    if (f.kind == FlowKind::call) uses.insert({f.from, FlowKind::call});
    if (f.kind == FlowKind::ret) uses.insert({f.to, FlowKind::ret});
  }
  const Lattice& l = *impl.lattice;
  std::vector<MonotonicityViolation> out;
  for (const auto& [at, kind] : uses) {
    for (const auto& a : samples) {
      for (const auto& b : samples) {
        if (!l.leq(a, b)) continue;
        if (!l.leq(impl.transfer(at, kind, a), impl.transfer(at, kind, b))) {
          out.push_back({at, kind, a, b});
        }
      }
    }
  }
  return out;
}

}  // namespace monoflow
