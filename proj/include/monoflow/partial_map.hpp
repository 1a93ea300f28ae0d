#pragma once

// Finite partial functions S ⇀ M into a value lattice M, and the two orders
// defined over them:
//
//   straightforward   f ⊑ g  iff dom f ⊆ dom g and f(s) ⊑ g(s) on dom f
//   derived-total     f ≼ g  iff f(s) ⊑ ↑g(s) on dom f
//
// ≼ is only a preorder on raw partial maps; it becomes a partial order on the
// classes of =↑ (equal lifts), represented here by EqUpClass.

#include <map>
#include <memory>
#include <set>
#include <utility>
#include <vector>

#include "monoflow/error.hpp"
#include "monoflow/lattice.hpp"

namespace monoflow {

template <class Key>
class PartialMap {
 public:
  using Universe = std::shared_ptr<const std::vector<Key>>;
  using Entries = std::map<Key, Value>;

  explicit PartialMap(LatticePtr values, Universe universe = nullptr)
      : values_(std::move(values)), universe_(std::move(universe)) {}

  PartialMap(LatticePtr values, Entries entries, Universe universe = nullptr)
      : values_(std::move(values)), universe_(std::move(universe)) {
    for (auto& [k, v] : entries) set(k, std::move(v));
  }

  const Lattice& lattice() const { return *values_; }
  const LatticePtr& lattice_ptr() const { return values_; }
  const Universe& universe() const { return universe_; }
  const Entries& entries() const { return entries_; }

  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  bool defined_at(const Key& k) const { return entries_.contains(k); }

  const Value* find(const Key& k) const {
    auto it = entries_.find(k);
    return it == entries_.end() ? nullptr : &it->second;
  }

  /// ↑f(k): the bound value, or ⊥ when k is outside the domain.
  Value lifted_at(const Key& k) const {
    const Value* v = find(k);
    return v ? *v : values_->bottom();
  }

  std::set<Key> domain() const {
    std::set<Key> out;
    for (const auto& [k, v] : entries_) out.insert(k);
    return out;
  }

  void set(const Key& k, Value v) {
    if (!values_->contains(v)) {
      throw DomainError("value is not an element of the '" + values_->name() +
                        "' lattice");
    }
    entries_.insert_or_assign(k, std::move(v));
  }

  void erase(const Key& k) { entries_.erase(k); }

  /// Structural equality of the graphs; the lattice is assumed shared.
  friend bool operator==(const PartialMap& a, const PartialMap& b) {
    return a.entries_ == b.entries_;
  }
  friend bool operator!=(const PartialMap& a, const PartialMap& b) { return !(a == b); }

 private:
  LatticePtr values_;
  Universe universe_;
  Entries entries_;
};

/// Equivalence class of partial maps under =↑. The representative never
/// binds a key to ⊥, so class equality is structural.
template <class Key>
class EqUpClass {
 public:
  explicit EqUpClass(PartialMap<Key> representative) : rep_(std::move(representative)) {
    std::vector<Key> dead;
    const Value bottom = rep_.lattice().bottom();
    for (const auto& [k, v] : rep_.entries()) {
      if (v == bottom) dead.push_back(k);
    }
    for (const auto& k : dead) rep_.erase(k);
  }

  const PartialMap<Key>& representative() const { return rep_; }

  friend bool operator==(const EqUpClass& a, const EqUpClass& b) { return a.rep_ == b.rep_; }
  friend bool operator!=(const EqUpClass& a, const EqUpClass& b) { return !(a == b); }

 private:
  PartialMap<Key> rep_;
};

namespace detail {

template <class Key>
const std::vector<Key>& require_universe(const PartialMap<Key>& f, const char* op) {
  if (!f.universe()) {
    throw ConfigurationError(std::string(op) + " needs a finite key universe");
  }
  return *f.universe();
}

template <class Key>
const typename PartialMap<Key>::Universe& common_universe(const PartialMap<Key>& f,
                                                          const PartialMap<Key>& g) {
  return f.universe() ? f.universe() : g.universe();
}

}  // namespace detail

/// ↑f: the total map over the key universe, ⊥ outside dom f.
template <class Key>
PartialMap<Key> lift(const PartialMap<Key>& f) {
  const auto& universe = detail::require_universe(f, "lift");
  PartialMap<Key> out(f.lattice_ptr(), f.universe());
  for (const auto& k : universe) out.set(k, f.lifted_at(k));
  // Keys bound in f but missing from the declared universe stay bound.
  for (const auto& [k, v] : f.entries()) {
    if (!out.defined_at(k)) out.set(k, v);
  }
  return out;
}

template <class Key>
bool leq_partial(const PartialMap<Key>& f, const PartialMap<Key>& g) {
  const Lattice& m = f.lattice();
  for (const auto& [k, v] : f.entries()) {
    const Value* w = g.find(k);
    if (!w || !m.leq(v, *w)) return false;
  }
  return true;
}

/// f ⊔ g over dom f ∪ dom g, with ↑f(s) ⊔ ↑g(s) at every point.
template <class Key>
PartialMap<Key> join_partial(const PartialMap<Key>& f, const PartialMap<Key>& g) {
  const Lattice& m = f.lattice();
  PartialMap<Key> out(f.lattice_ptr(), detail::common_universe(f, g));
  for (const auto& [k, v] : f.entries()) out.set(k, m.join(v, g.lifted_at(k)));
  for (const auto& [k, w] : g.entries()) {
    if (!f.defined_at(k)) out.set(k, m.join(m.bottom(), w));
  }
  return out;
}

/// f ⊓ g over dom f ∩ dom g. Throws UnsupportedOperation if M has no meet.
template <class Key>
PartialMap<Key> meet_partial(const PartialMap<Key>& f, const PartialMap<Key>& g) {
  const Lattice& m = f.lattice();
  if (!m.has_meet()) {
    throw UnsupportedOperation("lattice '" + m.name() + "' has no meet");
  }
  PartialMap<Key> out(f.lattice_ptr(), detail::common_universe(f, g));
  for (const auto& [k, v] : f.entries()) {
    if (const Value* w = g.find(k)) out.set(k, m.meet(v, *w));
  }
  return out;
}

/// f ≼ g: every binding of f is below the lift of g.
template <class Key>
bool leq_derived(const PartialMap<Key>& f, const PartialMap<Key>& g) {
  const Lattice& m = f.lattice();
  for (const auto& [k, v] : f.entries()) {
    if (!m.leq(v, g.lifted_at(k))) return false;
  }
  return true;
}

/// f =↑ g, i.e. ↑f = ↑g. Decided on the union of domains, which is where the
/// lifts can differ.
template <class Key>
bool eq_up(const PartialMap<Key>& f, const PartialMap<Key>& g) {
  for (const auto& [k, v] : f.entries()) {
    if (v != g.lifted_at(k)) return false;
  }
  for (const auto& [k, w] : g.entries()) {
    if (w != f.lifted_at(k)) return false;
  }
  return true;
}

/// f ⋎ g: join where both are defined, whichever side is defined elsewhere.
template <class Key>
PartialMap<Key> join_derived(const PartialMap<Key>& f, const PartialMap<Key>& g) {
  const Lattice& m = f.lattice();
  PartialMap<Key> out(f.lattice_ptr(), detail::common_universe(f, g));
  for (const auto& [k, v] : f.entries()) {
    const Value* w = g.find(k);
    out.set(k, w ? m.join(v, *w) : v);
  }
  for (const auto& [k, w] : g.entries()) {
    if (!f.defined_at(k)) out.set(k, w);
  }
  return out;
}

template <class Key>
EqUpClass<Key> alpha(const PartialMap<Key>& f) {
  return EqUpClass<Key>(f);
}

/// The ⊑-greatest member of the class: the lift of its representative.
template <class Key>
PartialMap<Key> gamma(const EqUpClass<Key>& c) {
  detail::require_universe(c.representative(), "gamma");
  return lift(c.representative());
}

/// ≼ on classes (a genuine partial order there).
template <class Key>
bool leq_class(const EqUpClass<Key>& c, const EqUpClass<Key>& d) {
  return leq_derived(c.representative(), d.representative());
}

template <class Key>
EqUpClass<Key> join_class(const EqUpClass<Key>& c, const EqUpClass<Key>& d) {
  return EqUpClass<Key>(join_derived(c.representative(), d.representative()));
}

/// Pointwise meet of the lifts. Outside the common domain one side is ⊥, so
/// only the intersection survives.
template <class Key>
EqUpClass<Key> meet_class(const EqUpClass<Key>& c, const EqUpClass<Key>& d) {
  return EqUpClass<Key>(meet_partial(c.representative(), d.representative()));
}

}  // namespace monoflow
