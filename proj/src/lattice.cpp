#include "monoflow/lattice.hpp"

#include <algorithm>
#include <sstream>

#include "monoflow/error.hpp"

namespace monoflow {

bool operator==(const Value& a, const Value& b) { return a.data_ == b.data_; }
bool operator<(const Value& a, const Value& b) { return a.data_ < b.data_; }

Value Lattice::meet(const Value&, const Value&) const {
  throw UnsupportedOperation("lattice '" + name() + "' has no meet");
}

bool leq_via_join(const Lattice& lattice, const Value& a, const Value& b) {
  return lattice.join(a, b) == b;
}

// ---------------------------------------------------------------------------
// Powerset

PowersetLattice::PowersetLattice(TokenSet universe) : universe_(std::move(universe)) {}

bool PowersetLattice::contains(const Value& v) const {
  if (!v.is_set()) return false;
  const auto& s = v.as_set();
  return std::includes(universe_.begin(), universe_.end(), s.begin(), s.end());
}

void PowersetLattice::check(const Value& v) const {
  if (!v.is_set()) throw DomainError("powerset lattice expects a token set");
  for (const auto& token : v.as_set()) {
    if (!universe_.contains(token)) {
      throw DomainError("token '" + token + "' is outside the universe");
    }
  }
}

bool PowersetLattice::leq(const Value& a, const Value& b) const {
  check(a);
  check(b);
  const auto& x = a.as_set();
  const auto& y = b.as_set();
  return std::includes(y.begin(), y.end(), x.begin(), x.end());
}

Value PowersetLattice::join(const Value& a, const Value& b) const {
  check(a);
  check(b);
  TokenSet out = a.as_set();
  out.insert(b.as_set().begin(), b.as_set().end());
  return out;
}

Value PowersetLattice::meet(const Value& a, const Value& b) const {
  check(a);
  check(b);
  TokenSet out;
  std::set_intersection(a.as_set().begin(), a.as_set().end(), b.as_set().begin(),
                        b.as_set().end(), std::inserter(out, out.end()));
  return out;
}

std::optional<std::vector<Value>> PowersetLattice::elements() const {
  if (universe_.size() > 16) return std::nullopt;
  std::vector<std::string> tokens(universe_.begin(), universe_.end());
  std::vector<Value> out;
  const std::size_t n = std::size_t{1} << tokens.size();
  out.reserve(n);
  for (std::size_t mask = 0; mask < n; ++mask) {
    TokenSet s;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      if (mask & (std::size_t{1} << i)) s.insert(tokens[i]);
    }
    out.emplace_back(std::move(s));
  }
  return out;
}

std::string PowersetLattice::render(const Value& v) const {
  std::string out = "{";
  bool first = true;
  for (const auto& token : v.as_set()) {
    if (!first) out += ", ";
    out += token;
    first = false;
  }
  return out + "}";
}

// ---------------------------------------------------------------------------
// Flat

bool flat_leq(Flat a, Flat b) {
  if (a.is_bottom() || b.is_top()) return true;
  return a == b;
}

Flat flat_join(Flat a, Flat b) {
  if (a.is_bottom()) return b;
  if (b.is_bottom()) return a;
  return a == b ? a : Flat::top();
}

Flat flat_meet(Flat a, Flat b) {
  if (a.is_top()) return b;
  if (b.is_top()) return a;
  return a == b ? a : Flat::bottom();
}

bool FlatLattice::leq(const Value& a, const Value& b) const {
  return flat_leq(a.as_flat(), b.as_flat());
}

Value FlatLattice::join(const Value& a, const Value& b) const {
  return flat_join(a.as_flat(), b.as_flat());
}

Value FlatLattice::meet(const Value& a, const Value& b) const {
  return flat_meet(a.as_flat(), b.as_flat());
}

std::string FlatLattice::render(const Value& v) const {
  const Flat f = v.as_flat();
  if (f.is_bottom()) return "⊥";
  if (f.is_top()) return "⊤";
  return std::to_string(f.constant);
}

// ---------------------------------------------------------------------------
// Map

MapLattice::MapLattice(std::vector<std::string> keys, LatticePtr values)
    : keys_(std::move(keys)), values_(std::move(values)) {
  std::sort(keys_.begin(), keys_.end());
  keys_.erase(std::unique(keys_.begin(), keys_.end()), keys_.end());
}

std::optional<std::size_t> MapLattice::index_of(std::string_view key) const {
  auto it = std::lower_bound(keys_.begin(), keys_.end(), key);
  if (it == keys_.end() || *it != key) return std::nullopt;
  return static_cast<std::size_t>(it - keys_.begin());
}

void MapLattice::check(const Value& v) const {
  if (!v.is_tuple() || v.as_tuple().size() != keys_.size()) {
    throw DomainError("map lattice value has the wrong shape");
  }
}

const Value& MapLattice::get(const Value& map, std::string_view key) const {
  check(map);
  auto i = index_of(key);
  if (!i) throw DomainError("unknown map key '" + std::string(key) + "'");
  return map.as_tuple()[*i];
}

Value MapLattice::with(const Value& map, std::string_view key, Value v) const {
  check(map);
  auto i = index_of(key);
  if (!i) throw DomainError("unknown map key '" + std::string(key) + "'");
  Value::Tuple t = map.as_tuple();
  t[*i] = std::move(v);
  return t;
}

Value MapLattice::constant(const Value& v) const {
  return Value::Tuple(keys_.size(), v);
}

bool MapLattice::contains(const Value& v) const {
  if (!v.is_tuple() || v.as_tuple().size() != keys_.size()) return false;
  return std::all_of(v.as_tuple().begin(), v.as_tuple().end(),
                     [&](const Value& x) { return values_->contains(x); });
}

bool MapLattice::leq(const Value& a, const Value& b) const {
  check(a);
  check(b);
  for (std::size_t i = 0; i < keys_.size(); ++i) {
    if (!values_->leq(a.as_tuple()[i], b.as_tuple()[i])) return false;
  }
  return true;
}

Value MapLattice::join(const Value& a, const Value& b) const {
  check(a);
  check(b);
  Value::Tuple out;
  out.reserve(keys_.size());
  for (std::size_t i = 0; i < keys_.size(); ++i) {
    out.push_back(values_->join(a.as_tuple()[i], b.as_tuple()[i]));
  }
  return out;
}

Value MapLattice::meet(const Value& a, const Value& b) const {
  check(a);
  check(b);
  Value::Tuple out;
  out.reserve(keys_.size());
  for (std::size_t i = 0; i < keys_.size(); ++i) {
    out.push_back(values_->meet(a.as_tuple()[i], b.as_tuple()[i]));
  }
  return out;
}

std::optional<Value> MapLattice::top() const {
  auto t = values_->top();
  if (!t) return std::nullopt;
  return constant(*t);
}

std::optional<std::vector<Value>> MapLattice::elements() const {
  auto inner = values_->elements();
  if (!inner) return std::nullopt;
  std::size_t total = 1;
  for (std::size_t i = 0; i < keys_.size(); ++i) {
    total *= inner->size();
    if (total > 4096) return std::nullopt;
  }
  std::vector<Value> out;
  out.reserve(total);
  std::vector<std::size_t> digits(keys_.size(), 0);
  for (std::size_t n = 0; n < total; ++n) {
    Value::Tuple t;
    for (std::size_t d : digits) t.push_back((*inner)[d]);
    out.emplace_back(std::move(t));
    for (std::size_t i = 0; i < digits.size(); ++i) {
      if (++digits[i] < inner->size()) break;
      digits[i] = 0;
    }
  }
  return out;
}

std::string MapLattice::render(const Value& v) const {
  check(v);
  std::ostringstream out;
  out << '{';
  for (std::size_t i = 0; i < keys_.size(); ++i) {
    if (i) out << ", ";
    out << keys_[i] << '=' << values_->render(v.as_tuple()[i]);
  }
  out << '}';
  return out.str();
}

}  // namespace monoflow
