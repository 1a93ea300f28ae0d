#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace monoflow {

/// Element of the flat lattice  ⊥ < Const(n) < ⊤.
struct Flat {
  enum class Kind : std::uint8_t { bottom, constant, top };

  Kind kind = Kind::bottom;
  std::int64_t constant = 0;

  static constexpr Flat bottom() { return {Kind::bottom, 0}; }
  static constexpr Flat top() { return {Kind::top, 0}; }
  static constexpr Flat of(std::int64_t n) { return {Kind::constant, n}; }

  constexpr bool is_bottom() const { return kind == Kind::bottom; }
  constexpr bool is_top() const { return kind == Kind::top; }
  constexpr bool is_constant() const { return kind == Kind::constant; }

  friend constexpr bool operator==(const Flat& a, const Flat& b) {
    return a.kind == b.kind && (a.kind != Kind::constant || a.constant == b.constant);
  }
  friend constexpr bool operator<(const Flat& a, const Flat& b) {
    if (a.kind != b.kind) return a.kind < b.kind;
    return a.kind == Kind::constant && a.constant < b.constant;
  }
};

using TokenSet = std::set<std::string>;

/// A lattice value. Equality is structural; which shapes are meaningful is
/// decided by the Lattice the value is used with.
class Value {
 public:
  using Tuple = std::vector<Value>;

  Value() : data_(Flat::bottom()) {}
  Value(Flat f) : data_(f) {}                      // NOLINT(google-explicit-constructor)
  Value(TokenSet s) : data_(std::move(s)) {}       // NOLINT(google-explicit-constructor)
  Value(Tuple t) : data_(std::move(t)) {}          // NOLINT(google-explicit-constructor)

  bool is_flat() const { return std::holds_alternative<Flat>(data_); }
  bool is_set() const { return std::holds_alternative<TokenSet>(data_); }
  bool is_tuple() const { return std::holds_alternative<Tuple>(data_); }

  const Flat& as_flat() const { return std::get<Flat>(data_); }
  const TokenSet& as_set() const { return std::get<TokenSet>(data_); }
  const Tuple& as_tuple() const { return std::get<Tuple>(data_); }

  friend bool operator==(const Value& a, const Value& b);
  friend bool operator!=(const Value& a, const Value& b) { return !(a == b); }
  /// Arbitrary total order, for use as a container key.
  friend bool operator<(const Value& a, const Value& b);

 private:
  std::variant<Flat, TokenSet, Tuple> data_;
};

/// Runtime descriptor of a complete lattice satisfying the ascending chain
/// condition. Descriptors are immutable once built and may be shared.
class Lattice {
 public:
  virtual ~Lattice() = default;

  virtual std::string name() const = 0;
  virtual bool contains(const Value& v) const = 0;
  virtual bool leq(const Value& a, const Value& b) const = 0;
  virtual Value join(const Value& a, const Value& b) const = 0;
  virtual Value bottom() const = 0;

  virtual bool has_meet() const { return false; }
  /// Throws UnsupportedOperation unless has_meet().
  virtual Value meet(const Value& a, const Value& b) const;

  virtual std::optional<Value> top() const { return std::nullopt; }

  /// Full enumeration, when the carrier is small enough to list.
  virtual std::optional<std::vector<Value>> elements() const { return std::nullopt; }

  /// Upper bound on the number of strict steps in any ascending chain.
  virtual std::size_t height() const = 0;

  virtual std::string render(const Value& v) const = 0;
};

using LatticePtr = std::shared_ptr<const Lattice>;

/// Subsets of a finite universe of opaque tokens, ordered by inclusion.
class PowersetLattice final : public Lattice {
 public:
  explicit PowersetLattice(TokenSet universe);

  const TokenSet& universe() const { return universe_; }

  std::string name() const override { return "powerset"; }
  bool contains(const Value& v) const override;
  bool leq(const Value& a, const Value& b) const override;
  /// Union. Throws DomainError if either side leaves the universe.
  Value join(const Value& a, const Value& b) const override;
  Value bottom() const override { return TokenSet{}; }
  bool has_meet() const override { return true; }
  Value meet(const Value& a, const Value& b) const override;
  std::optional<Value> top() const override { return universe_; }
  std::optional<std::vector<Value>> elements() const override;
  std::size_t height() const override { return universe_.size(); }
  std::string render(const Value& v) const override;

 private:
  void check(const Value& v) const;

  TokenSet universe_;
};

/// The constant-propagation lattice ⊥ < … Const(n) … < ⊤.
class FlatLattice final : public Lattice {
 public:
  std::string name() const override { return "flat"; }
  bool contains(const Value& v) const override { return v.is_flat(); }
  bool leq(const Value& a, const Value& b) const override;
  Value join(const Value& a, const Value& b) const override;
  Value bottom() const override { return Flat::bottom(); }
  bool has_meet() const override { return true; }
  Value meet(const Value& a, const Value& b) const override;
  std::optional<Value> top() const override { return Flat::top(); }
  std::size_t height() const override { return 2; }
  std::string render(const Value& v) const override;
};

Flat flat_join(Flat a, Flat b);
Flat flat_meet(Flat a, Flat b);
bool flat_leq(Flat a, Flat b);

/// Total maps from a fixed finite key set into a value lattice, ordered
/// pointwise. Values are tuples indexed by the sorted key list.
class MapLattice final : public Lattice {
 public:
  MapLattice(std::vector<std::string> keys, LatticePtr values);

  const std::vector<std::string>& keys() const { return keys_; }
  const Lattice& value_lattice() const { return *values_; }
  std::optional<std::size_t> index_of(std::string_view key) const;

  /// Value bound to `key`; throws DomainError for unknown keys.
  const Value& get(const Value& map, std::string_view key) const;
  Value with(const Value& map, std::string_view key, Value v) const;
  /// Every key bound to `v`.
  Value constant(const Value& v) const;

  std::string name() const override { return "map"; }
  bool contains(const Value& v) const override;
  bool leq(const Value& a, const Value& b) const override;
  Value join(const Value& a, const Value& b) const override;
  Value bottom() const override { return constant(values_->bottom()); }
  bool has_meet() const override { return values_->has_meet(); }
  Value meet(const Value& a, const Value& b) const override;
  std::optional<Value> top() const override;
  std::optional<std::vector<Value>> elements() const override;
  std::size_t height() const override { return keys_.size() * values_->height(); }
  std::string render(const Value& v) const override;

 private:
  void check(const Value& v) const;

  std::vector<std::string> keys_;
  LatticePtr values_;
};

/// a ⊑ b computed as a ⊔ b = b.
bool leq_via_join(const Lattice& lattice, const Value& a, const Value& b);

}  // namespace monoflow
