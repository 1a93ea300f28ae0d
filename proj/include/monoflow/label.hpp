#pragma once

#include <compare>
#include <cstdint>
#include <set>
#include <string>
#include <utility>

namespace monoflow {

/// A program label. Call blocks are split into a call point and a return
/// point that share the original label number.
struct Label {
  enum class Point : std::uint8_t { plain, call, ret };

  std::uint32_t number = 0;
  Point point = Point::plain;

  static constexpr Label plain(std::uint32_t n) { return {n, Point::plain}; }
  static constexpr Label call(std::uint32_t n) { return {n, Point::call}; }
  static constexpr Label ret(std::uint32_t n) { return {n, Point::ret}; }

  constexpr bool is_split() const { return point != Point::plain; }
  /// ρ: the label of the original, unsplit block.
  constexpr Label original() const { return plain(number); }
  /// The call point paired with this call or return point.
  constexpr Label call_point() const { return call(number); }
  /// The other half of a split pair.
  constexpr Label partner() const {
    return {number, point == Point::call ? Point::ret : Point::call};
  }

  friend constexpr auto operator<=>(const Label&, const Label&) = default;
};

/// "3", "2_c", "2_r".
std::string to_string(Label l);

enum class FlowKind : std::uint8_t { normal, call, ret };

/// "N", "C", "R".
const char* to_string(FlowKind k);

struct Flow {
  Label from;
  Label to;

  friend constexpr auto operator<=>(const Flow&, const Flow&) = default;
};

using FlowSet = std::set<Flow>;

struct TaggedFlow {
  Label from;
  Label to;
  FlowKind kind = FlowKind::normal;

  Flow flow() const { return {from, to}; }

  friend constexpr auto operator<=>(const TaggedFlow&, const TaggedFlow&) = default;
};

/// {(ℓ′, ℓ) | (ℓ, ℓ′) ∈ flows}.
FlowSet flow_rev(const FlowSet& flows);

}  // namespace monoflow
