#include "monoflow/label.hpp"

namespace monoflow {

std::string to_string(Label l) {
  std::string out = std::to_string(l.number);
  switch (l.point) {
    case Label::Point::plain:
      break;
    case Label::Point::call:
      out += "_c";
      break;
    case Label::Point::ret:
      out += "_r";
      break;
  }
  return out;
}

const char* to_string(FlowKind k) {
  switch (k) {
    case FlowKind::normal:
      return "N";
    case FlowKind::call:
      return "C";
    case FlowKind::ret:
      return "R";
  }
  return "?";
}

FlowSet flow_rev(const FlowSet& flows) {
  FlowSet out;
  for (const auto& f : flows) out.insert({f.to, f.from});
  return out;
}

}  // namespace monoflow
