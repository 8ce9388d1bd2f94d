#include "ratio_bounds/bound_types.hpp"

#include <cmath>
#include <sstream>

#include "ratio_bounds/errors.hpp"

namespace ratio_bounds {

Ratio ratio_of(Family family) {
  switch (family) {
    case Family::d:
    case Family::D:
      return Ratio::K;
    default:
      return Ratio::I;
  }
}

const char* to_string(Side side) { return side == Side::lower ? "lower" : "upper"; }

const char* to_string(Ratio ratio) { return ratio == Ratio::I ? "I" : "K"; }

const char* to_string(Family family) {
  switch (family) {
    case Family::b: return "b";
    case Family::cf1: return "cf1";
    case Family::B: return "B";
    case Family::Btilde: return "Btilde";
    case Family::d: return "d";
    case Family::D: return "D";
    case Family::cf_map: return "cf";
  }
  return "?";
}

std::string label(const BoundSpec& spec) {
  if (spec.family == Family::cf1 || spec.family == Family::cf_map) return to_string(spec.family);
  std::ostringstream os;
  os << to_string(spec.family) << spec.alpha;
  return os.str();
}

double shifted_ratio(double s, double x) {
  if (!(x > 0.0)) throw DomainError("x must be positive");
  const double root = std::hypot(s, x);
  if (s >= 0.0) return x / (s + root);
  return (root - s) / x;
}

double split_shifted_ratio(double sum, double r, double x) {
  const double den = sum + x * shifted_ratio(r, x);
  if (!(den > 0.0)) throw DomainError("nonpositive denominator in shifted ratio");
  return x / den;
}

}  // namespace ratio_bounds
