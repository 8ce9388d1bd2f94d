// Value types shared by the I- and K-side bound families.
#pragma once

#include <string>

namespace ratio_bounds {

/// Which ratio a bound refers to: I_nu/I_{nu-1} or K_{nu-1}/K_nu.
enum class Ratio { I, K };

enum class Side { lower, upper };

/// Bound families. b, cf1, B, Btilde bound the I ratio; d, D bound the K ratio.
/// cf_map tags bounds obtained by pushing another bound through the
/// continued-fraction map (level-2 enclosures, iterated sequences).
enum class Family { b, cf1, B, Btilde, d, D, cf_map };

struct BoundSpec {
  Family family = Family::b;
  double alpha = 0.0;  // ignored for cf1 and cf_map
  Side side = Side::lower;
};

struct Validity {
  bool valid = false;
  std::string reason;
};

struct BoundValue {
  double value = 0.0;
  BoundSpec spec;
  std::string label;  // e.g. "b0", "Btilde2", "cf(B0)"
  Validity validity;
  double nu = 0.0;
  double x = 0.0;
};

/// A lower/upper pair. gap() is the relative sharpness u/l - 1.
struct Enclosure {
  BoundValue lower;
  BoundValue upper;

  double width() const { return upper.value - lower.value; }
  double gap() const { return upper.value / lower.value - 1.0; }
  bool contains(double v) const { return lower.value <= v && v <= upper.value; }
};

Ratio ratio_of(Family family);
const char* to_string(Side side);
const char* to_string(Family family);
const char* to_string(Ratio ratio);

/// Short tag such as "b-1", "B2", "Btilde0", "cf1", "D0".
std::string label(const BoundSpec& spec);

/// x / (s + sqrt(s^2 + x^2)) for x > 0 and any real s.
///
/// For s < 0 the sum s + sqrt(...) cancels; the equal form
/// (sqrt(s^2 + x^2) - s) / x is used instead.
double shifted_ratio(double s, double x);

/// x / (s + sqrt(r^2 + x^2)) where the caller supplies sum = s + r exactly.
///
/// Evaluated as x / (sum + x * shifted_ratio(r, x)), which stays accurate
/// when s < 0 and sum is small (the cf1 and Btilde bounds near nu = 0).
double split_shifted_ratio(double sum, double r, double x);

}  // namespace ratio_bounds
