#include "ratio_bounds/bounds_i.hpp"

#include <cmath>
#include <vector>

#include "ratio_bounds/errors.hpp"

namespace ratio_bounds {
namespace {

void require_positive_x(double x) {
  if (!(x > 0.0)) throw DomainError("x must be positive");
}

Validity ok(std::string reason) { return {true, std::move(reason)}; }
Validity no(std::string reason) { return {false, std::move(reason)}; }

BoundValue pick(const std::vector<BoundValue>& candidates, Side side) {
  const BoundValue* best = nullptr;
  for (const auto& c : candidates) {
    if (!c.validity.valid) continue;
    if (!best || (side == Side::lower ? c.value > best->value : c.value < best->value)) best = &c;
  }
  if (!best) throw ValidityError(std::string("no valid ") + to_string(side) + " bound available");
  return *best;
}

}  // namespace

double b_alpha(double nu, double alpha, double x) {
  require_positive_x(x);
  return shifted_ratio(nu + 0.5 * (alpha - 1.0), x);
}

double B_alpha(double nu, double alpha, double x) {
  require_positive_x(x);
  const double lambda = nu + 0.5 * (alpha - 1.0);
  const double delta = (nu - 0.5) + lambda / (2.0 * std::hypot(lambda, x));
  return shifted_ratio(delta, x);
}

double Btilde_alpha(double nu, double alpha, double x) {
  require_positive_x(x);
  const double sigma = nu + 0.5 * (alpha + 1.0);
  const double delta_p = (nu + 0.5) + sigma / (2.0 * std::hypot(sigma, x));
  // delta_m + delta_p == 2 nu exactly.
  return split_shifted_ratio(2.0 * nu, delta_p, x);
}

Enclosure cf1_bounds(double nu, double x) {
  require_positive_x(x);
  if (nu < 0.0) throw ValidityError("cf1 bounds require nu>=0");
  return {evaluate_I({Family::cf1, 0.0, Side::lower}, nu, x), evaluate_I({Family::cf1, 0.0, Side::upper}, nu, x)};
}

Validity validity_I(const BoundSpec& spec, double nu) {
  const double a = spec.alpha;
  const bool lower = spec.side == Side::lower;
  switch (spec.family) {
    case Family::b:
      if (lower) {
        if (a < 1.0) return no("b_alpha is a lower bound only for alpha>=1");
        return nu >= 0.0 ? ok("b_1 lower bound, nu>=0; alpha>=1 by monotonicity in alpha")
                         : no("b_alpha lower bound requires nu>=0");
      }
      if (a > 0.0) return no("b_alpha is an upper bound only for alpha<=0");
      if (nu >= 0.5) return ok("b_0 upper bound, nu>=1/2; alpha<=0 by monotonicity in alpha");
      if (a <= -1.0 && nu >= 0.0) return ok("b_{-1} upper bound, nu>=0; alpha<=-1 by monotonicity in alpha");
      return no(a <= -1.0 ? "b_alpha upper bound requires nu>=0" : "b_alpha upper bound requires nu>=1/2");
    case Family::cf1:
      return nu >= 0.0 ? ok("one CF step from b_0/b_1, nu>=0") : no("cf1 bounds require nu>=0");
    case Family::B:
      if (lower) {
        if (a < 2.0) return no("B_alpha is a lower bound only for alpha>=2");
        return nu >= 0.0 ? ok("B_2 lower bound, nu>=0; alpha>=2 by monotonicity in alpha")
                         : no("B_alpha lower bound requires nu>=0");
      }
      if (a > 0.0) return no("B_alpha is an upper bound only for alpha<=0");
      return nu >= 0.5 ? ok("B_0 upper bound, nu>=1/2; alpha<=0 by monotonicity in alpha")
                       : no("B_alpha upper bound requires nu>=1/2");
    case Family::Btilde: {
      const double proven = lower ? 0.0 : 2.0;
      if (a != proven) return no("Btilde_alpha proven only for alpha=0 (lower) and alpha=2 (upper); approximation only");
      return nu >= 0.0 ? ok(lower ? "Btilde_0 lower bound, nu>=0" : "Btilde_2 upper bound, nu>=0")
                       : no("Btilde bounds require nu>=0");
    }
    case Family::d:
    case Family::D:
    case Family::cf_map:
      break;
  }
  return no("not an I-side closed-form family");
}

BoundValue evaluate_I(const BoundSpec& spec, double nu, double x) {
  BoundValue out;
  out.spec = spec;
  out.nu = nu;
  out.x = x;
  out.label = label(spec);
  switch (spec.family) {
    case Family::b: out.value = b_alpha(nu, spec.alpha, x); break;
    case Family::B: out.value = B_alpha(nu, spec.alpha, x); break;
    case Family::Btilde: out.value = Btilde_alpha(nu, spec.alpha, x); break;
    case Family::cf1:
      out.value = spec.side == Side::lower ? split_shifted_ratio(2.0 * nu, nu + 0.5, x)
                                           : split_shifted_ratio(2.0 * nu, nu + 1.0, x);
      break;
    default: throw DomainError(std::string("evaluate_I: not an I-side family: ") + to_string(spec.family));
  }
  out.validity = validity_I(spec, nu);
  return out;
}

Enclosure enclosure_I(double nu, double x, int level) {
  require_positive_x(x);
  if (nu < 0.0) throw ValidityError("I-side enclosures require nu>=0");
  if (level < 0 || level > 2) throw DomainError("I-side enclosure level must be 0, 1 or 2");

  std::vector<BoundValue> lowers, uppers;
  if (level == 0) {
    lowers.push_back(evaluate_I({Family::b, 1.0, Side::lower}, nu, x));
    uppers.push_back(evaluate_I({Family::b, 0.0, Side::upper}, nu, x));
    uppers.push_back(evaluate_I({Family::b, -1.0, Side::upper}, nu, x));
  } else {
    lowers.push_back(evaluate_I({Family::B, 2.0, Side::lower}, nu, x));
    lowers.push_back(evaluate_I({Family::Btilde, 0.0, Side::lower}, nu, x));
    uppers.push_back(evaluate_I({Family::B, 0.0, Side::upper}, nu, x));
    uppers.push_back(evaluate_I({Family::Btilde, 2.0, Side::upper}, nu, x));
  }
  if (level == 2) {
    // The CF map is antitone: an upper bound at nu+1 gives a lower bound at nu.
    const Enclosure next = enclosure_I(nu + 1.0, x, 1);
    auto mapped = [&](const BoundValue& src, Side side) {
      BoundValue v;
      v.value = 1.0 / (2.0 * nu / x + src.value);
      v.spec = {Family::cf_map, 0.0, side};
      v.label = "cf(" + src.label + ")";
      v.validity = ok("CF step of a valid bound at nu+1");
      v.nu = nu;
      v.x = x;
      return v;
    };
    lowers.push_back(mapped(next.upper, Side::lower));
    uppers.push_back(mapped(next.lower, Side::upper));
  }
  return {pick(lowers, Side::lower), pick(uppers, Side::upper)};
}

}  // namespace ratio_bounds
