#include "ratio_bounds/bounds_k.hpp"

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

}  // namespace

double d_alpha(double nu, double alpha, double x) {
  require_positive_x(x);
  return shifted_ratio(nu - 0.5 * (alpha + 1.0), x);
}

double D_alpha(double nu, double alpha, double x) {
  require_positive_x(x);
  const double tau = nu - 0.5 * (alpha + 1.0);
  const double phi = (nu - 0.5) - tau / (2.0 * std::hypot(tau, x));
  return shifted_ratio(phi, x);
}

Validity validity_K(const BoundSpec& spec, double nu) {
  const double a = spec.alpha;
  const bool lower = spec.side == Side::lower;
  switch (spec.family) {
    case Family::d:
      if (!lower) {
        return a >= 1.0 ? ok("d_1 upper bound, nu in R; alpha>=1 by monotonicity in alpha")
                        : no("d_alpha is an upper bound only for alpha>=1");
      }
      if (a > 0.0) return no("d_alpha is a lower bound only for alpha<=0");
      if (a <= -1.0) return ok("d_{-1} lower bound, nu in R; alpha<=-1 by monotonicity in alpha");
      return nu >= 0.5 ? ok("d_0 lower bound, nu>=1/2; alpha<=0 by monotonicity in alpha")
                       : no("d_alpha lower bound for -1<alpha<=0 requires nu>=1/2");
    case Family::D:
      if (nu < 0.5) return no("D bounds hold for nu>=1/2");
      if (lower) {
        return a >= 2.0 * nu - 1.0 ? ok("D_{2nu-1} = d_0 lower bound, nu>=1/2; alpha>=2nu-1 by monotonicity")
                                   : no("D_alpha is a lower bound only for alpha>=2nu-1");
      }
      return a <= 0.0 ? ok("D_0 upper bound, nu>=1/2; alpha<=0 by monotonicity in alpha")
                      : no("D_alpha is an upper bound only for alpha<=0");
    default:
      break;
  }
  return no("not a K-side closed-form family");
}

BoundValue evaluate_K(const BoundSpec& spec, double nu, double x) {
  BoundValue out;
  out.spec = spec;
  out.nu = nu;
  out.x = x;
  out.label = label(spec);
  switch (spec.family) {
    case Family::d: out.value = d_alpha(nu, spec.alpha, x); break;
    case Family::D: out.value = D_alpha(nu, spec.alpha, x); break;
    default: throw DomainError(std::string("evaluate_K: not a K-side family: ") + to_string(spec.family));
  }
  out.validity = validity_K(spec, nu);
  return out;
}

double reflect_K(double nu, double x, double upper_of_reflected) {
  (void)nu;
  require_positive_x(x);
  if (!(upper_of_reflected > 0.0)) throw DomainError("reflect_K: bound must be positive");
  return 1.0 / upper_of_reflected;
}

Enclosure enclosure_K(double nu, double x, int level) {
  require_positive_x(x);
  if (level < 0 || level > 1) throw DomainError("K-side enclosure level must be 0 or 1");

  std::vector<BoundValue> lowers{evaluate_K({Family::d, 0.0, Side::lower}, nu, x),
                                 evaluate_K({Family::d, -1.0, Side::lower}, nu, x)};
  std::vector<BoundValue> uppers{evaluate_K({Family::d, 1.0, Side::upper}, nu, x)};
  if (level == 1 && nu >= 0.5) uppers.push_back(evaluate_K({Family::D, 0.0, Side::upper}, nu, x));

  auto pick = [](const std::vector<BoundValue>& cs, Side side) {
    const BoundValue* best = nullptr;
    for (const auto& c : cs) {
      if (!c.validity.valid) continue;
      if (!best || (side == Side::lower ? c.value > best->value : c.value < best->value)) best = &c;
    }
    return *best;  // d_{-1} and d_1 are valid for every nu
  };
  return {pick(lowers, Side::lower), pick(uppers, Side::upper)};
}

}  // namespace ratio_bounds
