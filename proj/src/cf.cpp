#include "ratio_bounds/cf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "ratio_bounds/bounds_i.hpp"
#include "ratio_bounds/errors.hpp"

namespace ratio_bounds::cf {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Unchecked map; t = inf maps to 0 and a zero denominator maps to inf.
double raw_map(double nu, double x, double t) { return 1.0 / (2.0 * nu / x + t); }

void require_query(double nu, double x) {
  if (!(x > 0.0)) throw DomainError("x must be positive");
  if (nu < 0.0) throw DomainError("I-side continued fraction requires nu>=0");
}

BoundValue mapped(const BoundValue& src, double nu, double x, Side side, const std::string& lbl) {
  BoundValue v;
  v.value = raw_map(nu, x, src.value);
  v.spec = {Family::cf_map, 0.0, side};
  v.label = lbl;
  v.validity = {src.validity.valid, src.validity.valid ? "CF image of a valid bound" : "CF image of an invalid bound"};
  v.nu = nu;
  v.x = x;
  return v;
}

// Maps a seed enclosure at order nu + depth down to order nu.
Enclosure descend(double nu, double x, std::size_t depth, const Enclosure& seed) {
  if (depth == 0) return seed;
  double lo = seed.lower.value;
  double up = seed.upper.value;
  for (std::size_t k = depth; k-- > 0;) {
    const double mu = nu + static_cast<double>(k);
    const double new_lo = raw_map(mu, x, up);
    const double new_up = raw_map(mu, x, lo);
    lo = new_lo;
    up = new_up;
  }
  const bool swapped = depth % 2 == 1;
  const BoundValue& lo_src = swapped ? seed.upper : seed.lower;
  const BoundValue& up_src = swapped ? seed.lower : seed.upper;
  const std::string prefix = "cf" + (depth == 1 ? std::string() : std::to_string(depth)) + "(";
  Enclosure out{mapped(lo_src, nu, x, Side::lower, prefix + lo_src.label + ")"),
                mapped(up_src, nu, x, Side::upper, prefix + up_src.label + ")")};
  out.lower.value = lo;
  out.upper.value = up;
  return out;
}

struct Bracket {
  double lo, up;
};

Bracket policy_bracket(double mu, double x, TailPolicy policy) {
  switch (policy) {
    case TailPolicy::zero:
      return {0.0, mu > 0.0 ? x / (2.0 * mu) : kInf};
    case TailPolicy::b_level: {
      const Enclosure e = enclosure_I(mu, x, 0);
      return {e.lower.value, e.upper.value};
    }
    case TailPolicy::B_level: {
      const Enclosure e = enclosure_I(mu, x, 1);
      return {e.lower.value, e.upper.value};
    }
  }
  return {0.0, kInf};
}

// Brackets are computed in double precision; widths below a few ulps are
// rounding artefacts and cannot certify a tighter tolerance.
constexpr double kMinTolerance = 4.0 * std::numeric_limits<double>::epsilon();

bool converged(const CfStep& s, double tol) {
  const double mid = 0.5 * (s.lower + s.upper);
  return tol >= kMinTolerance && std::isfinite(s.upper) && std::abs(s.upper - s.lower) <= tol * std::abs(mid);
}

}  // namespace

double cf_map_I(double nu, double x, double t) {
  if (!(x > 0.0)) throw DomainError("x must be positive");
  const double den = 2.0 * nu / x + t;
  if (!(den > 0.0)) throw DomainError("cf_map_I: nonpositive denominator");
  return 1.0 / den;
}

double cf_map_K(double nu, double x, double t) {
  if (!(x > 0.0)) throw DomainError("x must be positive");
  const double den = 2.0 * (nu - 1.0) / x + t;
  if (!(den > 0.0)) throw DomainError("cf_map_K: nonpositive denominator");
  return 1.0 / den;
}

Enclosure iterate_enclosure_I(double nu, double x, std::size_t depth, int seed_level) {
  require_query(nu, x);
  if (seed_level != 0 && seed_level != 1) throw DomainError("seed level must be 0 or 1");
  const double top = nu + static_cast<double>(depth);
  return descend(nu, x, depth, enclosure_I(top, x, seed_level));
}

double cf_approximant(double nu, double x, std::size_t i) {
  if (!(x > 0.0)) throw DomainError("x must be positive");
  double t = 0.0;
  for (std::size_t k = i; k-- > 0;) {
    const double den = 2.0 * (nu + static_cast<double>(k)) / x + t;
    if (den == 0.0) throw DomainError("cf_approximant: zero denominator");
    t = 1.0 / den;
  }
  return t;
}

const char* to_string(TailPolicy p) {
  switch (p) {
    case TailPolicy::zero: return "zero";
    case TailPolicy::b_level: return "b";
    case TailPolicy::B_level: return "B";
  }
  return "?";
}

CfStep bracket_at_depth(double nu, double x, std::size_t depth, TailPolicy policy) {
  require_query(nu, x);
  Bracket br = policy_bracket(nu + static_cast<double>(depth), x, policy);
  for (std::size_t k = depth; k-- > 0;) {
    const double mu = nu + static_cast<double>(k);
    Bracket next{raw_map(mu, x, br.up), raw_map(mu, x, br.lo)};
    const Bracket own = policy_bracket(mu, x, policy);
    br = {std::max(next.lo, own.lo), std::min(next.up, own.up)};
  }
  return {depth, br.lo, br.up};
}

CfRun evaluate_ratio_I(double nu, double x, double tol, TailPolicy policy, const CfOptions& options) {
  require_query(nu, x);
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
  if (options.max_depth < 1) throw DomainError("max_depth must be at least 1");

  // Brackets are nested in depth, so the first converged depth can be
  // located by doubling followed by bisection.
  std::size_t bad = 0;
  std::size_t good = 0;
  CfStep good_step;
  for (std::size_t n = 1;; n = std::min(2 * n, options.max_depth)) {
    const CfStep s = bracket_at_depth(nu, x, n, policy);
    if (converged(s, tol)) {
      good = n;
      good_step = s;
      break;
    }
    bad = n;
    if (n == options.max_depth) {
      std::ostringstream os;
      os << "evaluate_ratio_I: tolerance " << tol << " not reached within depth " << options.max_depth
         << " (nu=" << nu << ", x=" << x << ", tail=" << to_string(policy) << ")";
      throw ConvergenceError(os.str());
    }
  }
  while (good - bad > 1) {
    const std::size_t mid = bad + (good - bad) / 2;
    const CfStep s = bracket_at_depth(nu, x, mid, policy);
    if (converged(s, tol)) {
      good = mid;
      good_step = s;
    } else {
      bad = mid;
    }
  }

  CfRun run;
  run.iterations = good;
  run.lower = good_step.lower;
  run.upper = good_step.upper;
  run.value = 0.5 * (run.lower + run.upper);
  if (options.record_history) {
    run.history.reserve(good);
    for (std::size_t n = 1; n <= good; ++n) run.history.push_back(bracket_at_depth(nu, x, n, policy));
  }
  return run;
}

const char* to_string(GapKind k) { return k == GapKind::b_level ? "b-level" : "B-level"; }

const char* to_string(Limit l) {
  switch (l) {
    case Limit::x_to_zero: return "x->0";
    case Limit::nu_to_infinity: return "nu->inf";
    case Limit::x_to_infinity: return "x->inf";
  }
  return "?";
}

namespace {

// s + sqrt(s^2 + x^2) without cancellation.
double plus_root(double s, double x) {
  const double r = std::hypot(s, x);
  return s >= 0.0 ? s + r : x * x / (r - s);
}

// (x/(p + sqrt(p^2+x^2))) / (x/(q + sqrt(q^2+x^2))) - 1 for p <= q, given q - p.
double shifted_quotient_gap(double p, double q, double q_minus_p, double x) {
  return q_minus_p * (plus_root(q, x) + plus_root(p, x)) / ((std::hypot(q, x) + std::hypot(p, x)) * plus_root(p, x));
}

}  // namespace

double measured_gap(GapKind kind, double nu, double x, std::size_t i) {
  require_query(nu, x);
  const double top = nu + static_cast<double>(i);
  double lower = 0.0;
  double gap = 0.0;
  if (kind == GapKind::b_level) {
    // b_1 against b_0 (or b_{-1} below 1/2): shifts top and top - 1/2 (or top - 1).
    const double p = top >= 0.5 ? top - 0.5 : top - 1.0;
    lower = b_alpha(top, 1.0, x);
    gap = shifted_quotient_gap(p, top, top - p, x);
  } else {
    if (top < 0.5) throw DomainError("B-level sequences need B_0 at the seed order (nu+i>=1/2)");
    const double l0 = top - 0.5;
    const double l2 = top + 0.5;
    const double s0 = std::hypot(l0, x);
    const double s2 = std::hypot(l2, x);
    const double d0 = l0 + l0 / (2.0 * s0);
    const double d2 = l0 + l2 / (2.0 * s2);
    const double diff = 0.5 * x * x * (2.0 * top) / (s2 * s0 * (l2 * s0 + l0 * s2));
    lower = B_alpha(top, 2.0, x);
    gap = shifted_quotient_gap(d0, d2, diff, x);
  }
  // c_mu = c_{mu+1} l_{mu+1} / (2 mu / x + l_{mu+1}); the new lower bound is the image of the old upper.
  for (std::size_t k = i; k-- > 0;) {
    const double a = 2.0 * (nu + static_cast<double>(k)) / x;
    const double upper = lower * (1.0 + gap);
    gap = gap * lower / (a + lower);
    lower = 1.0 / (a + upper);
  }
  return gap;
}

double sharpness_model(GapKind kind, Limit limit, double nu, double x, std::size_t i) {
  if (!(x > 0.0)) throw DomainError("x must be positive");
  if (limit == Limit::x_to_infinity) return kind == GapKind::b_level ? 1.0 / (2.0 * x) : 1.0 / (2.0 * x * x);
  if (!(nu > 0.0)) throw DomainError("sharpness model needs nu > 0");
  const double q = x / (2.0 * nu);
  if (i > 0) {
    const double e = static_cast<double>(2 * i);
    return kind == GapKind::b_level ? std::pow(q, e) / (2.0 * nu) : 2.0 / (nu * nu) * std::pow(q, e + 2.0);
  }
  if (limit == Limit::nu_to_infinity) {
    return kind == GapKind::b_level ? 1.0 / (2.0 * nu) : x * x / (2.0 * std::pow(nu, 4));
  }
  if (!(nu > 0.5)) throw DomainError("x->0 sharpness model needs nu > 1/2");
  if (kind == GapKind::b_level) return 1.0 / (2.0 * nu - 1.0);
  const double s = 4.0 * nu * nu - 1.0;
  return 8.0 * x * x / (s * s);
}

}  // namespace ratio_bounds::cf
