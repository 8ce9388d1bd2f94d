#include "ratio_bounds/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <string>

#include "ratio_bounds/errors.hpp"
#include "ratio_bounds/grid.hpp"

namespace ratio_bounds::oracle {
namespace {

constexpr double kLn10 = 2.302585092994046;

std::string where(double nu, double x) {
  std::ostringstream os;
  os.precision(17);
  os << " (nu=" << nu << ", x=" << x << ")";
  return os.str();
}

// x / (s + sqrt(s^2 + x^2)) in extended precision, cancellation-free for s < 0.
BigFloat shifted(const BigFloat& s, const BigFloat& x) {
  BigFloat root = hypot(s, x);
  if (s.sign() >= 0) return x / (s + root);
  return (root - s) / x;
}

// Backward evaluation of depth terms with the given tail at order nu + depth.
BigFloat backward(const BigFloat& nu, const BigFloat& two_over_x, std::size_t depth, BigFloat tail) {
  for (std::size_t k = depth; k-- > 0;) {
    BigFloat den = (nu + static_cast<double>(k)) * two_over_x;
    den += tail;
    tail = 1.0 / den;
  }
  return tail;
}

}  // namespace

PrecisionConfig PrecisionConfig::with_digits(unsigned digits) {
  PrecisionConfig c;
  c.digits = digits;
  return c;
}

PrecisionConfig PrecisionConfig::from_env() {
  PrecisionConfig c;
  if (const char* env = std::getenv("RATIO_BOUNDS_DIGITS"); env && *env) {
    char* end = nullptr;
    const long d = std::strtol(env, &end, 10);
    if (*end != '\0' || d <= 0) throw DomainError(std::string("RATIO_BOUNDS_DIGITS is not a positive integer: ") + env);
    c.digits = static_cast<unsigned>(d);
  }
  c.validate();
  return c;
}

double PrecisionConfig::tolerance() const {
  return cf_tol > 0.0 ? cf_tol : std::pow(10.0, 5.0 - static_cast<double>(digits));
}

void PrecisionConfig::validate() const {
  if (digits < 20) throw DomainError("oracle precision must be at least 20 digits");
  if (digits > 290) throw DomainError("oracle precision above 290 digits is not supported");
  if (cf_tol < 0.0 || quad_step < 0.0 || quad_cutoff < 0.0) throw DomainError("oracle tolerances must be positive");
  if (max_terms < 2) throw DomainError("max_terms must be at least 2");
}

OracleValue oracle_ratio_I(double nu, double x, const PrecisionConfig& cfg) {
  cfg.validate();
  if (!(x > 0.0)) throw DomainError("oracle_ratio_I: x must be positive" + where(nu, x));
  if (nu < 0.0) throw DomainError("oracle_ratio_I: nu must be nonnegative" + where(nu, x));
  const mpfr_prec_t bits = bits_for_digits(cfg.digits);
  const double tol = cfg.tolerance();
  const BigFloat bnu(nu, bits);
  const BigFloat bx(x, bits);
  const BigFloat two_over_x = BigFloat(2.0, bits) / bx;
  const BigFloat zero(0.0, bits);

  // Evaluate at depth n with three tails at order nu+n: 0 and the b-family
  // pair. The zero-tail and upper-tail results straddle every other choice.
  struct Eval {
    BigFloat value;
    double spread;
  };
  auto evaluate = [&](std::size_t n) -> Eval {
    const BigFloat mu = bnu + static_cast<double>(n);
    const BigFloat lower_tail = shifted(mu, bx);  // b_1
    const BigFloat upper_tail = mu >= 0.5 ? shifted(mu - 0.5, bx) : shifted(mu - 1.0, bx);
    const BigFloat r_zero = backward(bnu, two_over_x, n, zero);
    const BigFloat r_lo = backward(bnu, two_over_x, n, lower_tail);
    const BigFloat r_up = backward(bnu, two_over_x, n, upper_tail);
    return {(r_lo + r_up) / 2.0, relative_difference(r_zero, r_up)};
  };

  std::size_t n = 16;
  Eval prev = evaluate(n);
  while (true) {
    const std::size_t next = 2 * n;
    if (next > cfg.max_terms) {
      throw ConvergenceError("oracle_ratio_I: no convergence within max_terms" + where(nu, x));
    }
    Eval cur = evaluate(next);
    const double depth_change = relative_difference(cur.value, prev.value);
    if (prev.spread <= tol && depth_change <= tol) {
      return {std::move(cur.value), depth_change, next};
    }
    prev = std::move(cur);
    n = next;
  }
}

double quadrature_cutoff(double nu, double x, unsigned digits) {
  const double m = std::max(std::abs(nu), std::abs(nu - 1.0));
  const double target = digits * kLn10 + 25.0;
  // g(T) = x (cosh T - 1) - m T is convex with g(0) = 0 < target: one crossing.
  auto g = [&](double t) { return x * (std::cosh(t) - 1.0) - m * t; };
  double lo = 0.0;
  double hi = 1.0;
  while (g(hi) < target) {
    lo = hi;
    hi *= 2.0;
  }
  for (int i = 0; i < 200 && hi - lo > 1e-12 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) < target ? lo : hi) = mid;
  }
  return hi;
}

OracleValue oracle_ratio_K(double nu, double x, const PrecisionConfig& cfg) {
  cfg.validate();
  if (!(x > 0.0)) throw DomainError("oracle_ratio_K: x must be positive" + where(nu, x));
  if (std::abs(nu) > 50.0) throw DomainError("oracle_ratio_K: |nu| must not exceed 50" + where(nu, x));
  const mpfr_prec_t bits = bits_for_digits(cfg.digits);
  const double tol = cfg.tolerance();
  const double cutoff = cfg.quad_cutoff > 0.0 ? cfg.quad_cutoff : quadrature_cutoff(nu, x, cfg.digits);
  const double h = cfg.quad_step > 0.0 ? cfg.quad_step : std::min(0.25, 0.5 / std::sqrt(x));
  std::size_t nodes = static_cast<std::size_t>(std::ceil(cutoff / h));

  const BigFloat bx(x, bits);
  const BigFloat a_hi(nu, bits);         // order nu
  const BigFloat a_lo(nu - 1.0, bits);   // order nu - 1
  // Integrands scaled by exp(x) to keep magnitudes moderate; the scale cancels.
  // Nodes are formed in extended precision; rounding them to double would cap the accuracy near 1e-18.
  BigFloat step = BigFloat(cutoff, bits) / static_cast<double>(nodes);
  auto add_node = [&](const BigFloat& bt, BigFloat& s_lo, BigFloat& s_hi, double weight) {
    const BigFloat damp = exp(bx * (1.0 - cosh(bt)));
    s_lo += damp * cosh(a_lo * bt) * weight;
    s_hi += damp * cosh(a_hi * bt) * weight;
  };

  // Sums without the step factor: f(0)/2 + sum_{k>=1} f(k h).
  BigFloat sum_lo(bits), sum_hi(bits);
  add_node(BigFloat(0.0, bits), sum_lo, sum_hi, 0.5);
  for (std::size_t k = 1; k <= nodes; ++k) add_node(step * static_cast<double>(k), sum_lo, sum_hi, 1.0);
  BigFloat int_lo = sum_lo * step;
  BigFloat int_hi = sum_hi * step;

  for (unsigned halving = 0; halving < cfg.max_halvings; ++halving) {
    step /= 2.0;
    for (std::size_t k = 0; k < nodes; ++k) {
      add_node(step * static_cast<double>(2 * k + 1), sum_lo, sum_hi, 1.0);
    }
    nodes *= 2;
    BigFloat next_lo = sum_lo * step;
    BigFloat next_hi = sum_hi * step;
    const double change = std::max(relative_difference(next_lo, int_lo), relative_difference(next_hi, int_hi));
    int_lo = std::move(next_lo);
    int_hi = std::move(next_hi);
    if (change <= tol && halving >= 1) return {int_lo / int_hi, change, nodes + 1};
  }
  throw AccuracyError("oracle_ratio_K: step halving did not reach tolerance" + where(nu, x));
}

std::vector<CrossingBracket> crossing_search(const RealFn& f, const RealFn& g, double x_lo, double x_hi,
                                             std::size_t n) {
  if (!(x_lo > 0.0) || !(x_lo < x_hi)) throw DomainError("crossing_search: need 0 < x_lo < x_hi");
  if (n < 2) throw DomainError("crossing_search: need at least two grid points");
  const auto xs = log_grid(x_lo, x_hi, n);
  std::vector<double> diff(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double fv = f(xs[i]);
    const double gv = g(xs[i]);
    if (!std::isfinite(fv) || !std::isfinite(gv)) {
      std::ostringstream os;
      os.precision(17);
      os << "crossing_search: non-finite evaluation at x=" << xs[i];
      throw EvaluationError(os.str(), xs[i]);
    }
    diff[i] = fv - gv;
  }
  std::vector<CrossingBracket> out;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if ((diff[i] < 0.0 && diff[i + 1] > 0.0) || (diff[i] > 0.0 && diff[i + 1] < 0.0)) {
      out.push_back({xs[i], xs[i + 1], diff[i], diff[i + 1]});
    }
  }
  return out;
}

}  // namespace ratio_bounds::oracle
