#include "ratio_bounds/riccati.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "ratio_bounds/errors.hpp"

namespace ratio_bounds::riccati {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double sign_of(Branch b) { return b == Branch::plus ? 1.0 : -1.0; }

std::string at_x(const char* what, double x) {
  std::ostringstream os;
  os.precision(17);
  os << what << " at x=" << x;
  return os.str();
}

}  // namespace

CoefficientSet i_instance(double nu, double alpha) {
  const double lambda = nu + 0.5 * (alpha - 1.0);
  CoefficientSet c;
  c.a0 = [alpha](double x) { return std::pow(x, -alpha); };
  c.b0 = [lambda](double x) { return -2.0 * lambda / x; };
  c.c0 = [alpha](double x) { return -std::pow(x, alpha); };
  c.da0 = [alpha](double x) { return -alpha * std::pow(x, -alpha - 1.0); };
  c.db0 = [lambda](double x) { return 2.0 * lambda / (x * x); };
  c.dc0 = [alpha](double x) { return -alpha * std::pow(x, alpha - 1.0); };
  c.domain = {0.0, kInf};
  std::ostringstream os;
  os << "I(nu=" << nu << ", alpha=" << alpha << ")";
  c.name = os.str();
  return c;
}

CoefficientSet k_instance(double nu, double alpha) {
  const double tau = nu - 0.5 * (alpha + 1.0);
  CoefficientSet c;
  c.a0 = [alpha](double x) { return -std::pow(x, -alpha); };
  c.b0 = [tau](double x) { return 2.0 * tau / x; };
  c.c0 = [alpha](double x) { return std::pow(x, alpha); };
  c.da0 = [alpha](double x) { return alpha * std::pow(x, -alpha - 1.0); };
  c.db0 = [tau](double x) { return -2.0 * tau / (x * x); };
  c.dc0 = [alpha](double x) { return alpha * std::pow(x, alpha - 1.0); };
  c.domain = {0.0, kInf};
  std::ostringstream os;
  os << "K(nu=" << nu << ", alpha=" << alpha << ")";
  c.name = os.str();
  return c;
}

double characteristic_root(const CoefficientSet& coeffs, double x, Branch branch) {
  if (!coeffs.domain.contains(x)) throw DomainError(at_x("characteristic_root: outside domain", x));
  const double a = coeffs.a0(x);
  const double b = coeffs.b0(x);
  const double c = coeffs.c0(x);
  if (!(a * c < 0.0)) throw HypothesisError(at_x("characteristic_root: A0*C0 >= 0", x));
  // Roots q/C and A/q with q = -(B + sign(B) sqrt(disc))/2 avoid cancellation.
  const double disc = b * b - 4.0 * a * c;
  const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
  const double r1 = q / c;
  const double r2 = a / q;
  const double pos = std::max(r1, r2);
  const double neg = std::min(r1, r2);
  return branch == Branch::plus ? pos : neg;
}

double beta_from_eta(double eta, double gamma, Branch branch) {
  const double root = std::sqrt(eta * eta + gamma);
  if (branch == Branch::plus) {
    return eta >= 0.0 ? 1.0 / (eta + root) : (root - eta) / gamma;
  }
  return eta <= 0.0 ? 1.0 / (eta - root) : -(root + eta) / gamma;
}

IterationState::IterationState(CoefficientSet coeffs, std::vector<Branch> branches)
    : coeffs_(std::move(coeffs)), branches_(std::move(branches)) {
  if (branches_.empty()) throw DomainError("IterationState: branch chain must have length n + 1 >= 1");
}

IterationState IterationState::positive_chain(CoefficientSet coeffs, std::size_t n) {
  return IterationState(std::move(coeffs), std::vector<Branch>(n + 1, Branch::plus));
}

void IterationState::check_point(double x) const {
  if (!coeffs_.domain.contains(x)) throw DomainError(at_x("iterate: outside domain", x));
}

double IterationState::gamma(double x) const {
  check_point(x);
  const double g = -coeffs_.c0(x) / coeffs_.a0(x);
  if (!(g > 0.0)) throw HypothesisError(at_x("iterate: gamma = -C0/A0 must be positive", x));
  return g;
}

double IterationState::gamma_prime(double x) const {
  const double a = coeffs_.a0(x);
  const double c = coeffs_.c0(x);
  return -(coeffs_.dc0(x) * a - c * coeffs_.da0(x)) / (a * a);
}

double IterationState::eta_at(std::size_t k, double x) const {
  check_point(x);
  const double a = coeffs_.a0(x);
  const double eta0 = -coeffs_.b0(x) / (2.0 * a);
  if (k == 0) return eta0;
  const double g = gamma(x);
  const double prev = eta_at(k - 1, x);
  const double num = eta_prime_at(k - 1, x) + 0.5 * beta_at(k - 1, x) * gamma_prime(x);
  return eta0 - sign_of(branches_.at(k - 1)) * num / (2.0 * a * std::sqrt(prev * prev + g));
}

double IterationState::eta_prime_at(std::size_t k, double x) const {
  check_point(x);
  if (k == 0) {
    const double a = coeffs_.a0(x);
    return -(coeffs_.db0(x) * a - coeffs_.b0(x) * coeffs_.da0(x)) / (2.0 * a * a);
  }
  const double cbrt_eps = std::cbrt(std::numeric_limits<double>::epsilon());
  const double h = std::min(std::max(1.0, std::abs(x)) * cbrt_eps, x / 4.0);
  if (!coeffs_.domain.contains(x - h) || !coeffs_.domain.contains(x + h)) {
    throw DerivativeError(at_x("eta': difference stencil leaves the domain", x));
  }
  auto central = [&](double step) {
    return (eta_at(k, x + step) - eta_at(k, x - step)) / (2.0 * step);
  };
  const double d1 = central(h);
  const double d2 = central(0.5 * h);
  const double scale = std::abs(d2) + 1e-6 * std::abs(eta_at(k, x)) / x;
  if (!std::isfinite(d1) || !std::isfinite(d2) || std::abs(d1 - d2) > 1e-4 * scale) {
    throw DerivativeError(at_x("eta': step-halving estimates disagree", x));
  }
  return (4.0 * d2 - d1) / 3.0;
}

double IterationState::beta_at(std::size_t k, double x) const {
  return beta_from_eta(eta_at(k, x), gamma(x), branches_.at(k));
}

IterationState::Coefficients IterationState::transformed(std::size_t k, double x) const {
  check_point(x);
  const double a = coeffs_.a0(x);
  const double c = coeffs_.c0(x);
  if (k == 0) return {a, coeffs_.b0(x), c};
  const double prev_beta = beta_at(k - 1, x);
  return {a / prev_beta, -2.0 * a * eta_at(k, x), prev_beta * c};
}

IterationPoint iterate(const CoefficientSet& coeffs, std::size_t n, std::span<const Branch> branches,
                       double x) {
  if (branches.size() != n + 1) throw DomainError("iterate: need exactly n + 1 branch signs");
  IterationState state(coeffs, std::vector<Branch>(branches.begin(), branches.end()));
  IterationPoint p;
  p.eta = state.eta(x);
  p.beta = beta_from_eta(p.eta, state.gamma(x), branches[n]);
  p.approximation_only = state.approximation_only();
  return p;
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::certified: return "certified";
    case Verdict::refuted: return "refuted";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

CertificateReport certify(const CoefficientSet& coeffs, const RealFn& root, const RealFn& ratio_probe,
                          std::span<const double> grid) {
  if (grid.empty()) throw DomainError("certify: empty grid");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!coeffs.domain.contains(grid[i])) throw DomainError(at_x("certify: grid point outside domain", grid[i]));
    if (i > 0 && !(grid[i] > grid[i - 1])) throw DomainError("certify: grid must be strictly increasing");
  }

  CertificateReport report;
  report.samples.reserve(grid.size());
  for (double x : grid) {
    Sample s{x, coeffs.a0(x), coeffs.c0(x), root(x), ratio_probe(x)};
    if (!std::isfinite(s.a0) || !std::isfinite(s.c0) || !std::isfinite(s.root) || !std::isfinite(s.ratio)) {
      throw EvaluationError(at_x("certify: non-finite evaluation", x), x);
    }
    report.samples.push_back(s);
  }
  const auto& sm = report.samples;

  auto add = [&](std::string name, bool ok, std::string detail) {
    report.checks.push_back({std::move(name), ok, std::move(detail)});
  };

  bool ac_negative = std::all_of(sm.begin(), sm.end(), [](const Sample& s) { return s.a0 * s.c0 < 0.0; });
  add("A0*C0<0", ac_negative, ac_negative ? "" : "A0*C0 >= 0 at a sample");

  const bool c_negative = std::all_of(sm.begin(), sm.end(), [](const Sample& s) { return s.c0 < 0.0; });
  const bool c_positive = std::all_of(sm.begin(), sm.end(), [](const Sample& s) { return s.c0 > 0.0; });
  add("C0 constant sign", c_negative || c_positive,
      c_negative ? "C0<0 (endpoint 0+)" : c_positive ? "C0>0 (endpoint +inf)" : "C0 changes sign");

  const bool root_positive = std::all_of(sm.begin(), sm.end(), [](const Sample& s) { return s.root > 0.0; });
  add("root positive", root_positive, "");

  // Crossing of ratio and root anywhere on the grid refutes the bound.
  for (std::size_t i = 0; i + 1 < sm.size(); ++i) {
    const double d0 = sm[i].ratio - sm[i].root;
    const double d1 = sm[i + 1].ratio - sm[i + 1].root;
    if ((d0 < 0.0 && d1 > 0.0) || (d0 > 0.0 && d1 < 0.0)) {
      report.witness = Witness{sm[i].x, sm[i + 1].x};
      break;
    }
  }
  add("no crossing", !report.witness.has_value(), "");

  if (sm.size() < 2) {
    add("root strictly monotone", false, "needs at least two samples");
    report.verdict = Verdict::inconclusive;
    return report;
  }

  int direction = 0;
  bool monotone = true;
  for (std::size_t i = 0; i + 1 < sm.size(); ++i) {
    const double diff = sm[i + 1].root - sm[i].root;
    const int s = diff > 0.0 ? 1 : (diff < 0.0 ? -1 : 0);
    if (s == 0 || (direction != 0 && s != direction)) {
      monotone = false;
      break;
    }
    direction = s;
  }
  add("root strictly monotone", monotone,
      monotone ? (direction > 0 ? "increasing" : "decreasing") : "sampled differences change sign");

  bool endpoint_ok = false;
  std::string endpoint_detail = "C0 sign undetermined";
  if (c_negative || c_positive) {
    const std::size_t i0 = c_negative ? 0 : sm.size() - 2;
    const Sample& s0 = sm[i0];
    const Sample& s1 = sm[i0 + 1];
    const double droot = s1.root - s0.root;
    const double dratio = s1.ratio - s0.ratio;
    const double h_end = c_negative ? s0.ratio : s1.ratio;
    endpoint_ok = droot * dratio > 0.0 && h_end > 0.0;
    endpoint_detail = c_negative ? "at 0+" : "at +inf";
  }
  add("endpoint phi'*h'>0", endpoint_ok, endpoint_detail);

  if (report.witness) {
    report.verdict = Verdict::refuted;
  } else if (std::all_of(report.checks.begin(), report.checks.end(), [](const CheckResult& c) { return c.passed; })) {
    report.verdict = Verdict::certified;
  } else {
    report.verdict = Verdict::inconclusive;
  }
  return report;
}

}  // namespace ratio_bounds::riccati
