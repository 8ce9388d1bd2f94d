// Characteristic-root bounds for Riccati equations h' = A + B h + C h^2.
//
// If A*C < 0 the characteristic equation A + B phi + C phi^2 = 0 has one
// positive and one negative root. Under monotonicity conditions the positive
// root bounds h from one side. Dividing h by such a root yields a new Riccati
// equation whose root gives a sharper candidate; repeating this n times gives
// the iterated candidates beta_n implemented here.
//
// In the notation used throughout:
//   gamma(x) = -C0(x)/A0(x) > 0,   eta_0(x) = -B0(x) / (2 A0(x)),
//   beta_n  = 1 / (eta_n +- sqrt(eta_n^2 + gamma)),
//   eta_n   = eta_0 -+ (eta'_{n-1} + beta_{n-1} gamma' / 2)
//                        / (2 A0 sqrt(eta_{n-1}^2 + gamma)).
#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ratio_bounds::riccati {

using RealFn = std::function<double(double)>;

/// Open interval (lo, hi).
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool contains(double x) const { return x > lo && x < hi; }
};

/// Coefficients of h' = A0 + B0 h + C0 h^2 together with their derivatives.
struct CoefficientSet {
  RealFn a0, b0, c0;
  RealFn da0, db0, dc0;
  Interval domain;
  std::string name;
};

/// Equation for h0 = x^(-alpha) I_nu(x)/I_{nu-1}(x):
///   h0' = x^-alpha - (2 lambda / x) h0 - x^alpha h0^2,  lambda = nu + (alpha-1)/2.
CoefficientSet i_instance(double nu, double alpha);

/// Equation for h0 = x^(-alpha) K_{nu-1}(x)/K_nu(x):
///   h0' = -x^-alpha + (2 tau / x) h0 + x^alpha h0^2,    tau = nu - (alpha+1)/2.
CoefficientSet k_instance(double nu, double alpha);

/// Root branch. plus selects the positive characteristic root.
enum class Branch { plus, minus };

/// Root of A0 + B0 phi + C0 phi^2 = 0 at x. Throws DomainError outside the
/// domain and HypothesisError when A0*C0 >= 0.
double characteristic_root(const CoefficientSet& coeffs, double x, Branch branch = Branch::plus);

/// 1/(eta + s sqrt(eta^2 + gamma)) without subtractive cancellation.
double beta_from_eta(double eta, double gamma, Branch branch);

struct IterationPoint {
  double beta = 0.0;
  double eta = 0.0;
  /// True for n >= 2: such candidates are not bounds for any alpha, only approximations.
  bool approximation_only = false;
};

/// Iterated Riccati candidates beta_n and shifts eta_n for a fixed branch chain.
///
/// eta'_0 comes from the coefficient derivatives in closed form; eta'_k for
/// k >= 1 is a central difference validated against a half-step estimate.
class IterationState {
 public:
  /// branches.size() == n + 1; branches[k] selects the root used at step k.
  IterationState(CoefficientSet coeffs, std::vector<Branch> branches);

  /// Positive-root chain of length n + 1.
  static IterationState positive_chain(CoefficientSet coeffs, std::size_t n);

  std::size_t n() const { return branches_.size() - 1; }
  const std::vector<Branch>& branches() const { return branches_; }
  const CoefficientSet& coefficients() const { return coeffs_; }
  bool approximation_only() const { return n() >= 2; }

  double gamma(double x) const;
  double gamma_prime(double x) const;
  double eta(double x) const { return eta_at(n(), x); }
  double eta_prime(double x) const { return eta_prime_at(n(), x); }
  double beta(double x) const { return beta_at(n(), x); }

  double eta_at(std::size_t k, double x) const;
  double eta_prime_at(std::size_t k, double x) const;
  double beta_at(std::size_t k, double x) const;

  /// Coefficients A_k, B_k, C_k of the k-th transformed equation at x.
  struct Coefficients {
    double a, b, c;
  };
  Coefficients transformed(std::size_t k, double x) const;

 private:
  void check_point(double x) const;

  CoefficientSet coeffs_;
  std::vector<Branch> branches_;
};

/// beta_n and eta_n at x for the given branch chain (length n + 1).
IterationPoint iterate(const CoefficientSet& coeffs, std::size_t n, std::span<const Branch> branches,
                       double x);

// Sampled certification of the characteristic-root bound hypotheses.

enum class Verdict { certified, refuted, inconclusive };
const char* to_string(Verdict v);

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct Sample {
  double x = 0.0;
  double a0 = 0.0;
  double c0 = 0.0;
  double root = 0.0;
  double ratio = 0.0;
};

/// Grid interval on which ratio - root changes sign.
struct Witness {
  double x_lo = 0.0;
  double x_hi = 0.0;
};

struct CertificateReport {
  std::vector<CheckResult> checks;
  Verdict verdict = Verdict::inconclusive;
  std::optional<Witness> witness;
  std::vector<Sample> samples;
  /// Always false: a finite sample can support the hypotheses, not prove them.
  bool is_proof = false;
};

/// Checks, on a strictly increasing grid inside the domain: A0*C0 < 0 and a
/// constant sign of C0, positivity and strict monotonicity of the root, and
/// the endpoint condition root' * ratio' > 0 at 0+ (C0 < 0) or +infinity
/// (C0 > 0) from the two outermost samples. A sign change of ratio - root
/// refutes; one sample is inconclusive. Throws EvaluationError on non-finite
/// values.
CertificateReport certify(const CoefficientSet& coeffs, const RealFn& root, const RealFn& ratio_probe,
                          std::span<const double> grid);

}  // namespace ratio_bounds::riccati
