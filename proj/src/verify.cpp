#include "ratio_bounds/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <future>
#include <limits>
#include <map>
#include <random>
#include <sstream>
#include <utility>

#include "ratio_bounds/bounds_i.hpp"
#include "ratio_bounds/bounds_k.hpp"
#include "ratio_bounds/cf.hpp"
#include "ratio_bounds/errors.hpp"
#include "ratio_bounds/grid.hpp"

namespace ratio_bounds::verify {
namespace {

// Tracks the smallest margin of a property; it passes if that margin >= -slack.
class Tracker {
 public:
  Tracker(std::string name, double slack) : name_(std::move(name)), slack_(slack) {}

  void add(double margin, double nu, double x) {
    margin += 0.0;  // normalise -0
    ++count_;
    if (margin < worst_ || count_ == 1) {
      worst_ = margin;
      nu_ = nu;
      x_ = x;
    }
  }

  Check result() const {
    Check c;
    c.name = name_;
    c.worst_margin = count_ ? worst_ : 0.0;
    c.passed = count_ > 0 && worst_ >= -slack_;
    std::ostringstream os;
    os.precision(6);
    if (count_) {
      os << count_ << " samples, worst at nu=" << nu_ << " x=" << x_;
    } else {
      os << "no samples";
    }
    c.detail = os.str();
    return c;
  }

 private:
  std::string name_;
  double slack_;
  std::size_t count_ = 0;
  double worst_ = std::numeric_limits<double>::infinity();
  double nu_ = 0.0;
  double x_ = 0.0;
};

Check boolean_check(std::string name, bool ok, std::string detail, double margin = 0.0) {
  return {std::move(name), ok, margin, std::move(detail)};
}

std::vector<double> x_grid(const SuiteOptions& o) { return o.xs.empty() ? log_grid(1e-3, 1e3, 25) : o.xs; }

using Table = std::map<std::pair<double, double>, double>;

// Oracle values over nus x xs, computed one nu-row per task.
Table oracle_table(Ratio ratio, const std::vector<double>& nus, const std::vector<double>& xs,
                   const oracle::PrecisionConfig& cfg) {
  std::vector<std::future<std::vector<double>>> rows;
  rows.reserve(nus.size());
  for (double nu : nus) {
    rows.push_back(std::async(std::launch::async, [=, &xs, &cfg] {
      std::vector<double> row;
      row.reserve(xs.size());
      for (double x : xs) {
        row.push_back(ratio == Ratio::I ? oracle::oracle_ratio_I(nu, x, cfg).to_double()
                                        : oracle::oracle_ratio_K(nu, x, cfg).to_double());
      }
      return row;
    }));
  }
  Table t;
  for (std::size_t i = 0; i < nus.size(); ++i) {
    const auto row = rows[i].get();
    for (std::size_t j = 0; j < xs.size(); ++j) t[{nus[i], xs[j]}] = row[j];
  }
  return t;
}

std::vector<Check> enclosures(const SuiteOptions& o) {
  const auto xs = x_grid(o);
  std::vector<Check> out;

  const std::vector<BoundSpec> i_specs{
      {Family::b, 1.0, Side::lower},      {Family::b, 0.0, Side::upper},    {Family::b, -1.0, Side::upper},
      {Family::cf1, 0.0, Side::lower},    {Family::cf1, 0.0, Side::upper},  {Family::B, 2.0, Side::lower},
      {Family::B, 0.0, Side::upper},      {Family::Btilde, 0.0, Side::lower}, {Family::Btilde, 2.0, Side::upper}};
  std::vector<double> i_nus;
  std::copy_if(o.nus_I.begin(), o.nus_I.end(), std::back_inserter(i_nus), [](double nu) { return nu >= 0.0; });
  const Table ti = oracle_table(Ratio::I, i_nus, xs, o.precision);
  for (const auto& spec : i_specs) {
    Tracker t("I " + label(spec) + " " + to_string(spec.side), 1e-12);
    for (double nu : i_nus) {
      if (!validity_I(spec, nu).valid) continue;
      for (double x : xs) {
        const double r = ti.at({nu, x});
        const double v = evaluate_I(spec, nu, x).value;
        t.add(spec.side == Side::lower ? (r - v) / r : (v - r) / r, nu, x);
      }
    }
    out.push_back(t.result());
  }
  for (int level = 0; level <= 2; ++level) {
    Tracker t("I enclosure level " + std::to_string(level), 1e-12);
    for (double nu : i_nus) {
      for (double x : xs) {
        const double r = ti.at({nu, x});
        const Enclosure e = enclosure_I(nu, x, level);
        t.add(std::min((r - e.lower.value) / r, (e.upper.value - r) / r), nu, x);
      }
    }
    out.push_back(t.result());
  }

  const Table tk = oracle_table(Ratio::K, o.nus_K, xs, o.precision);
  auto k_specs = [](double nu) {
    return std::vector<BoundSpec>{{Family::d, -1.0, Side::lower},
                                  {Family::d, 0.0, Side::lower},
                                  {Family::d, 1.0, Side::upper},
                                  {Family::D, 0.0, Side::upper},
                                  {Family::D, 2.0 * nu - 1.0, Side::lower}};
  };
  const char* k_names[] = {"K d-1 lower", "K d0 lower", "K d1 upper", "K D0 upper", "K D(2nu-1) lower"};
  for (std::size_t s = 0; s < 5; ++s) {
    Tracker t(k_names[s], 2e-12);
    for (double nu : o.nus_K) {
      const BoundSpec spec = k_specs(nu)[s];
      if (!validity_K(spec, nu).valid) continue;
      for (double x : xs) {
        const double r = tk.at({nu, x});
        const double v = evaluate_K(spec, nu, x).value;
        t.add(spec.side == Side::lower ? (r - v) / r : (v - r) / r, nu, x);
      }
    }
    out.push_back(t.result());
  }
  for (int level = 0; level <= 1; ++level) {
    Tracker t("K enclosure level " + std::to_string(level), 2e-12);
    for (double nu : o.nus_K) {
      for (double x : xs) {
        const double r = tk.at({nu, x});
        const Enclosure e = enclosure_K(nu, x, level);
        t.add(std::min((r - e.lower.value) / r, (e.upper.value - r) / r), nu, x);
      }
    }
    out.push_back(t.result());
  }
  return out;
}

std::vector<Check> monotonicity(const SuiteOptions& o) {
  const auto xs = x_grid(o);
  const auto alphas = linear_grid(-3.0, 3.0, 25);
  Tracker tb("b decreasing in alpha", 1e-13), tB("B decreasing in alpha", 1e-13);
  Tracker td("d increasing in alpha", 1e-13), tD("D decreasing in alpha", 1e-13);
  for (double nu : o.nus_I) {
    for (double x : xs) {
      for (std::size_t k = 0; k + 1 < alphas.size(); ++k) {
        const double a1 = alphas[k], a2 = alphas[k + 1];
        const double b1 = b_alpha(nu, a1, x), b2 = b_alpha(nu, a2, x);
        tb.add((b1 - b2) / b1, nu, x);
        const double B1 = B_alpha(nu, a1, x), B2 = B_alpha(nu, a2, x);
        tB.add((B1 - B2) / B1, nu, x);
      }
    }
  }
  for (double nu : o.nus_K) {
    for (double x : xs) {
      for (std::size_t k = 0; k + 1 < alphas.size(); ++k) {
        const double a1 = alphas[k], a2 = alphas[k + 1];
        const double d1 = d_alpha(nu, a1, x), d2 = d_alpha(nu, a2, x);
        td.add((d2 - d1) / d2, nu, x);
        const double D1 = D_alpha(nu, a1, x), D2 = D_alpha(nu, a2, x);
        tD.add((D1 - D2) / D1, nu, x);
      }
    }
  }
  return {tb.result(), tB.result(), td.result(), tD.result()};
}

std::vector<Check> identities(const SuiteOptions& o) {
  std::mt19937_64 rng(o.seed);
  std::uniform_real_distribution<double> unu(0.0, 20.0);
  std::uniform_real_distribution<double> ulogx(-3.0, 3.0);
  Tracker t1("D(2nu-1) = d0", 1e-13), t2("B(1-2nu) = b0", 1e-13), t3("1/d1(1-nu) = d-1", 1e-13);
  Tracker t4("B(+1e8) -> b1", 1e-7), t5("B(-1e8) -> b-1", 1e-7);
  Tracker t6("D(-1e8) -> d1", 1e-7), t7("D(+1e8) -> d-1", 1e-7);
  Tracker t8("Btilde = cf(B at nu+1)", 1e-13), t9("cf1 = cf(b at nu+1)", 1e-13);
  auto rel = [](double a, double b) { return -std::abs(a - b) / std::abs(b); };
  for (std::size_t i = 0; i < o.random_samples; ++i) {
    const double nu = unu(rng);
    const double x = std::pow(10.0, ulogx(rng));
    t1.add(rel(D_alpha(nu, 2.0 * nu - 1.0, x), d_alpha(nu, 0.0, x)), nu, x);
    t2.add(rel(B_alpha(nu, 1.0 - 2.0 * nu, x), b_alpha(nu, 0.0, x)), nu, x);
    t3.add(rel(reflect_K(nu, x, d_alpha(1.0 - nu, 1.0, x)), d_alpha(nu, -1.0, x)), nu, x);
    t4.add(rel(B_alpha(nu, 1e8, x), b_alpha(nu, 1.0, x)), nu, x);
    t5.add(rel(B_alpha(nu, -1e8, x), b_alpha(nu, -1.0, x)), nu, x);
    t6.add(rel(D_alpha(nu, -1e8, x), d_alpha(nu, 1.0, x)), nu, x);
    t7.add(rel(D_alpha(nu, 1e8, x), d_alpha(nu, -1.0, x)), nu, x);
    const double bt0 = 1.0 / (2.0 * nu / x + B_alpha(nu + 1.0, 0.0, x));
    const double bt2 = 1.0 / (2.0 * nu / x + B_alpha(nu + 1.0, 2.0, x));
    t8.add(std::min(rel(Btilde_alpha(nu, 0.0, x), bt0), rel(Btilde_alpha(nu, 2.0, x), bt2)), nu, x);
    const Enclosure c = cf1_bounds(nu, x);
    t9.add(std::min(rel(c.lower.value, 1.0 / (2.0 * nu / x + b_alpha(nu + 1.0, 0.0, x))),
                    rel(c.upper.value, 1.0 / (2.0 * nu / x + b_alpha(nu + 1.0, 1.0, x)))),
           nu, x);
  }
  return {t1.result(), t2.result(), t3.result(), t4.result(), t5.result(),
          t6.result(), t7.result(), t8.result(), t9.result()};
}

std::vector<Check> sharpness(const SuiteOptions& o) {
  const auto xs = x_grid(o);
  Tracker s1("B0 <= b0", 1e-13), s2("B2 >= b1", 1e-13), s3("Btilde0 >= B2", 1e-13);
  Tracker s4("D0 <= d1", 1e-13), s5("d-1 <= d0", 1e-13), s6("cf1 lower >= b1", 1e-13);
  Tracker s7("cf1 upper < b0 iff x^2 < 4nu(2nu+1)", 1e-12);
  for (double nu : o.nus_I) {
    if (nu < 0.0) continue;
    for (double x : xs) {
      const double b0 = b_alpha(nu, 0.0, x), b1 = b_alpha(nu, 1.0, x);
      const Enclosure c = cf1_bounds(nu, x);
      s6.add((c.lower.value - b1) / b1, nu, x);
      if (nu < 0.5) continue;
      s1.add((b0 - B_alpha(nu, 0.0, x)) / b0, nu, x);
      s2.add((B_alpha(nu, 2.0, x) - b1) / b1, nu, x);
      s3.add((Btilde_alpha(nu, 0.0, x) - B_alpha(nu, 2.0, x)) / b1, nu, x);
      // Sign of b0 - cf1_upper must match the predicate; 1e-12 slack near the switch.
      const double diff = (b0 - c.upper.value) / b0;
      const bool predicate = x * x < 4.0 * nu * (2.0 * nu + 1.0);
      s7.add(predicate ? diff : -diff, nu, x);
    }
  }
  for (double nu : o.nus_K) {
    if (nu < 0.5) continue;
    for (double x : xs) {
      const double d1 = d_alpha(nu, 1.0, x), d0 = d_alpha(nu, 0.0, x);
      s4.add((d1 - D_alpha(nu, 0.0, x)) / d1, nu, x);
      s5.add((d0 - d_alpha(nu, -1.0, x)) / d0, nu, x);
    }
  }
  const double big_x_gap = Btilde_alpha(1.0, 2.0, 100.0) - B_alpha(1.0, 0.0, 100.0);
  return {s1.result(), s2.result(), s3.result(), s4.result(), s5.result(), s6.result(), s7.result(),
          boolean_check("B0 < Btilde2 at nu=1, x=100", big_x_gap > 0.0, "upper bounds at large x",
                        big_x_gap / B_alpha(1.0, 0.0, 100.0))};
}

std::vector<Check> crossings(const SuiteOptions& o) {
  const auto& cfg = o.precision;
  struct Case {
    std::string name;
    oracle::RealFn f, g;
  };
  const std::vector<Case> cases{
      {"b(alpha=0.5) crosses I ratio at nu=2", [&](double x) { return oracle::oracle_ratio_I(2.0, x, cfg).to_double(); },
       [](double x) { return b_alpha(2.0, 0.5, x); }},
      {"d(alpha=0.5) crosses K ratio at nu=2", [&](double x) { return oracle::oracle_ratio_K(2.0, x, cfg).to_double(); },
       [](double x) { return d_alpha(2.0, 0.5, x); }},
      {"B(alpha=1) crosses I ratio at nu=1", [&](double x) { return oracle::oracle_ratio_I(1.0, x, cfg).to_double(); },
       [](double x) { return B_alpha(1.0, 1.0, x); }},
  };
  std::vector<std::future<std::vector<oracle::CrossingBracket>>> jobs;
  for (const auto& c : cases) {
    jobs.push_back(std::async(std::launch::async, [&c] { return oracle::crossing_search(c.f, c.g, 1e-2, 1e2, 200); }));
  }
  std::vector<Check> out;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const auto brackets = jobs[i].get();
    std::ostringstream os;
    os.precision(6);
    os << brackets.size() << " bracket(s)";
    for (const auto& b : brackets) os << " [" << b.x_lo << ", " << b.x_hi << "]";
    out.push_back(boolean_check(cases[i].name, !brackets.empty(), os.str(), static_cast<double>(brackets.size())));
  }
  return out;
}

std::vector<Check> cf_suite(const SuiteOptions& o) {
  using namespace cf;
  std::vector<Check> out;
  const auto& cfg = o.precision;

  const std::vector<double> nus{0.0, 0.5, 1.0, 2.0, 5.0};
  const std::vector<double> xs{0.01, 0.5, 1.0, 5.0, 20.0, 100.0};
  Tracker bracket("sequences bracket the ratio (depth 0..4)", 1e-12);
  Tracker sharper("level-1 sequences sharper than b-level sequences for x>=20", 0.0);
  Tracker parity("H odd >= ratio >= H even", 1e-12);
  for (double nu : nus) {
    for (double x : xs) {
      const double r = oracle::oracle_ratio_I(nu, x, cfg).to_double();
      for (int seed = 0; seed <= 1; ++seed) {
        for (std::size_t i = 0; i <= 4; ++i) {
          const Enclosure e = iterate_enclosure_I(nu, x, i, seed);
          bracket.add(std::min((r - e.lower.value) / r, (e.upper.value - r) / r), nu, x);
        }
      }
      if (x >= 20.0 && nu >= 0.5) {
        for (std::size_t i = 0; i <= 4; ++i) {
          const double c = measured_gap(GapKind::b_level, nu, x, i);
          sharper.add((c - measured_gap(GapKind::B_level, nu, x, i)) / c, nu, x);
        }
      }
      if (nu >= 1.0) {
        for (std::size_t i = 1; i <= 3; ++i) {
          parity.add((cf_approximant(nu, x, 2 * i - 1) - r) / r, nu, x);
          parity.add((r - cf_approximant(nu, x, 2 * i)) / r, nu, x);
        }
      }
    }
  }
  out.push_back(bracket.result());
  out.push_back(sharper.result());
  out.push_back(parity.result());

  {
    Tracker t("H gap formula within 1%", 0.0);
    const double nu = o.cf_nu, x = o.cf_x;
    for (std::size_t i = 1; i <= 2; ++i) {
      const double measured = cf_approximant(nu, x, 2 * i - 1) / cf_approximant(nu, x, 2 * i) - 1.0;
      const double di = static_cast<double>(i);
      const double model = x * x / ((2 * di) * (2 * di) * (nu + di) * (nu + di - 1.0));
      t.add(0.01 - std::abs(measured / model - 1.0), nu, x);
    }
    out.push_back(t.result());
  }
  {
    Tracker b("b-level gaps within 20% of 1/(2x) at x=200", 0.0);
    Tracker B("B-level gaps within 20% of 1/(2x^2) at x=200", 0.0);
    for (std::size_t i = 0; i <= 3; ++i) {
      b.add(0.2 - std::abs(measured_gap(GapKind::b_level, 1.0, 200.0, i) * 400.0 - 1.0), 1.0, 200.0);
      B.add(0.2 - std::abs(measured_gap(GapKind::B_level, 1.0, 200.0, i) * 80000.0 - 1.0), 1.0, 200.0);
    }
    out.push_back(b.result());
    out.push_back(B.result());
  }
  {
    Tracker t("c(i+1)_nu / c(i)_(nu+1) within 10% of x^2/(4nu^2) at nu=10, x=0.1", 0.0);
    const double nu = 10.0, x = 0.1, model = x * x / (4.0 * nu * nu);
    for (std::size_t i = 0; i <= 2; ++i) {
      const double q = measured_gap(GapKind::b_level, nu, x, i + 1) / measured_gap(GapKind::b_level, nu + 1.0, x, i);
      t.add(0.1 - std::abs(q / model - 1.0), nu, x);
    }
    out.push_back(t.result());
  }
  {
    struct M {
      const char* name;
      GapKind kind;
      Limit limit;
      double nu, x, tol;
    };
    const M ms[] = {{"b-level x=1000 vs 1/(2x)", GapKind::b_level, Limit::x_to_infinity, 1.0, 1000.0, 0.01},
                    {"B-level x=1000 vs 1/(2x^2)", GapKind::B_level, Limit::x_to_infinity, 1.0, 1000.0, 0.01},
                    {"b-level x=1e-3 vs 1/(2nu-1)", GapKind::b_level, Limit::x_to_zero, 1.0, 1e-3, 0.01},
                    {"B-level x=1e-3 vs 8x^2/(4nu^2-1)^2", GapKind::B_level, Limit::x_to_zero, 1.0, 1e-3, 0.01},
                    {"B-level nu=50 vs x^2/(2nu^4)", GapKind::B_level, Limit::nu_to_infinity, 50.0, 1.0, 0.05}};
    for (const auto& m : ms) {
      const double q = measured_gap(m.kind, m.nu, m.x, 0) / sharpness_model(m.kind, m.limit, m.nu, m.x, 0);
      std::ostringstream os;
      os.precision(8);
      os << "measured/model = " << q;
      out.push_back(boolean_check(m.name, std::abs(q - 1.0) <= m.tol, os.str(), m.tol - std::abs(q - 1.0)));
    }
  }
  {
    bool ok = true;
    std::ostringstream os;
    for (double x : {10.0, 100.0, 1000.0}) {
      const auto z = evaluate_ratio_I(1.0, x, 1e-10, TailPolicy::zero).iterations;
      const auto b = evaluate_ratio_I(1.0, x, 1e-10, TailPolicy::b_level).iterations;
      const auto B = evaluate_ratio_I(1.0, x, 1e-10, TailPolicy::B_level).iterations;
      const bool strict = x >= 100.0;
      ok = ok && B <= b && b <= z && (!strict || (B < b && b < z));
      os << "x=" << x << ": B=" << B << " b=" << b << " zero=" << z << "; ";
    }
    out.push_back(boolean_check("tail policies: iterations B <= b <= zero (strict for x>=100)", ok, os.str()));
  }
  return out;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"enclosures", "monotonicity", "identities",
                                              "sharpness",  "crossings",    "cf"};
  return names;
}

std::vector<Check> run_suite(std::string_view name, const SuiteOptions& options) {
  if (name == "all") {
    std::vector<Check> all;
    for (const auto& n : suite_names()) {
      auto part = run_suite(n, options);
      all.insert(all.end(), part.begin(), part.end());
    }
    return all;
  }
  if (name == "enclosures") return enclosures(options);
  if (name == "monotonicity") return monotonicity(options);
  if (name == "identities") return identities(options);
  if (name == "sharpness") return sharpness(options);
  if (name == "crossings") return crossings(options);
  if (name == "cf") return cf_suite(options);
  throw DomainError("unknown verification suite: " + std::string(name));
}

}  // namespace ratio_bounds::verify
