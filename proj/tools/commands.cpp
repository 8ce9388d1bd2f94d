#include "commands.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

#include "ratio_bounds/bounds_i.hpp"
#include "ratio_bounds/bounds_k.hpp"
#include "ratio_bounds/errors.hpp"
#include "ratio_bounds/grid.hpp"
#include "ratio_bounds/verify.hpp"

namespace ratio_bounds::cli {

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ConvergenceError*>(&e) || dynamic_cast<const AccuracyError*>(&e) ||
      dynamic_cast<const EvaluationError*>(&e) || dynamic_cast<const DerivativeError*>(&e)) {
    return kNumeric;
  }
  if (dynamic_cast<const Error*>(&e)) return kUsage;
  return kNumeric;
}

// Runs a command body and maps library exceptions onto exit codes.
template <class F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
}

double oracle_value(Ratio kind, double nu, double x, const oracle::PrecisionConfig& cfg) {
  return kind == Ratio::I ? oracle::oracle_ratio_I(nu, x, cfg).to_double()
                          : oracle::oracle_ratio_K(nu, x, cfg).to_double();
}

Enclosure enclosure(Ratio kind, double nu, double x, int level) {
  return kind == Ratio::I ? enclosure_I(nu, x, level) : enclosure_K(nu, x, level);
}

void field(std::ostream& out, const char* key, const std::string& value) { out << key << "=" << value << "\n"; }
void field(std::ostream& out, const char* key, double value) { field(out, key, format_number(value)); }

}  // namespace

int cmd_enclose(const EncloseArgs& a, const oracle::PrecisionConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (!(a.x > 0.0)) throw DomainError("x must be positive");
    if (a.family) {
      if (*a.family == Family::cf_map) throw DomainError("cf_map is not a closed-form family");
      const Ratio kind = ratio_of(*a.family);
      if (kind != a.kind) {
        throw DomainError(std::string("family ") + to_string(*a.family) + " bounds the " + to_string(kind) + " ratio");
      }
      const BoundSpec spec{*a.family, a.alpha, a.side};
      const BoundValue v = kind == Ratio::I ? evaluate_I(spec, a.nu, a.x) : evaluate_K(spec, a.nu, a.x);
      if (!v.validity.valid && !a.unchecked) {
        err << "error: " << v.label << " " << to_string(a.side) << " is not a proven bound at nu=" << format_number(a.nu)
            << ": " << v.validity.reason << " (pass --unchecked to evaluate anyway)\n";
        return static_cast<int>(kUsage);
      }
      field(out, "nu", a.nu);
      field(out, "x", a.x);
      field(out, "family", v.label);
      field(out, "side", to_string(a.side));
      field(out, "value", v.value);
      field(out, "valid", v.validity.valid ? "true" : "false");
      field(out, "reason", v.validity.reason);
      if (a.oracle) field(out, "oracle", oracle_value(kind, a.nu, a.x, cfg));
      return static_cast<int>(kOk);
    }
    const Enclosure e = enclosure(a.kind, a.nu, a.x, a.level);
    field(out, "nu", a.nu);
    field(out, "x", a.x);
    field(out, "lower", e.lower.value);
    field(out, "lower_family", e.lower.label);
    field(out, "upper", e.upper.value);
    field(out, "upper_family", e.upper.label);
    field(out, "gap", e.gap());
    if (a.oracle) field(out, "oracle", oracle_value(a.kind, a.nu, a.x, cfg));
    return static_cast<int>(kOk);
  });
}

int cmd_verify(const VerifyArgs& a, const oracle::PrecisionConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto& names = verify::suite_names();
    if (a.suite != "all" && std::find(names.begin(), names.end(), a.suite) == names.end()) {
      throw DomainError("unknown suite '" + a.suite + "'");
    }
    for (double x : a.xs) {
      if (!(x > 0.0)) throw DomainError("x values must be positive");
    }
    verify::SuiteOptions opts;
    opts.precision = cfg;
    opts.random_samples = a.samples;
    opts.seed = a.seed;
    if (!a.nus.empty()) {
      opts.nus_I = a.nus;
      opts.nus_K = a.nus;
      opts.cf_nu = a.nus.front();
    }
    if (!a.xs.empty()) {
      opts.xs = a.xs;
      opts.cf_x = a.xs.front();
    }
    const auto checks = verify::run_suite(a.suite, opts);
    std::size_t passed = 0;
    for (const auto& c : checks) {
      passed += c.passed;
      out << (c.passed ? "PASS  " : "FAIL  ") << std::left << std::setw(66) << c.name
          << " worst_margin=" << std::setw(24) << format_number(c.worst_margin) << " " << c.detail << "\n";
    }
    out << passed << "/" << checks.size() << " checks passed\n";
    return static_cast<int>(passed == checks.size() ? kOk : kCheckFailed);
  });
}

std::vector<SweepRow> sweep_rows(const SweepArgs& a, const oracle::PrecisionConfig& cfg) {
  if (a.nus.empty()) throw DomainError("sweep: nu grid is empty");
  if (a.xs.empty()) throw DomainError("sweep: x grid is empty");
  for (double x : a.xs) {
    if (!(x > 0.0)) throw DomainError("sweep: x values must be positive");
  }
  std::vector<std::future<std::vector<SweepRow>>> jobs;
  jobs.reserve(a.nus.size());
  for (double nu : a.nus) {
    jobs.push_back(std::async(std::launch::async, [&a, &cfg, nu] {
      std::vector<SweepRow> rows;
      for (double x : a.xs) {
        const Enclosure e = enclosure(a.kind, nu, x, a.level);
        SweepRow r;
        r.nu = nu;
        r.x = x;
        r.lower = e.lower.value;
        r.upper = e.upper.value;
        r.gap = e.gap();
        r.lower_family = e.lower.label;
        r.upper_family = e.upper.label;
        if (a.oracle) {
          const double o = oracle_value(a.kind, nu, x, cfg);
          r.oracle = o;
          r.lower_margin = (o - r.lower) / o;
          r.upper_margin = (r.upper - o) / o;
        }
        rows.push_back(std::move(r));
      }
      return rows;
    }));
  }
  std::vector<SweepRow> all;
  for (auto& j : jobs) {
    auto rows = j.get();
    all.insert(all.end(), std::make_move_iterator(rows.begin()), std::make_move_iterator(rows.end()));
  }
  return all;
}

void write_csv(const std::vector<SweepRow>& rows, bool with_oracle, std::ostream& out) {
  out << "nu,x,lower,upper,gap,lower_family,upper_family";
  if (with_oracle) out << ",oracle,lower_margin,upper_margin";
  out << "\n";
  for (const auto& r : rows) {
    out << format_number(r.nu) << "," << format_number(r.x) << "," << format_number(r.lower) << ","
        << format_number(r.upper) << "," << format_number(r.gap) << "," << r.lower_family << "," << r.upper_family;
    if (with_oracle) {
      out << "," << format_number(r.oracle.value_or(NAN)) << "," << format_number(r.lower_margin) << ","
          << format_number(r.upper_margin);
    }
    out << "\n";
  }
}

void write_json(const std::vector<SweepRow>& rows, bool with_oracle, std::ostream& out) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    nlohmann::ordered_json o;
    o["nu"] = r.nu;
    o["x"] = r.x;
    o["lower"] = r.lower;
    o["upper"] = r.upper;
    o["gap"] = r.gap;
    o["lower_family"] = r.lower_family;
    o["upper_family"] = r.upper_family;
    if (with_oracle) {
      o["oracle"] = r.oracle.value_or(NAN);
      o["lower_margin"] = r.lower_margin;
      o["upper_margin"] = r.upper_margin;
    }
    arr.push_back(std::move(o));
  }
  out << arr.dump(2) << "\n";
}

int cmd_sweep(const SweepArgs& a, const oracle::PrecisionConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto rows = sweep_rows(a, cfg);
    std::ofstream file;
    std::ostream* dest = &out;
    if (!a.out.empty()) {
      file.open(a.out, std::ios::out | std::ios::trunc);
      if (!file) throw DomainError("cannot open '" + a.out + "' for writing");
      dest = &file;
    }
    if (a.format == Format::csv) {
      write_csv(rows, a.oracle, *dest);
    } else {
      write_json(rows, a.oracle, *dest);
    }
    dest->flush();
    if (!*dest) throw DomainError("write failed" + (a.out.empty() ? std::string() : " for '" + a.out + "'"));
    if (!a.out.empty()) err << "wrote " << rows.size() << " rows to " << a.out << "\n";
    return static_cast<int>(kOk);
  });
}

int cmd_cfbench(const CfbenchArgs& a, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (a.xs.empty()) throw DomainError("cfbench: x list is empty");
    if (a.policies.empty()) throw DomainError("cfbench: no tail policies selected");
    std::vector<std::string> errors;
    bool ordering_ok = true;
    out << std::left << std::setw(12) << "x";
    for (auto p : a.policies) out << std::setw(10) << cf::to_string(p);
    out << "ordering\n";
    for (double x : a.xs) {
      std::map<cf::TailPolicy, std::size_t> counts;
      out << std::setw(12) << format_number(x);
      for (auto p : a.policies) {
        try {
          const auto run = cf::evaluate_ratio_I(a.nu, x, a.tol, p);
          counts[p] = run.iterations;
          out << std::setw(10) << run.iterations;
        } catch (const ConvergenceError& e) {
          out << std::setw(10) << "ERR";
          errors.push_back("x=" + format_number(x) + " " + cf::to_string(p) + ": " + e.what());
        }
      }
      // Better tails should never need more terms: B <= b <= zero, strict for x >= 100.
      std::string verdict = "-";
      if (x >= 10.0) {
        const cf::TailPolicy order[] = {cf::TailPolicy::B_level, cf::TailPolicy::b_level, cf::TailPolicy::zero};
        std::vector<std::size_t> seq;
        for (auto p : order) {
          if (counts.count(p)) seq.push_back(counts[p]);
        }
        bool ok = true;
        for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
          ok = ok && (x >= 100.0 ? seq[i] < seq[i + 1] : seq[i] <= seq[i + 1]);
        }
        if (seq.size() >= 2) verdict = ok ? "ok" : "VIOLATED";
        ordering_ok = ordering_ok && ok;
      }
      out << verdict << "\n";
    }
    for (const auto& e : errors) err << "error: " << e << "\n";
    if (!errors.empty()) return static_cast<int>(kNumeric);
    return static_cast<int>(ordering_ok ? kOk : kCheckFailed);
  });
}

namespace {

const std::map<std::string, Ratio> kKinds{{"I", Ratio::I}, {"K", Ratio::K}};
const std::map<std::string, Family> kFamilies{{"b", Family::b},           {"cf1", Family::cf1}, {"B", Family::B},
                                              {"Btilde", Family::Btilde}, {"d", Family::d},     {"D", Family::D}};
const std::map<std::string, Side> kSides{{"lower", Side::lower}, {"upper", Side::upper}};
const std::map<std::string, Format> kFormats{{"csv", Format::csv}, {"json", Format::json}};
const std::map<std::string, cf::TailPolicy> kPolicies{
    {"zero", cf::TailPolicy::zero}, {"b", cf::TailPolicy::b_level}, {"B", cf::TailPolicy::B_level}};

struct GridOpt {
  std::vector<double> list;
  std::vector<double> log_spec;  // lo hi n
  std::vector<double> lin_spec;  // lo hi n

  std::vector<double> resolve(const char* what) const {
    auto count = [what](double n) {
      if (n < 0.0 || n != std::floor(n)) throw DomainError(std::string(what) + " grid size must be a nonnegative integer");
      return static_cast<std::size_t>(n);
    };
    if (!log_spec.empty()) {
      const std::size_t n = count(log_spec[2]);
      if (n == 0) return {};
      if (!(log_spec[0] > 0.0) || log_spec[0] > log_spec[1]) throw DomainError(std::string(what) + " log grid needs 0 < lo <= hi");
      return n == 1 ? std::vector<double>{log_spec[0]} : log_grid(log_spec[0], log_spec[1], n);
    }
    if (!lin_spec.empty()) {
      const std::size_t n = count(lin_spec[2]);
      if (n == 0) return {};
      return n == 1 ? std::vector<double>{lin_spec[0]} : linear_grid(lin_spec[0], lin_spec[1], n);
    }
    return list;
  }
};

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Certified bounds for the Bessel ratios I_nu/I_{nu-1} and K_{nu-1}/K_nu"};
  app.require_subcommand(1);
  std::optional<unsigned> digits;
  app.add_option("--digits", digits, "Oracle precision in decimal digits (overrides RATIO_BOUNDS_DIGITS)");

  EncloseArgs ea;
  std::string family_name;
  auto* enclose = app.add_subcommand("enclose", "Enclosure or single bound at one point");
  enclose->add_option("--kind", ea.kind, "Ratio: I or K")->transform(CLI::CheckedTransformer(kKinds));
  enclose->add_option("--nu", ea.nu, "Order")->required();
  enclose->add_option("--x", ea.x, "Argument, x > 0")->required();
  enclose->add_option("--level", ea.level, "Enclosure level (I: 0-2, K: 0-1)");
  enclose->add_flag("--oracle", ea.oracle, "Also print the high-precision reference value");
  enclose->add_option("--family", family_name, "Evaluate one family: b, cf1, B, Btilde, d, D")
      ->check(CLI::IsMember(kFamilies));
  enclose->add_option("--alpha", ea.alpha, "Family parameter");
  enclose->add_option("--side", ea.side, "lower or upper")->transform(CLI::CheckedTransformer(kSides));
  enclose->add_flag("--unchecked", ea.unchecked, "Evaluate a family outside its proven range");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Run a property suite against the oracles");
  verify->add_option("--suite", va.suite, "enclosures, monotonicity, identities, sharpness, crossings, cf or all");
  verify->add_option("--nu", va.nus, "Override the nu grid (cf: gap-formula point)")->delimiter(',');
  verify->add_option("--x", va.xs, "Override the x grid (cf: gap-formula point)")->delimiter(',');
  verify->add_option("--samples", va.samples, "Random points for the identity checks");
  verify->add_option("--seed", va.seed, "Seed for the identity checks");

  SweepArgs sa;
  GridOpt snu, sx;
  auto* sweep = app.add_subcommand("sweep", "Tabulate enclosures over a (nu, x) grid");
  sweep->add_option("--kind", sa.kind, "Ratio: I or K")->transform(CLI::CheckedTransformer(kKinds));
  auto* nu_list = sweep->add_option("--nu", snu.list, "nu values")->delimiter(',');
  auto* nu_range = sweep->add_option("--nu-range", snu.lin_spec, "lo hi n (linear)")->expected(3);
  nu_list->excludes(nu_range);
  auto* x_list = sweep->add_option("--x", sx.list, "x values")->delimiter(',');
  auto* x_log = sweep->add_option("--x-log", sx.log_spec, "lo hi n (log-spaced)")->expected(3);
  auto* x_lin = sweep->add_option("--x-lin", sx.lin_spec, "lo hi n (linear)")->expected(3);
  x_list->excludes(x_log)->excludes(x_lin);
  x_log->excludes(x_lin);
  sweep->add_option("--level", sa.level, "Enclosure level");
  sweep->add_flag("--oracle", sa.oracle, "Add oracle and margin columns");
  sweep->add_option("--out", sa.out, "Output file (default: standard output)");
  sweep->add_option("--format", sa.format, "csv or json")->transform(CLI::CheckedTransformer(kFormats));

  CfbenchArgs ca;
  std::vector<std::string> policy_names;
  auto* cfbench = app.add_subcommand("cfbench", "Continued-fraction depth needed per tail policy");
  cfbench->add_option("--nu", ca.nu, "Order");
  cfbench->add_option("--x", ca.xs, "x values")->delimiter(',')->required();
  cfbench->add_option("--tol", ca.tol, "Relative bracket width to reach");
  cfbench->add_option("--policies", policy_names, "zero, b, B")->delimiter(',')->check(CLI::IsMember(kPolicies));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  oracle::PrecisionConfig cfg;
  try {
    cfg = oracle::PrecisionConfig::from_env();
    if (digits) {
      cfg.digits = *digits;
      cfg.validate();
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  if (*enclose) {
    if (!family_name.empty()) ea.family = kFamilies.at(family_name);
    return cmd_enclose(ea, cfg, out, err);
  }
  if (*verify) return cmd_verify(va, cfg, out, err);
  if (*sweep) {
    return guarded(err, [&] {
      sa.nus = snu.resolve("nu");
      sa.xs = sx.list.empty() && sx.log_spec.empty() && sx.lin_spec.empty() ? log_grid(1e-3, 1e3, 25)
                                                                             : sx.resolve("x");
      return cmd_sweep(sa, cfg, out, err);
    });
  }
  if (!policy_names.empty()) {
    ca.policies.clear();
    for (const auto& n : policy_names) ca.policies.push_back(kPolicies.at(n));
  }
  return cmd_cfbench(ca, out, err);
}

}  // namespace ratio_bounds::cli
