// Subcommands of the ratio-bounds command-line tool.
//
// Each command writes its report to `out`, diagnostics to `err`, and returns
// the process exit code: 0 success, 1 a check failed, 2 usage or validity
// error, 3 oracle or convergence failure.
#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ratio_bounds/bound_types.hpp"
#include "ratio_bounds/cf.hpp"
#include "ratio_bounds/oracle.hpp"

namespace ratio_bounds::cli {

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kUsage = 2, kNumeric = 3 };

struct EncloseArgs {
  Ratio kind = Ratio::I;
  double nu = 0.0;
  double x = 1.0;
  int level = 1;
  bool oracle = false;
  /// When set, evaluate this single family member instead of an enclosure.
  std::optional<Family> family;
  double alpha = 0.0;
  Side side = Side::lower;
  bool unchecked = false;
};

struct VerifyArgs {
  std::string suite = "all";
  std::vector<double> nus;  // empty: suite defaults
  std::vector<double> xs;   // empty: suite defaults
  std::size_t samples = 100;
  unsigned seed = 20160101;
};

enum class Format { csv, json };

struct SweepArgs {
  Ratio kind = Ratio::I;
  std::vector<double> nus;
  std::vector<double> xs;
  int level = 1;
  bool oracle = false;
  std::string out;  // empty: standard output
  Format format = Format::csv;
};

struct SweepRow {
  double nu = 0.0;
  double x = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  double gap = 0.0;
  std::string lower_family;
  std::string upper_family;
  std::optional<double> oracle;
  double lower_margin = 0.0;
  double upper_margin = 0.0;
};

struct CfbenchArgs {
  double nu = 1.0;
  std::vector<double> xs;
  double tol = 1e-10;
  std::vector<cf::TailPolicy> policies{cf::TailPolicy::zero, cf::TailPolicy::b_level, cf::TailPolicy::B_level};
};

int cmd_enclose(const EncloseArgs& args, const oracle::PrecisionConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_verify(const VerifyArgs& args, const oracle::PrecisionConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_sweep(const SweepArgs& args, const oracle::PrecisionConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_cfbench(const CfbenchArgs& args, std::ostream& out, std::ostream& err);

/// Rows in nu-major, x-minor order. Throws library errors unchanged.
std::vector<SweepRow> sweep_rows(const SweepArgs& args, const oracle::PrecisionConfig& cfg);
void write_csv(const std::vector<SweepRow>& rows, bool with_oracle, std::ostream& out);
void write_json(const std::vector<SweepRow>& rows, bool with_oracle, std::ostream& out);

/// Parses argv and dispatches to a subcommand.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// %.17g formatting.
std::string format_number(double v);

}  // namespace ratio_bounds::cli
