#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hkcce/compactification.hpp"

namespace hkcce {

/// Invalid command line or config file. The CLI exits with kExitUsage.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// --help was given; `text` is the rendered help.
struct HelpRequested {
  std::string text;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitIo = 2;
inline constexpr int kExitUsage = 64;

enum class Command {
  qcurv,
  verify_hk_adapted,
  verify_hk_cla,
  verify_hk_lee,
  verify_defect,
  verify_prop21,
  residuals,
  asymptotic,
  sweep,
};

/// "qcurv", "verify hk-adapted", ...
std::string command_name(Command c);
/// File stem used for reports and tables: "qcurv", "hk-adapted", ...
std::string command_stem(Command c);

struct RunConfig {
  Command command = Command::qcurv;
  std::vector<int> n{4};
  std::vector<double> gamma{0.5};
  std::vector<double> k{1.0};
  double ode_tol = 1e-12;
  double quad_tol = 1e-6;
  double T = 5.0;
  std::string out_dir = "hkcce_out";
  bool emit_csv = true;
  bool emit_json = true;
  int jobs = 1;
  /// verify defect and residuals: which compactifications to run.
  std::vector<CompactKind> kinds{CompactKind::adapted};
  /// asymptotic: number of log-spaced radii.
  int points = 20;
  std::string config_file;
};

/// "4", "4,5,6", "5..12" and mixtures such as "4,6..8".
std::vector<int> parse_int_list(const std::string& text);
std::vector<double> parse_double_list(const std::string& text);

/// Parses argv-style arguments (without the program name). Flags override
/// values from --config; HKCCE_OUT (passed as env_out) overrides the config
/// file and the default but not an explicit --out.
/// Throws UsageError or HelpRequested.
RunConfig parse_config(const std::vector<std::string>& args, std::optional<std::string> env_out = std::nullopt);

/// Range checks shared by flags and config files.
void validate(const RunConfig& cfg);

}  // namespace hkcce
