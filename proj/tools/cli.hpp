#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace selberg::cli {

enum class Command { sieve, signs, window, exponents, moment, profile, perron, verify, theorem_check };
enum class Format { json, csv };
enum class PolyChoice { M, K };

const char* to_string(Command command);

struct RunConfig {
  Command command = Command::exponents;
  std::string spec_path;
  std::optional<std::uint64_t> X, H, M;
  std::optional<double> T;
  std::optional<double> theta, kappa;
  double epsilon = 1e-3;
  std::optional<int> degree;
  std::string output;  // empty: stdout
  Format format = Format::json;

  // Command-specific.
  bool table = false;       // exponents: human-readable table
  bool positions = false;   // signs: list change positions
  bool sweep = false;       // window: sweep (X, 2X]
  std::uint64_t stride = 0; // window sweep stride, 0 = H
  std::string cache;        // sieve: binary table cache
  PolyChoice poly = PolyChoice::M;
  std::optional<double> step;
  std::string verify_target = "identities";
  std::uint64_t dmax = 30;
  double s = 2.0;
  std::uint64_t trunc = 1'000'000;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitIo = 3;

/// Thrown by parse_args for --help; what() is the help text.
class HelpRequested : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Throws UsageError on unknown commands, missing or malformed flags.
RunConfig parse_args(const std::vector<std::string>& args);

/// Executes the command and writes its report. Returns an exit code.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse_args + run with error-to-exit-code mapping.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace selberg::cli
