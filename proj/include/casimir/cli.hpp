#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "casimir/model.hpp"
#include "casimir/numerics.hpp"

namespace casimir::cli {

enum class Command { Kernel, Friction, SpectralDensity, Dissipation, Sweep, Verify };
enum class Format { Csv, Json };
enum class SweepAxis { Beta, Eta, Omega2, VelocityMagnitude };

const char* to_string(Command c);
const char* to_string(Format f);
const char* to_string(SweepAxis a);

struct RunConfig {
  Command command = Command::Verify;
  OscillatorSystem system = canonical_system();
  Format format = Format::Csv;
  std::string out;  // empty writes to stdout
  SweepAxis axis = SweepAxis::Beta;
  Command quantity = Command::Friction;  // what a sweep evaluates
  double from = 0.1;
  double to = 10.0;
  int points = 0;      // 0 picks the command default
  double t_max = 0.0;  // kernel grid end; 0 means 20 / omega1
  double tail_tol = 1e-12;
  numerics::QuadratureSpec quadrature{};
};

// Bad flag, config key or value. key() is the flag name without dashes.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& what)
      : std::runtime_error(key + ": " + what), key_(std::move(key)) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

// --help or --version on the command line; text() is what to print.
class HelpRequested : public std::exception {
 public:
  explicit HelpRequested(std::string text) : text_(std::move(text)) {}
  const char* what() const noexcept override { return text_.c_str(); }
  const std::string& text() const noexcept { return text_; }

 private:
  std::string text_;
};

using Setting = std::pair<std::string, std::string>;

// Flag names accepted on the command line and as config-file keys, in echo order.
const std::vector<std::string>& setting_keys();

// Applies one key = value pair. Throws ConfigError naming the key.
void apply_setting(RunConfig& config, std::string_view key, std::string_view value);

// Flat "key = value" lines; '#' starts a comment.
std::vector<Setting> parse_config_text(std::string_view text);
std::vector<Setting> read_config_file(const std::string& path);

// Checks cross-field invariants and the physical system.
void validate(const RunConfig& config);

// Every setting that affects results, in a fixed order.
std::vector<Setting> describe(const RunConfig& config);

// Defaults, then config file, then flags. Throws ConfigError.
RunConfig parse_command_line(const std::vector<std::string>& args);

using Value = std::variant<double, std::string>;

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Value>> rows;
};

struct Check {
  std::string name;
  double value = 0.0;
  std::string limit;  // human-readable acceptance region
  bool pass = false;
};

struct Report {
  std::vector<Setting> config;
  std::vector<Table> tables;
  std::vector<Check> checks;
  bool ok() const;
};

// 17 significant digits, "inf"/"-inf"/"nan" for non-finite values.
std::string format_double(double v);
void write_csv(const Report& report, std::ostream& os);
void write_json(const Report& report, std::ostream& os);

Report run_kernel(const RunConfig& config);
Report run_friction(const RunConfig& config);
Report run_spectral_density(const RunConfig& config);
Report run_dissipation(const RunConfig& config);
Report run_sweep(const RunConfig& config);
Report run_verify(const RunConfig& config);
Report execute(const RunConfig& config);

// The verify suite on its own.
std::vector<Check> verify_checks(const RunConfig& config);

// Full program: parse, run, emit. Returns the process exit code
// (0 ok, 1 failed check or runtime error, 2 bad usage or config).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace casimir::cli
