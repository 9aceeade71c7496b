#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "casimir/cli.hpp"
#include "casimir/errors.hpp"

namespace casimir::cli {

namespace {

struct Named {
  const char* name;
  int value;
};

constexpr Named kCommands[] = {
    {"kernel", static_cast<int>(Command::Kernel)},
    {"friction", static_cast<int>(Command::Friction)},
    {"spectral-density", static_cast<int>(Command::SpectralDensity)},
    {"dissipation", static_cast<int>(Command::Dissipation)},
    {"sweep", static_cast<int>(Command::Sweep)},
    {"verify", static_cast<int>(Command::Verify)},
};

constexpr Named kAxes[] = {
    {"beta", static_cast<int>(SweepAxis::Beta)},
    {"eta", static_cast<int>(SweepAxis::Eta)},
    {"omega2", static_cast<int>(SweepAxis::Omega2)},
    {"velocity-magnitude", static_cast<int>(SweepAxis::VelocityMagnitude)},
};

template <std::size_t N>
int lookup(const Named (&table)[N], std::string_view key, std::string_view value) {
  for (const auto& e : table)
    if (value == e.name) return e.value;
  std::string allowed;
  for (const auto& e : table) allowed += std::string(allowed.empty() ? "" : ", ") + e.name;
  throw ConfigError(std::string(key), "unknown value '" + std::string(value) + "' (expected one of " +
                                          allowed + ")");
}

template <std::size_t N>
const char* name_of(const Named (&table)[N], int value) {
  for (const auto& e : table)
    if (e.value == value) return e.name;
  return "?";
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double to_double(std::string_view key, std::string_view text) {
  text = trim(text);
  double v = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  if (!text.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || text.empty())
    throw ConfigError(std::string(key), "expected a number, got '" + std::string(text) + "'");
  return v;
}

double to_finite(std::string_view key, std::string_view text) {
  const double v = to_double(key, text);
  if (!std::isfinite(v)) throw ConfigError(std::string(key), "must be finite");
  return v;
}

int to_int(std::string_view key, std::string_view text) {
  text = trim(text);
  int v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
    throw ConfigError(std::string(key), "expected an integer, got '" + std::string(text) + "'");
  return v;
}

Vec3 to_vec3(std::string_view key, std::string_view text) {
  double c[3];
  std::size_t pos = 0;
  for (int i = 0; i < 3; ++i) {
    const auto comma = text.find(',', pos);
    if ((i < 2) != (comma != std::string_view::npos))
      throw ConfigError(std::string(key), "expected X,Y,Z, got '" + std::string(text) + "'");
    c[i] = to_finite(key, text.substr(pos, comma == std::string_view::npos ? text.npos : comma - pos));
    pos = comma + 1;
  }
  return {c[0], c[1], c[2]};
}

std::string vec_text(Vec3 v) {
  return format_double(v.x) + "," + format_double(v.y) + "," + format_double(v.z);
}

// ValidationError fields of the physical system, by flag name.
std::string key_for_field(const std::string& field) {
  static const std::map<std::string, std::string> keys = {
      {"osc1.mass", "m1"},       {"osc2.mass", "m2"},       {"osc1.omega", "omega1"},
      {"osc2.omega", "omega2"},  {"thermal.beta", "beta"},  {"thermal.hbar", "hbar"},
      {"coupling.psi0", "psi0"}, {"motion.eta", "eta"},     {"abs_tol", "abs-tol"},
      {"rel_tol", "rel-tol"},    {"tail_tol", "tail-tol"},
  };
  if (auto it = keys.find(field); it != keys.end()) return it->second;
  if (field.starts_with("coupling.grad_psi")) return "grad-psi";
  if (field.starts_with("motion.velocity")) return "velocity";
  return field;
}

}  // namespace

const char* to_string(Command c) { return name_of(kCommands, static_cast<int>(c)); }
const char* to_string(SweepAxis a) { return name_of(kAxes, static_cast<int>(a)); }
const char* to_string(Format f) { return f == Format::Csv ? "csv" : "json"; }

const std::vector<std::string>& setting_keys() {
  static const std::vector<std::string> keys = {
      "m1",   "m2",   "omega1", "omega2",   "hbar",  "beta",     "eta",      "grad-psi",
      "psi0", "velocity", "format", "out",  "axis",  "quantity", "from",     "to",
      "points", "t-max", "tail-tol", "abs-tol", "rel-tol",
  };
  return keys;
}

void apply_setting(RunConfig& c, std::string_view key, std::string_view value) {
  value = trim(value);
  OscillatorSystem& s = c.system;
  if (key == "m1") s.osc1.mass = to_double(key, value);
  else if (key == "m2") s.osc2.mass = to_double(key, value);
  else if (key == "omega1") s.osc1.omega = to_double(key, value);
  else if (key == "omega2") s.osc2.omega = to_double(key, value);
  else if (key == "hbar") s.thermal.hbar = to_double(key, value);
  else if (key == "beta") s.thermal.beta = to_double(key, value);
  else if (key == "eta") s.motion.eta = to_double(key, value);
  else if (key == "grad-psi") s.coupling.grad_psi = to_vec3(key, value);
  else if (key == "psi0") s.coupling.psi0 = to_finite(key, value);
  else if (key == "velocity") s.motion.velocity = to_vec3(key, value);
  else if (key == "format") {
    if (value == "csv") c.format = Format::Csv;
    else if (value == "json") c.format = Format::Json;
    else throw ConfigError("format", "expected csv or json, got '" + std::string(value) + "'");
  } else if (key == "out") c.out = std::string(value);
  else if (key == "axis") c.axis = static_cast<SweepAxis>(lookup(kAxes, key, value));
  else if (key == "quantity") c.quantity = static_cast<Command>(lookup(kCommands, key, value));
  else if (key == "from") c.from = to_finite(key, value);
  else if (key == "to") c.to = to_finite(key, value);
  else if (key == "points") c.points = to_int(key, value);
  else if (key == "t-max") c.t_max = to_finite(key, value);
  else if (key == "tail-tol") c.tail_tol = to_double(key, value);
  else if (key == "abs-tol") c.quadrature.abs_tol = to_double(key, value);
  else if (key == "rel-tol") c.quadrature.rel_tol = to_double(key, value);
  else throw ConfigError(std::string(key), "unknown key");
}

std::vector<Setting> parse_config_text(std::string_view text) {
  std::vector<Setting> out;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("config", "line " + std::to_string(line_no) + ": expected key = value");
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (std::find(setting_keys().begin(), setting_keys().end(), key) == setting_keys().end())
      throw ConfigError(std::string(key), "unknown key (config line " + std::to_string(line_no) + ")");
    out.emplace_back(std::string(key), std::string(value));
  }
  return out;
}

std::vector<Setting> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

void validate(const RunConfig& c) {
  try {
    validate_system(c.system);
    numerics::validate(c.quadrature);
  } catch (const ValidationError& e) {
    throw ConfigError(key_for_field(e.field()), e.what());
  }
  if (!(c.tail_tol > 0.0 && c.tail_tol < 1.0)) throw ConfigError("tail-tol", "must lie in (0, 1)");
  if (c.points < 0 || c.points == 1) throw ConfigError("points", "must be >= 2");
  if (c.t_max < 0.0) throw ConfigError("t-max", "must be >= 0");
  if (c.command != Command::Sweep) return;
  if (c.quantity == Command::Sweep || c.quantity == Command::Verify)
    throw ConfigError("quantity", "a sweep evaluates kernel, friction, spectral-density or dissipation");
  if (c.axis == SweepAxis::VelocityMagnitude) return;
  if (!(c.from > 0.0)) throw ConfigError("from", std::string("must be positive on axis ") + to_string(c.axis));
  if (!(c.to > 0.0)) throw ConfigError("to", std::string("must be positive on axis ") + to_string(c.axis));
}

std::vector<Setting> describe(const RunConfig& c) {
  const OscillatorSystem& s = c.system;
  std::vector<Setting> out = {
      {"command", to_string(c.command)},
      {"m1", format_double(s.osc1.mass)},
      {"m2", format_double(s.osc2.mass)},
      {"omega1", format_double(s.osc1.omega)},
      {"omega2", format_double(s.osc2.omega)},
      {"hbar", format_double(s.thermal.hbar)},
      {"beta", format_double(s.thermal.beta)},
      {"eta", format_double(s.motion.eta)},
      {"grad-psi", vec_text(s.coupling.grad_psi)},
      {"psi0", format_double(s.coupling.psi0)},
      {"velocity", vec_text(s.motion.velocity)},
      {"format", to_string(c.format)},
      {"tail-tol", format_double(c.tail_tol)},
      {"abs-tol", format_double(c.quadrature.abs_tol)},
      {"rel-tol", format_double(c.quadrature.rel_tol)},
  };
  if (c.command == Command::Kernel) out.emplace_back("points", std::to_string(c.points));
  if (c.command == Command::Sweep) {
    out.emplace_back("axis", to_string(c.axis));
    out.emplace_back("quantity", to_string(c.quantity));
    out.emplace_back("from", format_double(c.from));
    out.emplace_back("to", format_double(c.to));
    out.emplace_back("points", std::to_string(c.points));
  }
  if (c.command == Command::Kernel || (c.command == Command::Sweep && c.quantity == Command::Kernel))
    out.emplace_back("t-max", format_double(c.t_max));
  return out;
}

RunConfig parse_command_line(const std::vector<std::string>& args) {
  CLI::App app{"Casimir friction between two coupled quantum oscillators", "casimir"};
  app.require_subcommand(1, 1);
  app.set_version_flag("--version", "casimir 1.0.0");

  std::map<std::string, std::string> raw;
  std::map<std::string, CLI::Option*> opts;
  const std::map<std::string, std::string> help = {
      {"m1", "mass of oscillator 1"},
      {"m2", "mass of oscillator 2"},
      {"omega1", "eigenfrequency of oscillator 1"},
      {"omega2", "eigenfrequency of oscillator 2"},
      {"hbar", "reduced Planck constant"},
      {"beta", "inverse temperature, inf for T = 0"},
      {"eta", "convergence / damping rate"},
      {"grad-psi", "coupling gradient X,Y,Z"},
      {"psi0", "coupling strength at r0"},
      {"velocity", "relative velocity X,Y,Z"},
      {"format", "csv or json"},
      {"out", "output file (default stdout)"},
      {"axis", "sweep axis: beta, eta, omega2, velocity-magnitude"},
      {"quantity", "sweep target: kernel, friction, spectral-density, dissipation"},
      {"from", "sweep start"},
      {"to", "sweep end"},
      {"points", "sweep or kernel grid size"},
      {"t-max", "kernel grid end (default 20 / omega1)"},
      {"tail-tol", "Boltzmann tail tolerance of the Fock oracle"},
      {"abs-tol", "absolute quadrature tolerance"},
      {"rel-tol", "relative quadrature tolerance"},
  };
  for (const auto& key : setting_keys()) opts[key] = app.add_option("--" + key, raw[key], help.at(key));
  std::string config_path;
  auto* config_opt = app.add_option("--config", config_path, "flat key = value file");

  const std::map<std::string, std::string> about = {
      {"kernel", "analytic response kernel next to the Fock-trace oracle"},
      {"friction", "friction force by closed form, quadrature and spectral derivative"},
      {"spectral-density", "friction per unit detuning and its resonant limit"},
      {"dissipation", "dissipated energy of the damped ramp by every route"},
      {"sweep", "repeat one quantity along a parameter axis"},
      {"verify", "run the cross-check suite; nonzero exit on any failure"},
  };
  std::map<CLI::App*, Command> commands;
  for (const auto& e : kCommands) {
    auto* sub = app.add_subcommand(e.name, about.at(e.name));
    sub->fallthrough();
    commands[sub] = static_cast<Command>(e.value);
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested(app.help());
  } catch (const CLI::CallForAllHelp&) {
    throw HelpRequested(app.help("", CLI::AppFormatMode::All));
  } catch (const CLI::CallForVersion&) {
    throw HelpRequested(app.version() + "\n");
  } catch (const CLI::ParseError& e) {
    throw ConfigError("usage", e.what());
  }

  RunConfig config;
  for (auto& [sub, cmd] : commands)
    if (sub->parsed()) config.command = cmd;
  if (config_opt->count() > 0)
    for (const auto& [key, value] : read_config_file(config_path)) apply_setting(config, key, value);
  for (const auto& key : setting_keys())
    if (opts[key]->count() > 0) apply_setting(config, key, raw[key]);

  if (config.points == 0) config.points = config.command == Command::Sweep ? 11 : 50;
  if (config.t_max == 0.0 && config.system.osc1.omega > 0.0) config.t_max = 20.0 / config.system.osc1.omega;
  validate(config);
  return config;
}

}  // namespace casimir::cli
