#include <fstream>
#include <ostream>
#include <sstream>

#include "casimir/cli.hpp"
#include "casimir/errors.hpp"

namespace casimir::cli {

namespace {

void emit(const Report& report, Format format, std::ostream& os) {
  if (format == Format::Json)
    write_json(report, os);
  else
    write_csv(report, os);
}

void print_check_table(const Report& report, std::ostream& os) {
  std::size_t width = 5;
  for (const auto& c : report.checks) width = std::max(width, c.name.size());
  std::size_t failed = 0;
  for (const auto& c : report.checks) {
    os << (c.pass ? "pass  " : "FAIL  ") << c.name << std::string(width - c.name.size() + 2, ' ')
       << format_double(c.value) << "  " << c.limit << '\n';
    failed += c.pass ? 0 : 1;
  }
  os << report.checks.size() - failed << "/" << report.checks.size() << " checks passed\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig config;
  try {
    config = parse_command_line(args);
  } catch (const HelpRequested& h) {
    out << h.text();
    return 0;
  } catch (const ConfigError& e) {
    err << "casimir: " << e.what() << '\n';
    return 2;
  }

  Report report;
  try {
    report = execute(config);
  } catch (const ConfigError& e) {
    err << "casimir: " << e.what() << '\n';
    return 2;
  } catch (const ValidationError& e) {
    err << "casimir: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "casimir: " << to_string(config.command) << " failed: " << e.what() << '\n';
    return 1;
  }

  if (config.out.empty()) {
    emit(report, config.format, out);
  } else {
    std::ofstream file(config.out, std::ios::binary);
    if (!file) {
      err << "casimir: out: cannot open '" << config.out << "'\n";
      return 2;
    }
    emit(report, config.format, file);
    if (config.command == Command::Verify) print_check_table(report, out);
  }

  if (!report.ok()) {
    for (const auto& c : report.checks)
      if (!c.pass) err << "casimir: check failed: " << c.name << " = " << format_double(c.value) << " (limit " << c.limit << ")\n";
    return 1;
  }
  return 0;
}

}  // namespace casimir::cli
