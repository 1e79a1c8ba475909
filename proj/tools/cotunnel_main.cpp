// cotunnel: two-electron co-tunneling simulator for a single-level,
// three-port quantum dot.
//
// Exit codes: 0 success, 1 failed verification checks, 2 configuration error,
// 3 pole (degenerate denominator), 4 I/O error, 5 numerical error.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cotunnel/commands.hpp"
#include "cotunnel/errors.hpp"

namespace {

cotunnel::SpinPair parse_spins(const std::string& spins) {
  using cotunnel::Spin;
  if (spins == "ud") return {Spin::Up, Spin::Down};
  if (spins == "uu") return {Spin::Up, Spin::Up};
  throw cotunnel::ConfigError("--spins must be 'ud' or 'uu'");
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw cotunnel::IoError("cannot write output file '" + path + "'");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"two-electron co-tunneling simulator for a three-port quantum dot"};
  app.require_subcommand(1);

  std::string config_path;
  std::string spins = "ud";
  std::string out_path;
  std::string param;
  double start = 0.0, stop = 0.0, t_max = 0.0;
  int steps = 0, workers = 1;

  CLI::App* verify = app.add_subcommand("verify", "run the invariant suite");
  verify->add_option("--config", config_path, "config file")->required();

  CLI::App* paths = app.add_subcommand("paths", "per-path amplitudes vs closed forms (CSV to stdout)");
  paths->add_option("--config", config_path, "config file")->required();
  paths->add_option("--spins", spins, "input spins: ud or uu");

  CLI::App* sweep = app.add_subcommand("sweep", "sweep one parameter, CSV to --out");
  sweep->add_option("--config", config_path, "config file")->required();
  sweep->add_option("--param", param, "U, E_L, Delta_L or Delta_R")->required();
  sweep->add_option("--start", start, "first value")->required();
  sweep->add_option("--stop", stop, "last value")->required();
  sweep->add_option("--steps", steps, "number of points (>= 2)")->required();
  sweep->add_option("--out", out_path, "output CSV path")->required();
  sweep->add_option("--workers", workers, "concurrent evaluators");

  CLI::App* evolve = app.add_subcommand("evolve", "exact time evolution, CSV to --out");
  evolve->add_option("--config", config_path, "config file")->required();
  evolve->add_option("--spins", spins, "input spins: ud or uu");
  evolve->add_option("--t-max", t_max, "end of the time grid")->required();
  evolve->add_option("--steps", steps, "number of grid points (>= 2)")->required();
  evolve->add_option("--out", out_path, "output CSV path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const cotunnel::ParsedConfig config = cotunnel::load_config_file(config_path);
    if (verify->parsed()) {
      return cotunnel::run_verify(config, std::cout);
    }
    if (paths->parsed()) {
      cotunnel::run_paths(config, parse_spins(spins), std::cout);
      return 0;
    }
    if (sweep->parsed()) {
      cotunnel::SweepSpec spec{param, start, stop, steps};
      std::ofstream out = open_output(out_path);
      cotunnel::run_sweep(config, spec, out, std::cerr, workers);
      return 0;
    }
    if (evolve->parsed()) {
      std::ofstream out = open_output(out_path);
      cotunnel::run_evolve(config, parse_spins(spins), t_max, steps, out);
      return 0;
    }
  } catch (const cotunnel::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const cotunnel::PoleError& e) {
    std::cerr << "pole error: " << e.what() << "\n";
    return 3;
  } catch (const cotunnel::IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 4;
  } catch (const cotunnel::NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 5;
  } catch (const cotunnel::RegimeError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 5;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
