#include "cotunnel/commands.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <ostream>
#include <thread>
#include <vector>

#include "cotunnel/closedform.hpp"
#include "cotunnel/csv.hpp"
#include "cotunnel/errors.hpp"
#include "cotunnel/oracle.hpp"
#include "cotunnel/perturbation.hpp"
#include "cotunnel/verification.hpp"

namespace cotunnel {

namespace {

void require_reference_level(const EnergyConfig& config) {
  if (config.eps_d != 0.0) {
    throw ConfigError("closed-form comparisons require eps_d = 0");
  }
}

double snap(double value, double floor) { return std::abs(value) < floor ? 0.0 : value; }

double relative_difference(double engine_s, double engine_t, double ref_s, double ref_t) {
  const double scale = std::max({std::abs(ref_s), std::abs(ref_t), 1e-30});
  return std::max(std::abs(engine_s - ref_s), std::abs(engine_t - ref_t)) / scale;
}

}  // namespace

int run_verify(const ParsedConfig& config, std::ostream& out) {
  bool all_pass = true;
  for (const CheckResult& check : run_verification(config)) {
    out << (check.pass ? "PASS " : "FAIL ") << check.name << ": " << check.detail << "\n";
    all_pass = all_pass && check.pass;
  }
  out << (all_pass ? "all checks passed\n" : "some checks FAILED\n");
  return all_pass ? 0 : 1;
}

void run_paths(const ParsedConfig& parsed, SpinPair spins, std::ostream& out) {
  const EnergyConfig& config = parsed.energy;
  require_valid(config);
  require_reference_level(config);

  const auto orderings = enumerate_orderings(config, spins);
  const auto paths = group_into_paths(orderings, config);
  const SpinDecomposition total = total_output(config, spins);
  const double floor = 1e-12 * max_ordering_magnitude(orderings);

  out << "label,singlet_engine,triplet_engine,singlet_closedform,triplet_closedform,abs_rel_diff\n";
  for (const PathAmplitude& path : paths) {
    const ClosedFormResult closed = path_closed_form(path.label, config.E_L, config.Delta_L,
                                                     config.Delta_R, config.U,
                                                     config.degeneracy_tol);
    double engine_s = path.coeffs.singlet.real();
    double engine_t;
    double ref_s, ref_t;
    if (!spins.same()) {
      engine_t = path.coeffs.triplet_m0.real();
      ref_s = closed.singlet;
      ref_t = closed.triplet_m0;
    } else {
      // Equal spins populate one m = +-1 component; its amplitude is twice the
      // m = 0 coefficient of the same path.
      engine_t = (spins.sigma == Spin::Up ? path.coeffs.triplet_up : path.coeffs.triplet_down).real();
      ref_s = 0.0;
      ref_t = 2.0 * closed.triplet_m0;
    }
    out << csv::join({to_string(path.label), format_g9(engine_s), format_g9(engine_t),
                      format_g9(ref_s), format_g9(ref_t),
                      format_g9(relative_difference(engine_s, engine_t, ref_s, ref_t))})
        << "\n";
  }

  const double total_ref_s =
      spins.same() ? 0.0
                   : total_singlet_closed_form(config.E_L, config.Delta_L, config.Delta_R,
                                               config.U, config.degeneracy_tol);
  const double total_engine_s = snap(total.singlet.real(), floor);
  const double total_engine_t =
      snap(spins.same() ? (spins.sigma == Spin::Up ? total.triplet_up : total.triplet_down).real()
                        : total.triplet_m0.real(),
           floor);
  out << csv::join({"TOTAL", format_g9(total_engine_s), format_g9(total_engine_t),
                    format_g9(total_ref_s), format_g9(0.0),
                    format_g9(relative_difference(total_engine_s, total_engine_t, total_ref_s, 0.0))})
      << "\n";
}

void run_sweep(const ParsedConfig& parsed, const SweepSpec& spec, std::ostream& out,
               std::ostream& log, int workers) {
  require_valid(parsed.energy);
  if (spec.steps < 2) throw ConfigError("sweep requires steps >= 2");
  if (!(std::isfinite(spec.start) && std::isfinite(spec.stop)) || spec.start == spec.stop) {
    throw ConfigError("sweep requires finite start != stop");
  }
  if (workers < 1) throw ConfigError("workers must be >= 1");

  double EnergyConfig::*field = nullptr;
  if (spec.parameter == "U") field = &EnergyConfig::U;
  else if (spec.parameter == "E_L") field = &EnergyConfig::E_L;
  else if (spec.parameter == "Delta_L") field = &EnergyConfig::Delta_L;
  else if (spec.parameter == "Delta_R") field = &EnergyConfig::Delta_R;
  else throw ConfigError("unknown sweep parameter '" + spec.parameter + "'");

  struct Row {
    double value = 0.0;
    bool skipped = false;
    std::string reason;
    double closed = 0.0;
    double engine = 0.0;
    double triplet_residual = 0.0;
  };
  std::vector<Row> rows(static_cast<std::size_t>(spec.steps));

  auto evaluate = [&](int index) {
    Row row;
    row.value = spec.start + (spec.stop - spec.start) * index / (spec.steps - 1);
    EnergyConfig config = parsed.energy;
    config.*field = row.value;
    const auto violations = validate_config(config);
    if (!violations.empty()) {
      row.skipped = true;
      row.reason = violations.front().message;
      return row;
    }
    const auto orderings = enumerate_orderings(config, SpinPair{Spin::Up, Spin::Down});
    const SpinDecomposition total = total_output(config, SpinPair{Spin::Up, Spin::Down});
    const double floor = 1e-12 * max_ordering_magnitude(orderings);
    row.closed = total_singlet_closed_form(config.E_L, config.Delta_L, config.Delta_R, config.U,
                                           config.degeneracy_tol);
    row.engine = snap(total.singlet.real(), floor);
    row.triplet_residual = std::max({std::abs(total.triplet_m0), std::abs(total.triplet_up),
                                     std::abs(total.triplet_down)});
    return row;
  };

  const int thread_count = std::min(workers, spec.steps);
  if (thread_count <= 1) {
    for (int i = 0; i < spec.steps; ++i) rows[static_cast<std::size_t>(i)] = evaluate(i);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(thread_count));
    for (int worker = 0; worker < thread_count; ++worker) {
      pool.emplace_back([&, worker] {
        try {
          for (int i = worker; i < spec.steps; i += thread_count) {
            rows[static_cast<std::size_t>(i)] = evaluate(i);
          }
        } catch (...) {
          errors[static_cast<std::size_t>(worker)] = std::current_exception();
        }
      });
    }
    for (std::thread& t : pool) t.join();
    for (const std::exception_ptr& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  out << "param_value,singlet_closedform,singlet_engine,triplet_engine_residual\n";
  for (const Row& row : rows) {
    if (row.skipped) {
      log << "skip " << spec.parameter << "=" << format_g9(row.value) << " reason: " << row.reason
          << "\n";
      continue;
    }
    out << csv::join({format_g9(row.value), format_g9(row.closed), format_g9(row.engine),
                      format_g9(row.triplet_residual)})
        << "\n";
  }
}

void run_evolve(const ParsedConfig& parsed, SpinPair spins, double t_max, int steps,
                std::ostream& out) {
  const EnergyConfig& config = parsed.energy;
  require_valid(config);
  require_reference_level(config);
  if (!(t_max > 0.0) || !std::isfinite(t_max)) throw ConfigError("t_max must be finite and > 0");
  if (steps < 2) throw ConfigError("evolve requires steps >= 2");

  std::vector<double> grid(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) {
    grid[static_cast<std::size_t>(i)] = t_max * i / (steps - 1);
  }
  const EvolutionResult result = transition_probabilities(config, spins, grid);

  // Probabilities below the cross-sector rounding floor print as 0.
  constexpr double kProbabilityFloor = 1e-30;
  out << "t,P_singlet,P_triplet_total,P_leak,norm\n";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    out << csv::join({format_g9(result.times[i]), format_g9(snap(result.p_singlet[i], kProbabilityFloor)),
                      format_g9(snap(result.p_triplet_total[i], kProbabilityFloor)),
                      format_g9(snap(result.p_leak[i], kProbabilityFloor)),
                      format_g9(result.norms[i])})
        << "\n";
  }

  const QuadraticFit fit = fit_quadratic_growth(result);
  const double predicted = predicted_quadratic_coefficient(config, spins);
  const double rel_diff = predicted != 0.0
                              ? std::abs(fit.coefficient - predicted) / std::abs(predicted)
                              : std::abs(fit.coefficient);
  out << "# c_fit=" << format_g9(fit.coefficient) << " c_pred=" << format_g9(predicted)
      << " rel_diff=" << format_g9(rel_diff) << "\n";
}

}  // namespace cotunnel
