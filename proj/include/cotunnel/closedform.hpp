#pragma once

// Reference rational functions for the six co-tunneling path amplitudes, the
// two set sums grouped by the first-entering electron, and the total singlet
// output.  Values are in coupling-stripped units (the common hybridization
// product is divided out) and real, matching the perturbation engine's
// convention.  Opposite-sign triplet pairs share one magnitude expression so
// their cancellation is exact in floating point.

#include <cmath>
#include <string>
#include <vector>

#include "cotunnel/errors.hpp"
#include "cotunnel/model.hpp"

namespace cotunnel {

enum class PathLabel { I, II, III, IV, V, VI };
enum class PathSet { A, B };

inline std::string to_string(PathLabel label) {
  switch (label) {
    case PathLabel::I: return "I";
    case PathLabel::II: return "II";
    case PathLabel::III: return "III";
    case PathLabel::IV: return "IV";
    case PathLabel::V: return "V";
    case PathLabel::VI: return "VI";
  }
  return "?";
}

struct ClosedFormResult {
  double singlet = 0.0;
  double triplet_m0 = 0.0;
};

namespace detail {

inline double checked_factor(double value, const char* name, double tol_abs) {
  if (std::abs(value) < tol_abs) throw PoleError(name, value);
  return value;
}

inline double pole_tolerance(double E_L, double Delta_R, double U, double tol) {
  return tol * std::max({std::abs(E_L), Delta_R, U, 1.0});
}

}  // namespace detail

inline ClosedFormResult path_closed_form(PathLabel label, double E_L, double Delta_L,
                                         double Delta_R, double U, double tol = 1e-9) {
  using detail::checked_factor;
  const double eps = detail::pole_tolerance(E_L, Delta_R, U, tol);
  const double e_minus = checked_factor(E_L - Delta_L, "E_L-Delta_L", eps);
  const double e_plus = checked_factor(E_L + Delta_L, "E_L+Delta_L", eps);
  const double er_minus = checked_factor(E_L - Delta_R, "E_L-Delta_R", eps);
  const double er_plus = checked_factor(E_L + Delta_R, "E_L+Delta_R", eps);
  const double e2_r = er_minus * er_plus;  // E_L^2 - Delta_R^2

  switch (label) {
    case PathLabel::I:
    case PathLabel::IV: {
      const double d_minus = checked_factor(Delta_L - Delta_R, "Delta_L-Delta_R", eps);
      const double d_plus = checked_factor(Delta_L + Delta_R, "Delta_L+Delta_R", eps);
      const double d2 = d_minus * d_plus;  // Delta_L^2 - Delta_R^2
      const double triplet_mag = Delta_R / (d2 * e2_r);
      if (label == PathLabel::I) {
        return {(Delta_R * Delta_R - Delta_L * E_L) / (e_minus * e2_r * d2), -triplet_mag};
      }
      return {(Delta_R * Delta_R + Delta_L * E_L) / (e_plus * e2_r * d2), +triplet_mag};
    }
    case PathLabel::II:
    case PathLabel::III: {
      const double u_fac = checked_factor(2.0 * E_L - U, "2E_L-U", eps);
      const double singlet = E_L / (e_minus * e2_r * u_fac);
      const double triplet_mag = Delta_R / (e_minus * e2_r * u_fac);
      return {singlet, label == PathLabel::II ? -triplet_mag : +triplet_mag};
    }
    case PathLabel::V:
    case PathLabel::VI: {
      const double u_fac = checked_factor(2.0 * E_L - U, "2E_L-U", eps);
      const double singlet = E_L / (e_plus * e2_r * u_fac);
      const double triplet_mag = Delta_R / (e_plus * e2_r * u_fac);
      return {singlet, label == PathLabel::V ? +triplet_mag : -triplet_mag};
    }
  }
  throw std::invalid_argument("unknown path label");
}

inline ClosedFormResult set_sum_closed_form(PathSet set, double E_L, double Delta_L,
                                            double Delta_R, double U, double tol = 1e-9) {
  using detail::checked_factor;
  const double eps = detail::pole_tolerance(E_L, Delta_R, U, tol);
  const double er_minus = checked_factor(E_L - Delta_R, "E_L-Delta_R", eps);
  const double er_plus = checked_factor(E_L + Delta_R, "E_L+Delta_R", eps);
  const double d_minus = checked_factor(Delta_L - Delta_R, "Delta_L-Delta_R", eps);
  const double d_plus = checked_factor(Delta_L + Delta_R, "Delta_L+Delta_R", eps);
  const double u_fac = checked_factor(2.0 * E_L - U, "2E_L-U", eps);
  const double e2_r = er_minus * er_plus;
  const double d2 = d_minus * d_plus;
  const double triplet_mag = Delta_R / (d2 * e2_r);

  if (set == PathSet::A) {
    const double e_minus = checked_factor(E_L - Delta_L, "E_L-Delta_L", eps);
    const double numerator =
        -U * (Delta_R * Delta_R - Delta_L * E_L) - 2.0 * Delta_L * E_L * e_minus;
    return {numerator / (e_minus * d2 * e2_r * u_fac), -triplet_mag};
  }
  const double e_plus = checked_factor(E_L + Delta_L, "E_L+Delta_L", eps);
  const double numerator =
      -U * (Delta_R * Delta_R + Delta_L * E_L) + 2.0 * Delta_L * E_L * e_plus;
  return {numerator / (e_plus * d2 * e2_r * u_fac), +triplet_mag};
}

inline double total_singlet_closed_form(double E_L, double Delta_L, double Delta_R, double U,
                                        double tol = 1e-9) {
  using detail::checked_factor;
  const double eps = detail::pole_tolerance(E_L, Delta_R, U, tol);
  const double er_minus = checked_factor(E_L - Delta_R, "E_L-Delta_R", eps);
  const double er_plus = checked_factor(E_L + Delta_R, "E_L+Delta_R", eps);
  const double e_minus = checked_factor(E_L - Delta_L, "E_L-Delta_L", eps);
  const double e_plus = checked_factor(E_L + Delta_L, "E_L+Delta_L", eps);
  const double u_fac = checked_factor(2.0 * E_L - U, "2E_L-U", eps);
  return 2.0 * E_L * U / ((er_minus * er_plus) * (e_minus * e_plus) * u_fac);
}

struct IdentityLine {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct IdentityReport {
  std::vector<IdentityLine> lines;
  bool ok = true;
};

// Numeric consistency of the printed forms: path sums against set sums against
// the total, triplet cancellation, and the U = 0 mirror symmetry of the sets.
inline IdentityReport cross_check_identities(const EnergyConfig& config) {
  require_valid(config);
  const double E_L = config.E_L, DL = config.Delta_L, DR = config.Delta_R, U = config.U;
  const double tol = config.degeneracy_tol;

  double sum_singlet = 0.0, sum_triplet = 0.0;
  for (PathLabel label : {PathLabel::I, PathLabel::II, PathLabel::III, PathLabel::IV,
                          PathLabel::V, PathLabel::VI}) {
    const ClosedFormResult r = path_closed_form(label, E_L, DL, DR, U, tol);
    sum_singlet += r.singlet;
    sum_triplet += r.triplet_m0;
  }
  const double set_a = set_sum_closed_form(PathSet::A, E_L, DL, DR, U, tol).singlet;
  const double set_b = set_sum_closed_form(PathSet::B, E_L, DL, DR, U, tol).singlet;
  const double total = total_singlet_closed_form(E_L, DL, DR, U, tol);
  const double set_a0 = set_sum_closed_form(PathSet::A, E_L, DL, DR, 0.0, tol).singlet;
  const double set_b0 = set_sum_closed_form(PathSet::B, E_L, DL, DR, 0.0, tol).singlet;

  IdentityReport report;
  auto check = [&report](const std::string& name, double lhs, double rhs, double rel_scale) {
    IdentityLine line;
    line.name = name;
    line.residual = std::abs(lhs - rhs);
    line.tolerance = 1e-12 * rel_scale + 1e-15;
    line.pass = line.residual <= line.tolerance;
    report.ok = report.ok && line.pass;
    report.lines.push_back(line);
  };
  check("path_sum_equals_set_sum", sum_singlet, set_a + set_b, std::abs(total));
  check("set_sum_equals_total", set_a + set_b, total, std::abs(total));
  check("path_sum_equals_total", sum_singlet, total, std::abs(total));
  check("triplet_sum_vanishes", sum_triplet, 0.0, 0.0);
  check("sets_mirror_at_U0", set_a0, -set_b0, std::max(std::abs(set_a0), std::abs(set_b0)));
  return report;
}

}  // namespace cotunnel
