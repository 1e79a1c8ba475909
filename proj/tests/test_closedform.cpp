#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cotunnel/closedform.hpp"
#include "cotunnel/sampling.hpp"

using namespace cotunnel;

namespace {
constexpr double kE = -3.0, kDL = 0.5, kDR = 1.0, kU = 2.0;
}

TEST_CASE("path I at the reference point") {
  const ClosedFormResult r = path_closed_form(PathLabel::I, kE, kDL, kDR, kU);
  // numerator (Delta_R^2 - Delta_L E_L) = 2.5 over (-3.5)(8)(-0.75) = 21
  CHECK(r.singlet == doctest::Approx(2.5 / 21.0).epsilon(1e-14));
  CHECK(r.triplet_m0 == doctest::Approx(3.5 / 21.0).epsilon(1e-14));
}

TEST_CASE("charging paths share singlets and cancel triplets") {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 50; ++i) {
    const EnergyConfig c = sample_valid_config(rng);
    const auto ii = path_closed_form(PathLabel::II, c.E_L, c.Delta_L, c.Delta_R, c.U);
    const auto iii = path_closed_form(PathLabel::III, c.E_L, c.Delta_L, c.Delta_R, c.U);
    const auto v = path_closed_form(PathLabel::V, c.E_L, c.Delta_L, c.Delta_R, c.U);
    const auto vi = path_closed_form(PathLabel::VI, c.E_L, c.Delta_L, c.Delta_R, c.U);
    CHECK(ii.singlet == iii.singlet);
    CHECK(v.singlet == vi.singlet);
    CHECK(ii.triplet_m0 + iii.triplet_m0 == 0.0);
    CHECK(v.triplet_m0 + vi.triplet_m0 == 0.0);

    const auto i_ = path_closed_form(PathLabel::I, c.E_L, c.Delta_L, c.Delta_R, c.U);
    const auto iv = path_closed_form(PathLabel::IV, c.E_L, c.Delta_L, c.Delta_R, c.U);
    CHECK(i_.triplet_m0 + iv.triplet_m0 == 0.0);
  }
}

TEST_CASE("set sums at the reference point") {
  const ClosedFormResult a = set_sum_closed_form(PathSet::A, kE, kDL, kDR, kU);
  const ClosedFormResult b = set_sum_closed_form(PathSet::B, kE, kDL, kDR, kU);
  CHECK(a.singlet == doctest::Approx(-15.5 / -168.0).epsilon(1e-14));
  CHECK(b.singlet == doctest::Approx(8.5 / -120.0).epsilon(1e-14));
  CHECK(a.singlet + b.singlet == doctest::Approx(3.0 / 140.0).epsilon(1e-12));
  CHECK(a.triplet_m0 + b.triplet_m0 == 0.0);
}

TEST_CASE("total singlet coefficient") {
  CHECK(total_singlet_closed_form(kE, kDL, kDR, kU) ==
        doctest::Approx(3.0 / 140.0).epsilon(1e-14));
  CHECK(total_singlet_closed_form(kE, kDL, kDR, 0.0) == 0.0);

  // Scales as U / (2 E_L - U).
  const double ratio = total_singlet_closed_form(kE, kDL, kDR, 1.0) /
                       total_singlet_closed_form(kE, kDL, kDR, 2.0);
  CHECK(ratio == doctest::Approx((1.0 / -7.0) / (2.0 / -8.0)).epsilon(1e-14));
  CHECK(ratio == doctest::Approx(0.5714286).epsilon(1e-6));
}

TEST_CASE("total depends only on squared splittings") {
  CHECK(total_singlet_closed_form(kE, -kDL, kDR, kU) == total_singlet_closed_form(kE, kDL, kDR, kU));
  CHECK(total_singlet_closed_form(kE, kDL, -kDR, kU) == total_singlet_closed_form(kE, kDL, kDR, kU));
}

TEST_CASE("pole guards name the degenerate factor") {
  auto factor_of = [](auto&& fn) -> std::string {
    try {
      fn();
    } catch (const PoleError& e) {
      return e.factor();
    }
    return "";
  };
  CHECK(factor_of([] { path_closed_form(PathLabel::I, 1.0, 0.5, 1.0, 2.0); }) == "E_L-Delta_R");
  CHECK(factor_of([] { path_closed_form(PathLabel::I, -3.0, 1.0, 1.0, 2.0); }) == "Delta_L-Delta_R");
  CHECK(factor_of([] { path_closed_form(PathLabel::II, -3.0, 0.5, 1.0, -6.0); }) == "2E_L-U");
  CHECK(factor_of([] { path_closed_form(PathLabel::V, -0.5, 0.5, 1.0, 2.0); }) == "E_L+Delta_L");
  CHECK(factor_of([] { set_sum_closed_form(PathSet::A, -3.0, 0.5, 1.0, -6.0); }) == "2E_L-U");
  CHECK(factor_of([] { total_singlet_closed_form(-3.0, 3.0, 1.0, 2.0); }) == "E_L+Delta_L");
  CHECK_THROWS_AS(total_singlet_closed_form(-3.0, 0.5, 3.0, 2.0), PoleError);
}

TEST_CASE("identity chain over random configurations") {
  std::mt19937_64 rng(1234);
  for (int i = 0; i < 1000; ++i) {
    const IdentityReport report = cross_check_identities(sample_valid_config(rng));
    if (!report.ok) {
      for (const IdentityLine& line : report.lines) {
        CAPTURE(line.name);
        CHECK(line.residual <= line.tolerance);
      }
    }
    CHECK(report.ok);
  }
}

TEST_CASE("symmetric input pair makes the sets equal") {
  const double a = set_sum_closed_form(PathSet::A, kE, 0.0, kDR, kU).singlet;
  const double b = set_sum_closed_form(PathSet::B, kE, 0.0, kDR, kU).singlet;
  CHECK(a == b);
}

TEST_CASE("near-pole configurations are rejected before evaluation") {
  EnergyConfig config;
  config.E_L = -3.0;
  config.Delta_L = 0.5;
  config.Delta_R = 1.0;
  config.U = -6.0 + 1e-12;  // within tolerance of 2 E_L
  CHECK_FALSE(validate_config(config).empty());
  CHECK_THROWS_AS(cross_check_identities(config), ConfigError);
}
