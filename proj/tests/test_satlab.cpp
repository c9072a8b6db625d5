#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "dic/satlab.hpp"

using namespace dic;

namespace {

MacExperiment adder_exp() {
  MacExperiment e;
  e.mac = builtin_mac("adder");
  return e;
}

}  // namespace

TEST_CASE("mac tables are validated") {
  CHECK_NOTHROW(validate_mac(builtin_mac("adder")));
  CHECK_THROWS_AS(builtin_mac("xor"), usage_error);

  MacSpec bad = builtin_mac("adder");
  bad.h = {0, 0, 1, 2};  // row collision
  CHECK_THROWS_AS(validate_mac(bad), validation_error);
  bad.h = {0, 1, 1, 3};  // value out of range
  CHECK_THROWS_AS(validate_mac(bad), validation_error);
  bad.h = {0, 1, 1};
  CHECK_THROWS_AS(validate_mac(bad), validation_error);

  MacExperiment e = adder_exp();
  e.p1 = Pmf::uniform(3);  // wrong alphabet
  CHECK_THROWS_AS(empirical_exponent(e), validation_error);
}

TEST_CASE("typicality prediction closed forms") {
  MacExperiment e = adder_exp();
  auto at = [&](double r1, double r2) {
    e.R1 = r1;
    e.R2 = r2;
    return predicted_exponent(e);
  };
  CHECK(at(0.0, 0.0) == Catch::Approx(0.0).margin(1e-12));
  CHECK(at(0.5, 0.5) == Catch::Approx(1.0).margin(1e-12));
  CHECK(at(2.0, 2.0) == Catch::Approx(1.5).margin(1e-12));  // H of (1/4,1/2,1/4)
  CHECK(at(0.2, 2.0) == Catch::Approx(1.2).margin(1e-12));  // R1 + H(B2)
  CHECK(at(2.0, 0.2) == Catch::Approx(1.2).margin(1e-12));
}

TEST_CASE("moderate rates track the prediction") {
  MacExperiment e = adder_exp();
  auto est = empirical_exponent(e);
  CHECK(est.exponent == Catch::Approx(1.0).margin(0.15));
  CHECK(static_cast<int>(est.per_trial_counts.size()) == e.trials);
  CHECK(est.stddev < 0.05);
}

TEST_CASE("a silent partner reduces to single-codebook coverage") {
  MacExperiment e = adder_exp();
  e.R2 = 0.0;
  auto est = empirical_exponent(e);
  CHECK(est.exponent == Catch::Approx(0.5).margin(0.05));
}

TEST_CASE("full saturation hits the closed-form ceiling") {
  MacExperiment e = adder_exp();
  e.R1 = e.R2 = 2.0;
  auto est = empirical_exponent(e);
  CHECK(est.exponent == Catch::Approx(std::log2(3.0)).margin(1e-12));
  CHECK(est.stddev <= 1e-12);
}

TEST_CASE("distinct counts respect the hard counting bound") {
  MacExperiment e = adder_exp();
  for (const ExponentRow& row : sweep_exponent_map(e, 1.0, 2.0))
    CHECK(row.empirical <= std::min(row.r1 + row.r2, std::log2(3.0)) + 1e-12);
  // Even when coverage overshoots the typicality prediction (skewed inputs,
  // oversized codebooks), the output space still caps the count.
  e.p1 = Pmf(std::vector<double>{0.9, 0.1});
  e.p2 = Pmf(std::vector<double>{0.9, 0.1});
  e.R1 = e.R2 = 2.0;
  auto est = empirical_exponent(e);
  CHECK(est.exponent <= std::log2(3.0) + 1e-12);
  CHECK(est.exponent > predicted_exponent(e));  // finite-length overshoot
}

TEST_CASE("counts grow with the rate") {
  MacExperiment e = adder_exp();
  e.allow_full_shortcut = false;
  std::vector<double> prev;
  for (double r1 : {0.3, 0.6, 0.9, 1.2, 1.5}) {
    e.R1 = r1;
    auto est = empirical_exponent(e);
    if (!prev.empty())
      for (size_t t = 0; t < prev.size(); ++t) REQUIRE(est.per_trial_counts[t] >= prev[t]);
    prev = est.per_trial_counts;
  }
}

TEST_CASE("runs are reproducible by seed") {
  MacExperiment e = adder_exp();
  auto a = empirical_exponent(e);
  auto b = empirical_exponent(e);
  CHECK(a.per_trial_counts == b.per_trial_counts);
  e.seed = 1;
  CHECK(empirical_exponent(e).per_trial_counts != a.per_trial_counts);
}

TEST_CASE("occupancy sampling agrees with direct draws") {
  for (auto [r1, r2] : {std::pair{0.5, 0.5}, std::pair{1.2, 0.8}}) {
    MacExperiment direct = adder_exp();
    direct.R1 = r1;
    direct.R2 = r2;
    direct.allow_full_shortcut = false;
    MacExperiment occup = direct;
    occup.direct_draw_limit = 1;
    double gap =
        std::abs(empirical_exponent(direct).exponent - empirical_exponent(occup).exponent);
    CHECK(gap < 0.02);
  }
}

TEST_CASE("the generic table path matches the specialized one") {
  MacExperiment a = adder_exp();
  a.R1 = 0.7;
  a.R2 = 1.1;
  MacExperiment g = a;
  g.mac.nb = 4;  // same table; the wider alphabet disables the shortcut
  CHECK(empirical_exponent(a).per_trial_counts == empirical_exponent(g).per_trial_counts);
}

TEST_CASE("finite-length deviations shrink with the block length") {
  std::array<double, 2> maxdev{}, meddev{};
  int idx = 0;
  for (int n : {7, 14}) {
    MacExperiment e = adder_exp();
    e.n = n;
    std::vector<double> devs;
    for (const ExponentRow& row : sweep_exponent_map(e, 1.0, 2.0))
      devs.push_back(std::abs(row.empirical - row.predicted));
    std::sort(devs.begin(), devs.end());
    maxdev[static_cast<size_t>(idx)] = devs.back();
    meddev[static_cast<size_t>(idx)] = devs[devs.size() / 2];
    ++idx;
  }
  CHECK(maxdev[1] <= maxdev[0]);
  CHECK(meddev[1] <= meddev[0]);
  CHECK(maxdev[1] < 0.1);
}

TEST_CASE("grid sweeps are deterministic and ordered") {
  MacExperiment e = adder_exp();
  e.n = 10;
  e.trials = 5;
  auto a = sweep_exponent_map(e, 1.0, 2.0);
  auto b = sweep_exponent_map(e, 1.0, 2.0);
  REQUIRE(a.size() == 9);
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].empirical == b[i].empirical);
    CHECK(a[i].stddev == b[i].stddev);
  }
  for (size_t i = 1; i < a.size(); ++i) {
    bool ordered = a[i - 1].r1 < a[i].r1 || (a[i - 1].r1 == a[i].r1 && a[i - 1].r2 < a[i].r2);
    CHECK(ordered);
  }
  CHECK_THROWS_AS(sweep_exponent_map(e, 0.0, 2.0), usage_error);
}

TEST_CASE("infeasible configurations are refused up front") {
  MacExperiment e = adder_exp();
  e.R1 = 5.0;  // codebook beyond integer range
  CHECK_THROWS_AS(empirical_exponent(e), resource_error);

  e = adder_exp();
  e.pair_budget = 10;
  e.allow_full_shortcut = false;
  CHECK_THROWS_AS(empirical_exponent(e), resource_error);

  e = adder_exp();
  e.n = 32;  // packed outputs overflow one word
  CHECK_THROWS_AS(empirical_exponent(e), resource_error);

  e = adder_exp();
  e.n = 30;
  e.R1 = 1.0;  // too many rows to draw, too many cells to walk
  CHECK_THROWS_AS(empirical_exponent(e), resource_error);

  e = adder_exp();
  e.n = 0;
  CHECK_THROWS_AS(empirical_exponent(e), usage_error);
  e = adder_exp();
  e.trials = 0;
  CHECK_THROWS_AS(empirical_exponent(e), usage_error);
}
