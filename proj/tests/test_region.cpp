#include <catch2/catch_amalgamated.hpp>

#include "dic/hull.hpp"
#include "dic/region.hpp"

using namespace dic;

namespace {

ProductInput random_input(const ChannelSpec& spec, std::mt19937_64& gen) {
  return {{random_pmf(spec.nx[0], gen), random_pmf(spec.nx[1], gen), random_pmf(spec.nx[2], gen)}};
}

double corner_gap(const std::vector<Rate>& a, const std::vector<Rate>& b) {
  double worst = 0.0;
  for (const Rate& c : a) {
    double best = std::numeric_limits<double>::infinity();
    for (const Rate& d : b) best = std::min(best, linf_dist(c, d));
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace

TEST_CASE("two-symbol additive sub-alphabet collapses to the unit box") {
  ChannelSpec spec = builtin_channel("additive3dic");
  Pmf half(std::vector<double>{0.5, 0.0, 0.5});
  ProductInput in{{half, half, half}};
  for (const RateRegion& reg : {id_region_at(spec, in), tin_region_at(spec, in)}) {
    WeightedMax m = max_weighted_sum(reg, {1, 1, 1});
    CHECK(m.bounded);
    CHECK(m.value == Catch::Approx(3.0).margin(1e-9));
    for (int i = 0; i < 3; ++i) CHECK(m.argmax[i] == Catch::Approx(1.0).margin(1e-9));
    CHECK(reg.contains({1, 1, 1}));
    CHECK_FALSE(reg.contains({1.0 + 1e-6, 1, 1}));
  }
}

TEST_CASE("mixed grid input reproduces frozen vertex data") {
  ChannelSpec spec = builtin_channel("additive3dic");
  Pmf p1(std::vector<double>{11.0 / 24, 1.0 / 24, 0.5});
  Pmf p23(std::vector<double>{0.5, 0.0, 0.5});
  ProductInput in{{p1, p23, p23}};

  RateRegion id = id_region_at(spec, in);
  WeightedMax m = max_weighted_sum(id, {1, 1, 1});
  CHECK(m.value == Catch::Approx(2.997492414).margin(1e-6));
  CHECK(m.argmax[0] == Catch::Approx(1.059962987).margin(1e-6));
  CHECK(m.argmax[1] == Catch::Approx(1.0).margin(1e-6));
  CHECK(m.argmax[2] == Catch::Approx(0.937529427).margin(1e-6));
  CHECK(id.corners.size() == 74);

  WeightedMax mt = max_weighted_sum(tin_region_at(spec, in), {1, 1, 1});
  CHECK(mt.value == Catch::Approx(2.935021841).margin(1e-6));
}

TEST_CASE("cyclic sender relabeling rotates the region") {
  ChannelSpec spec = builtin_channel("additive3dic");
  std::mt19937_64 gen(21);
  for (int rep = 0; rep < 8; ++rep) {
    ProductInput in = random_input(spec, gen);
    ProductInput rot{{in.pmf[2], in.pmf[0], in.pmf[1]}};
    RateRegion a = id_region_at(spec, in);
    RateRegion b = id_region_at(spec, rot);
    std::vector<Rate> rotated;
    rotated.reserve(a.corners.size());
    for (const Rate& r : a.corners) rotated.push_back({r[2], r[0], r[1]});
    CHECK(corner_gap(rotated, b.corners) < 1e-9);
    CHECK(corner_gap(b.corners, rotated) < 1e-9);
  }
}

TEST_CASE("regions are downward closed") {
  ChannelSpec spec = builtin_channel("additive3dic");
  std::mt19937_64 gen(22);
  for (int rep = 0; rep < 10; ++rep) {
    ProductInput in = random_input(spec, gen);
    RateRegion reg = id_region_at(spec, in);
    for (int s = 0; s < 20; ++s) {
      const Rate& c = reg.corners[gen() % reg.corners.size()];
      Rate shrunk;
      for (int i = 0; i < 3; ++i) shrunk[i] = c[i] * uniform01(gen);
      CHECK(reg.contains(shrunk));
    }
  }
}

TEST_CASE("treating interference as noise is never better") {
  std::mt19937_64 gen(23);
  for (const char* name : {"additive3dic", "pairing-strong", "finite-field"}) {
    ChannelSpec spec = builtin_channel(name);
    for (int rep = 0; rep < 20; ++rep) {
      ProductInput in = random_input(spec, gen);
      RateRegion tin = tin_region_at(spec, in);
      RateRegion id = id_region_at(spec, in);
      InclusionResult inc = inclusion_check(tin, id, 200, 7);
      INFO(name << " rep " << rep);
      CHECK(inc.included);
      CHECK(inc.witnesses.empty());
    }
  }
}

TEST_CASE("per-receiver dominance identities") {
  // Both interference-decoding caps dominate the noise-treatment rate:
  // I(X_kk; Y_k) <= H(X_kk) and, by data processing through the second
  // interferer, I(X_kk; Y_k) <= H(Y_k | X_ak) - H(X_bk) on the additive
  // network (and symmetrically).
  ChannelSpec spec = builtin_channel("additive3dic");
  std::mt19937_64 gen(24);
  for (int rep = 0; rep < 100; ++rep) {
    SignalDistribution d(spec, random_input(spec, gen));
    for (int k = 0; k < 3; ++k) {
      auto t = d.receiver_terms(k);
      double tin_rate = t.hy - t.hs;
      REQUIRE(t.hx_direct - tin_rate >= -1e-9);
      REQUIRE((t.hy_given_a - t.hx_b) - tin_rate >= -1e-9);
      REQUIRE((t.hy_given_b - t.hx_a) - tin_rate >= -1e-9);
    }
  }
}

TEST_CASE("pairing network: layered region matches the capacity shape") {
  ChannelSpec spec = builtin_channel("pairing-strong");
  std::mt19937_64 gen(13);
  for (int rep = 0; rep < 30; ++rep) {
    ProductInput in = random_input(spec, gen);
    RateRegion a = id_region_at(spec, in);
    RateRegion b = strong_capacity_at(spec, in);
    for (const Rate& c : a.corners) CHECK(b.contains(c, 1e-6));
    for (const Rate& c : b.corners) CHECK(a.contains(c, 1e-6));
    CHECK(inclusion_check(a, b, 64, 5, 1e-6).included);
    CHECK(inclusion_check(b, a, 64, 5, 1e-6).included);
  }
}

TEST_CASE("capacity shape refuses failed structural checks unless overridden") {
  ChannelSpec spec = builtin_channel("additive3dic");
  ProductInput in{{Pmf::uniform(3), Pmf::uniform(3), Pmf::uniform(3)}};
  CHECK_THROWS_AS(strong_capacity_at(spec, in), validation_error);
  RateRegion forced = strong_capacity_at(spec, in, true);
  CHECK(max_weighted_sum(forced, {1, 1, 1}).bounded);
}

TEST_CASE("two-sender reduction matches the general engine") {
  ChannelSpec spec = builtin_channel("blackwell2dic");
  std::mt19937_64 gen(11);
  for (int rep = 0; rep < 30; ++rep) {
    ProductInput in{{random_pmf(spec.nx[0], gen), random_pmf(spec.nx[1], gen), Pmf::uniform(1)}};
    RateRegion a = two_user_id_region_at(spec, in);
    RateRegion b = id_region_at(spec, in);
    CHECK(corner_gap(a.corners, b.corners) < 1e-9);
    CHECK(corner_gap(b.corners, a.corners) < 1e-9);
    RateRegion tin = tin_region_at(spec, in);
    CHECK(inclusion_check(tin, a, 100, 3).included);
  }
  CHECK_THROWS_AS(two_user_id_region_at(builtin_channel("additive3dic"),
                                        ProductInput{{Pmf::uniform(3), Pmf::uniform(3),
                                                      Pmf::uniform(3)}}),
                  usage_error);
}

TEST_CASE("single-receiver system leaves the cross rates unbounded") {
  ChannelSpec spec = builtin_channel("additive3dic");
  ProductInput in{{Pmf::uniform(3), Pmf::uniform(3), Pmf::uniform(3)}};
  SignalDistribution d(spec, in);
  std::vector<MinConstraint> cons;
  for (MinConstraint& c : interference_decoding_constraints(exact_bounds(d)))
    if (c.base == 0) cons.push_back(std::move(c));
  RateRegion reg = region_from_constraints(std::move(cons));

  CHECK_FALSE(max_weighted_sum(reg, {1, 1, 1}).bounded);
  WeightedMax m = max_weighted_sum(reg, {1, 0, 0});
  CHECK(m.bounded);
  CHECK(m.value == Catch::Approx(std::log2(3.0)).margin(1e-9));
}

TEST_CASE("hull reduction keeps every supporting direction") {
  ChannelSpec spec = builtin_channel("additive3dic");
  std::mt19937_64 gen(29);
  ProductInput in = random_input(spec, gen);
  RateRegion reg = id_region_at(spec, in);
  std::vector<Rate> hull = dc_hull_corners(reg.corners);
  CHECK(hull.size() <= reg.corners.size());
  for (int s = 0; s < 200; ++s) {
    Rate w{uniform01(gen) + 1e-3, uniform01(gen) + 1e-3, uniform01(gen) + 1e-3};
    double full = 0.0, reduced = 0.0;
    for (const Rate& r : reg.corners) full = std::max(full, dot(w, r));
    for (const Rate& r : hull) reduced = std::max(reduced, dot(w, r));
    REQUIRE(reduced == Catch::Approx(full).margin(1e-9));
  }
}

TEST_CASE("maximal point filter is sound") {
  std::vector<Rate> pts{{1, 0, 0}, {0.5, 0.5, 0.5}, {0.4, 0.4, 0.4}, {1, 0, 0}, {0, 1, 1}};
  std::vector<Rate> kept = detail::pareto_maximal(pts);
  REQUIRE(kept.size() == 3);
  for (const Rate& k : kept) {
    bool dominated = false;
    for (const Rate& other : kept)
      if (linf_dist(other, k) > 0 && other[0] >= k[0] && other[1] >= k[1] && other[2] >= k[2])
        dominated = true;
    CHECK_FALSE(dominated);
  }
  for (const Rate& p : pts) {
    bool covered = false;
    for (const Rate& k : kept)
      covered = covered || (k[0] >= p[0] - 1e-12 && k[1] >= p[1] - 1e-12 && k[2] >= p[2] - 1e-12);
    CHECK(covered);
  }
}
