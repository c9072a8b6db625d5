#include <catch2/catch_amalgamated.hpp>

#include "dic/checks.hpp"
#include "dic/dist.hpp"

using namespace dic;

namespace {

ProductInput random_input(const ChannelSpec& spec, std::mt19937_64& gen) {
  return {{random_pmf(spec.nx[0], gen), random_pmf(spec.nx[1], gen), random_pmf(spec.nx[2], gen)}};
}

}  // namespace

TEST_CASE("builtins validate") {
  for (const char* name : {"additive3dic", "blackwell2dic", "pairing-strong", "finite-field"}) {
    ChannelSpec spec = builtin_channel(name);
    ValidationReport rep = validate_spec(spec);
    INFO(name);
    CHECK(rep.pass());
  }
  CHECK_THROWS_AS(builtin_channel("nope"), usage_error);
}

TEST_CASE("corrupted tables are rejected") {
  ChannelSpec spec = builtin_channel("additive3dic");
  spec.f[0][0] = spec.ny[0];  // out of range
  CHECK_THROWS_AS(validate_spec(spec), validation_error);
  spec = builtin_channel("additive3dic");
  spec.h[1].pop_back();  // wrong domain size
  CHECK_THROWS_AS(validate_spec(spec), validation_error);
}

TEST_CASE("structural condition verdicts") {
  // The combining map of the additive network collides; the pairing network
  // is one-to-one by construction.
  CHECK(check_invertible_h(builtin_channel("additive3dic")).verdict == Verdict::failed);
  CHECK(check_invertible_h(builtin_channel("pairing-strong")).verdict ==
        Verdict::proved_structurally);
  CHECK(check_strong_interference(builtin_channel("pairing-strong")).verdict ==
        Verdict::proved_structurally);
  // word-level XOR collides pairs just like integer addition
  CHECK(check_invertible_h(builtin_channel("finite-field")).verdict == Verdict::failed);
}

TEST_CASE("signal distribution marginals match the inputs") {
  std::mt19937_64 gen(7);
  for (const char* name : {"additive3dic", "blackwell2dic", "pairing-strong"}) {
    ChannelSpec spec = builtin_channel(name);
    for (int rep = 0; rep < 10; ++rep) {
      ProductInput in = random_input(spec, gen);
      SignalDistribution d(spec, in);
      for (int l = 0; l < 3; ++l) {
        Pmf m = d.marginal(VarRef::X(l));
        REQUIRE(m.size() == spec.nx[l]);
        for (int i = 0; i < m.size(); ++i) REQUIRE(m[i] == Catch::Approx(in.pmf[l][i]).margin(1e-12));
      }
      double total = 0.0;
      for (const auto& c : d.cells()) total += c.p;
      REQUIRE(total == Catch::Approx(1.0).margin(1e-12));
    }
  }
}

TEST_CASE("combined interference carries exactly the unresolvable part") {
  std::mt19937_64 gen(8);
  ChannelSpec spec = builtin_channel("additive3dic");
  for (int rep = 0; rep < 40; ++rep) {
    SignalDistribution d(spec, random_input(spec, gen));
    for (int k = 0; k < 3; ++k) {
      auto t = d.receiver_terms(k);
      // S_k = Y_k with the direct symbol removed: H(S_k) = H(Y_k | X_kk)
      double hy_given_x = d.conditional_entropy({VarRef::Y(k)}, {VarRef::Xlk(k, k)});
      REQUIRE(t.hs == Catch::Approx(hy_given_x).margin(1e-10));
      // conditioning reduces entropy
      REQUIRE(t.hy_given_a <= t.hy + 1e-10);
      REQUIRE(t.hy_given_b <= t.hy + 1e-10);
      // combined interference cannot exceed its parts
      REQUIRE(t.hs <= t.hx_a + t.hx_b + 1e-10);
    }
  }
}

TEST_CASE("invertible combining attains the entropy sum") {
  std::mt19937_64 gen(9);
  ChannelSpec spec = builtin_channel("pairing-strong");
  for (int rep = 0; rep < 20; ++rep) {
    SignalDistribution d(spec, random_input(spec, gen));
    for (int k = 0; k < 3; ++k) {
      auto t = d.receiver_terms(k);
      REQUIRE(t.hs == Catch::Approx(t.hx_a + t.hx_b).margin(1e-10));
    }
  }
}

TEST_CASE("additive network at the two-symbol sub-alphabet") {
  ChannelSpec spec = builtin_channel("additive3dic");
  Pmf half(std::vector<double>{0.5, 0.0, 0.5});
  SignalDistribution d(spec, {{half, half, half}});
  for (int k = 0; k < 3; ++k) {
    auto t = d.receiver_terms(k);
    CHECK(t.hx_direct == Catch::Approx(1.0).margin(1e-12));
    CHECK(t.hs == Catch::Approx(1.0).margin(1e-12));
    CHECK(t.hy == Catch::Approx(2.0).margin(1e-12));
  }
}

TEST_CASE("uniform words make every finite-field signal uniform") {
  // defaults: 2-bit words, full cross visibility, fully overlapping direct
  // signal, so X, S and Y = X xor S are all uniform on 4 values
  ChannelSpec spec = builtin_channel("finite-field");
  ProductInput in{{Pmf::uniform(spec.nx[0]), Pmf::uniform(spec.nx[1]), Pmf::uniform(spec.nx[2])}};
  SignalDistribution d(spec, in);
  for (int k = 0; k < 3; ++k) {
    auto t = d.receiver_terms(k);
    CHECK(t.hx_direct == Catch::Approx(2.0).margin(1e-10));
    CHECK(t.hs == Catch::Approx(2.0).margin(1e-10));
    CHECK(t.hy == Catch::Approx(2.0).margin(1e-10));
  }
}

TEST_CASE("cells enumerate every positive-probability input triple") {
  ChannelSpec spec = builtin_channel("additive3dic");
  Pmf point = Pmf::point(3, 2);
  SignalDistribution d(spec, {{point, Pmf::uniform(3), point}});
  CHECK(d.cells().size() == 3);
  for (const auto& c : d.cells()) {
    CHECK(c.x[0] == 2);
    CHECK(c.x[2] == 2);
  }
}
