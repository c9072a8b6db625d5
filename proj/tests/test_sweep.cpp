#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "dic/cli.hpp"

using namespace dic;
namespace fs = std::filesystem;

namespace {

std::string temp_dir(const std::string& tag) {
  fs::path p = fs::temp_directory_path() / ("dic_test_" + tag);
  fs::create_directories(p);
  return p.string();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

SweepConfig config(Scheme scheme, int den, int rounds) {
  SweepConfig cfg;
  cfg.scheme = scheme;
  cfg.step_den = den;
  cfg.rounds = rounds;
  return cfg;
}

}  // namespace

TEST_CASE("base grid enumerates every pmf combination once") {
  ChannelSpec core = builtin_channel("additive3dic");
  AggregateRegion tin = sweep(core, nullptr, config(Scheme::tin, 2, 0));
  CHECK(tin.evaluated == 216);  // C(4,2)^3 grid points
  CHECK(tin.combos.size() == 216);
  CHECK(tin.corners.size() == 40);
  CHECK(tin.hull.corners.size() == 1);
  CHECK(tin.best.value == Catch::Approx(3.0).margin(1e-9));
  for (int i = 0; i < 3; ++i) CHECK(tin.best.argmax[i] == Catch::Approx(1.0).margin(1e-9));

  AggregateRegion id = sweep(core, nullptr, config(Scheme::id, 2, 0));
  CHECK(id.evaluated == 216);
  CHECK(id.corners.size() == 84);
  CHECK(id.best.value == Catch::Approx(3.0).margin(1e-9));
}

TEST_CASE("refinement rounds extend the grid near the leaders") {
  ChannelSpec core = builtin_channel("additive3dic");
  AggregateRegion agg = sweep(core, nullptr, config(Scheme::tin, 2, 1));
  CHECK(agg.evaluated == 3297);
  CHECK(agg.corners.size() == 1444);
  CHECK(agg.best.value == Catch::Approx(3.0).margin(1e-9));
  // the refinement never loses the base grid's corners
  AggregateRegion base = sweep(core, nullptr, config(Scheme::tin, 2, 0));
  for (const CornerRecord& rec : base.corners) {
    bool found = false;
    for (const CornerRecord& fine : agg.corners)
      found = found || linf_dist(rec.r, fine.r) <= 1e-12;
    REQUIRE(found);
  }
}

TEST_CASE("sweeps are deterministic") {
  ChannelSpec core = builtin_channel("additive3dic");
  AggregateRegion a = sweep(core, nullptr, config(Scheme::id, 2, 1));
  AggregateRegion b = sweep(core, nullptr, config(Scheme::id, 2, 1));
  REQUIRE(a.corners.size() == b.corners.size());
  for (size_t i = 0; i < a.corners.size(); ++i) {
    CHECK(a.corners[i].r == b.corners[i].r);
    CHECK(a.corners[i].combo == b.corners[i].combo);
  }
  CHECK(a.evaluated == b.evaluated);
}

TEST_CASE("a finer grid only grows the aggregate") {
  ChannelSpec core = builtin_channel("additive3dic");
  AggregateRegion coarse = sweep(core, nullptr, config(Scheme::id, 2, 0));
  AggregateRegion fine = sweep(core, nullptr, config(Scheme::id, 4, 0));
  CHECK(fine.evaluated == 3375);
  for (const CornerRecord& rec : coarse.corners) REQUIRE(fine.hull.contains(rec.r, 1e-9));
  CompareResult cmp = compare(coarse, fine, 200, 0);
  CHECK(cmp.a_in_b);
  CHECK(cmp.witnesses_a_not_b.empty());
}

TEST_CASE("every corner replays from its recorded input") {
  ChannelSpec core = builtin_channel("additive3dic");
  AggregateRegion agg = sweep(core, nullptr, config(Scheme::tin, 2, 0));
  for (const CornerRecord& rec : agg.corners) {
    RateRegion reg = tin_region_at(core, agg.input_at(rec.combo));
    bool found = false;
    for (const Rate& c : reg.corners) found = found || linf_dist(c, rec.r) <= 1e-12;
    REQUIRE(found);
  }
}

TEST_CASE("the evaluation cap aborts oversized sweeps") {
  ChannelSpec core = builtin_channel("additive3dic");
  SweepConfig cfg = config(Scheme::id, 6, 2);
  cfg.cap = 100;
  try {
    sweep(core, nullptr, cfg);
    FAIL("expected a resource error");
  } catch (const resource_error& e) {
    CHECK(std::string(e.what()).find("cap") != std::string::npos);
  }
}

TEST_CASE("scheme preconditions are checked before evaluating") {
  ChannelSpec core = builtin_channel("additive3dic");
  CHECK_THROWS_AS(sweep(core, nullptr, config(Scheme::id_noisy, 2, 0)), usage_error);
  CHECK_THROWS_AS(sweep(core, nullptr, config(Scheme::twodic_id, 2, 0)), usage_error);
  CHECK_THROWS_AS(sweep(core, nullptr, config(Scheme::strong, 2, 0)), validation_error);
  SweepConfig bad = config(Scheme::id, 0, 0);
  CHECK_THROWS_AS(sweep(core, nullptr, bad), usage_error);
  CHECK(parse_scheme("tin-noisy") == Scheme::tin_noisy);
  CHECK_THROWS_AS(parse_scheme("nope"), usage_error);
}

TEST_CASE("noisy sweeps peak at the equiprobable combination") {
  GaussianNetSpec net = builtin_gaussian_bpsk();
  ChannelSpec core = net.to_channel();
  auto obs = net.observations();
  AggregateRegion tn = sweep(core, &obs, config(Scheme::tin_noisy, 4, 0));
  CHECK(tn.evaluated == 125);
  CHECK(tn.best.value == Catch::Approx(2.508752674).margin(1e-6));
  AggregateRegion idn = sweep(core, &obs, config(Scheme::id_noisy, 4, 0));
  CHECK(idn.best.value == Catch::Approx(2.367222096).margin(1e-6));
  CompareResult cr = compare(tn, idn, 100, 1);  // neither hull swallows the other
  CHECK_FALSE(cr.a_in_b);
  CHECK_FALSE(cr.b_in_a);
  CHECK_FALSE(cr.witnesses_a_not_b.empty());
  CHECK_FALSE(cr.witnesses_b_not_a.empty());
}

TEST_CASE("two-sender scheme pins the silent rate to zero") {
  ChannelSpec core = builtin_channel("blackwell2dic");
  AggregateRegion agg = sweep(core, nullptr, config(Scheme::twodic_id, 4, 0));
  CHECK(agg.evaluated == 75);
  CHECK(agg.best.value == Catch::Approx(1.905639062).margin(1e-6));
  for (const CornerRecord& rec : agg.corners) REQUIRE(rec.r[2] == 0.0);
}

TEST_CASE("sweep weights steer the reported best corner") {
  ChannelSpec core = builtin_channel("additive3dic");
  SweepConfig cfg = config(Scheme::id, 2, 0);
  cfg.weights = {2.0, 1.0, 1.0};
  AggregateRegion agg = sweep(core, nullptr, cfg);
  double manual = 0.0;
  for (const CornerRecord& rec : agg.corners)
    manual = std::max(manual, dot(cfg.weights, rec.r));
  CHECK(agg.best.value == Catch::Approx(manual).margin(1e-12));
}

TEST_CASE("corner files round-trip at the stored precision") {
  std::string dir = temp_dir("csv");
  std::vector<Rate> pts{{0.123456789, 1.0, 0.5}, {1.0 / 3.0, 2.0 / 3.0, 0.9999999994}};
  std::string path = dir + "/corners.csv";
  write_corners_csv(path, pts);
  std::vector<Rate> back = read_corners_csv(path);
  REQUIRE(back.size() == pts.size());
  for (size_t i = 0; i < pts.size(); ++i) CHECK(linf_dist(back[i], pts[i]) <= 1e-9);
  std::string text = read_file(path);
  CHECK(text.rfind("R1,R2,R3\n", 0) == 0);
  std::ofstream(dir + "/bad.csv") << "x,y\n1,2\n";
  CHECK_THROWS_AS(read_corners_csv(dir + "/bad.csv"), validation_error);
}

TEST_CASE("aggregate corners match the checked-in baseline") {
  ChannelSpec core = builtin_channel("additive3dic");
  AggregateRegion agg = sweep(core, nullptr, config(Scheme::tin, 2, 0));
  std::vector<Rate> pts;
  for (const CornerRecord& rec : agg.corners) pts.push_back(rec.r);
  std::string fresh = temp_dir("golden") + "/tin_den2.csv";
  write_corners_csv(fresh, pts);
  std::string baseline = std::string(DIC_SOURCE_DIR) + "/tests/golden/tin_den2.csv";
  if (std::getenv("DIC_REBASELINE")) {
    fs::create_directories(fs::path(baseline).parent_path());
    fs::copy_file(fresh, baseline, fs::copy_options::overwrite_existing);
    SUCCEED("baseline rewritten");
    return;
  }
  CHECK(read_file(fresh) == read_file(baseline));
}

TEST_CASE("spec files round-trip through json") {
  for (const char* name : {"additive3dic", "blackwell2dic", "pairing-strong", "finite-field"}) {
    ChannelSpec spec = builtin_channel(name);
    LoadedSpec back = spec_from_json(spec_to_json(spec));
    CHECK(back.core.nx == spec.nx);
    CHECK(back.core.ns == spec.ns);
    CHECK(back.core.ny == spec.ny);
    CHECK(back.core.g == spec.g);
    CHECK(back.core.h == spec.h);
    CHECK(back.core.f == spec.f);
    CHECK_FALSE(back.has_obs);
  }
  GaussianNetSpec net = builtin_gaussian_bpsk();
  LoadedSpec g = spec_from_json(gaussian_to_json(net));
  CHECK(g.has_obs);
  CHECK(g.core.ny[0] == 8);
  CHECK(g.obs[0].kind == ObservationChannel::Kind::gaussian);
  CHECK(g.obs[0].sigma2 == Catch::Approx(0.1));
}

TEST_CASE("checked-in spec files stay in sync with the builtins") {
  const std::string base = std::string(DIC_SOURCE_DIR) + "/specs/";
  for (auto [file, name] : {std::pair{"additive3dic.json", "additive3dic"},
                            std::pair{"blackwell2dic.json", "blackwell2dic"},
                            std::pair{"pairing_strong.json", "pairing-strong"},
                            std::pair{"finite_field.json", "finite-field"}}) {
    LoadedSpec loaded = resolve_spec(base + file);
    ChannelSpec builtin = builtin_channel(name);
    INFO(file);
    CHECK(loaded.core.g == builtin.g);
    CHECK(loaded.core.h == builtin.h);
    CHECK(loaded.core.f == builtin.f);
  }
  LoadedSpec gb = resolve_spec(base + "gaussian_bpsk.json");
  CHECK(gb.has_obs);
  CHECK(gb.core.ny == builtin_gaussian_bpsk().to_channel().ny);
}

TEST_CASE("spec resolution separates user errors from bad files") {
  CHECK_THROWS_AS(resolve_spec("not-a-builtin"), usage_error);
  std::string dir = temp_dir("spec");
  std::ofstream(dir + "/broken.json") << "{not json";
  CHECK_THROWS_AS(resolve_spec(dir + "/broken.json"), validation_error);
  std::ofstream(dir + "/empty_core.json") << "{\"name\":\"x\",\"core\":{}}";
  CHECK_THROWS_AS(resolve_spec(dir + "/empty_core.json"), validation_error);
}

TEST_CASE("command line drives the library end to end") {
  std::string dir = temp_dir("cli");
  CHECK(dic_main({"validate", "additive3dic"}) == 0);
  CHECK(dic_main({"region", "--spec", "additive3dic", "--pmf", "1/2,0,1/2", "--out",
                  dir + "/region"}) == 0);
  CHECK(fs::exists(dir + "/region/corners.csv"));
  CHECK(dic_main({"sweep", "--spec", "additive3dic", "--scheme", "tin", "--step", "1/2",
                  "--rounds", "0", "--out", dir + "/sweep"}) == 0);
  CHECK(fs::exists(dir + "/sweep/corners.csv"));
  CHECK(fs::exists(dir + "/sweep/summary.txt"));
  CHECK(dic_main({"compare", dir + "/sweep/corners.csv", dir + "/region/corners.csv"}) == 0);
  CHECK(dic_main({"satlab", "--r1", "0.5", "--r2", "0.5", "--n", "10", "--trials", "3"}) == 0);
  CHECK(dic_main({"slice", "--spec", "additive3dic", "--pmf", "uniform", "--out",
                  dir + "/slice"}) == 0);
  CHECK(fs::exists(dir + "/slice/slice.csv"));
}

TEST_CASE("exit codes distinguish failure classes") {
  std::string dir = temp_dir("cli_err");
  CHECK(dic_main({"validate", "not-a-builtin"}) == 2);      // unknown name
  CHECK(dic_main({"frobnicate"}) == 2);                     // unknown subcommand
  CHECK(dic_main({"region", "--spec", "additive3dic", "--out", dir + "/defaults"}) == 0);
  CHECK(dic_main({"dist", "additive3dic", "0.5,0.6,0.5"}) == 1);  // pmf does not sum to 1
  CHECK(dic_main({"sweep", "--spec", "additive3dic", "--cap", "10", "--out",
                  dir + "/capped"}) == 3);
  CHECK(dic_main({"preset", "nope", "--out", dir + "/p"}) == 2);
  CHECK(dic_main({"sweep", "--spec", "additive3dic", "--step", "2/3", "--out",
                  dir + "/badstep"}) == 2);  // step must be a unit fraction
}

TEST_CASE("the compact preset produces its summary") {
  std::string dir = temp_dir("preset");
  REQUIRE(dic_main({"preset", "fig7b", "--out", dir}) == 0);
  std::string summary = read_file(dir + "/summary.txt");
  CHECK(summary.find("preset=fig7b") != std::string::npos);
  CHECK(summary.find("id_sum=") != std::string::npos);
  CHECK(summary.find("tin_in_id=yes") != std::string::npos);
  CHECK(fs::exists(dir + "/id_corners.csv"));
  CHECK(fs::exists(dir + "/slice.svg"));
}
