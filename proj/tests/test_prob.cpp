#include <catch2/catch_amalgamated.hpp>

#include "dic/prob.hpp"

using namespace dic;

namespace {

constexpr double log2_3 = 1.5849625007211562;

std::vector<double> random_joint(int rows, int cols, std::mt19937_64& gen) {
  std::vector<double> p(static_cast<size_t>(rows * cols));
  double total = 0.0;
  for (double& v : p) {
    v = -std::log(uniform01(gen) + 1e-300);
    total += v;
  }
  for (double& v : p) v /= total;
  return p;
}

}  // namespace

TEST_CASE("entropy closed forms") {
  CHECK(entropy_bits(Pmf::uniform(4).p) == Catch::Approx(2.0).margin(1e-12));
  CHECK(entropy_bits(Pmf::uniform(3).p) == Catch::Approx(log2_3).margin(1e-12));
  CHECK(entropy_bits({0.25, 0.5, 0.25}) == Catch::Approx(1.5).margin(1e-12));
  CHECK(entropy_bits(Pmf::point(5, 2).p) == 0.0);
  CHECK(entropy_bits({0.5, 0.0, 0.5}) == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("zero probabilities contribute nothing") {
  double h1 = entropy_bits({0.3, 0.7});
  double h2 = entropy_bits({0.3, 0.0, 0.7, 0.0});
  CHECK(h1 == Catch::Approx(h2).margin(1e-12));
}

TEST_CASE("chain rule on random joints") {
  std::mt19937_64 gen(11);
  for (int rep = 0; rep < 50; ++rep) {
    int rows = 2 + static_cast<int>(gen() % 4), cols = 2 + static_cast<int>(gen() % 4);
    std::vector<double> joint = random_joint(rows, cols, gen);
    double h_joint = entropy_bits(joint);
    std::vector<double> pa(static_cast<size_t>(rows), 0.0);
    for (int a = 0; a < rows; ++a)
      for (int b = 0; b < cols; ++b) pa[static_cast<size_t>(a)] += joint[static_cast<size_t>(a * cols + b)];
    double h_a = entropy_bits(pa);
    double h_b_given_a = 0.0;
    for (int a = 0; a < rows; ++a) {
      if (pa[static_cast<size_t>(a)] <= 0.0) continue;
      std::vector<double> row;
      for (int b = 0; b < cols; ++b) row.push_back(joint[static_cast<size_t>(a * cols + b)] / pa[static_cast<size_t>(a)]);
      h_b_given_a += pa[static_cast<size_t>(a)] * entropy_bits(row);
    }
    REQUIRE(h_joint == Catch::Approx(h_a + h_b_given_a).margin(1e-10));
  }
}

TEST_CASE("pmf validation rejects bad input") {
  CHECK_THROWS_AS(Pmf(std::vector<double>{0.5, 0.6}).validate(), validation_error);
  CHECK_THROWS_AS(Pmf(std::vector<double>{-0.1, 1.1}).validate(), validation_error);
  CHECK_NOTHROW(Pmf(std::vector<double>{0.5, 0.5}).validate());
}

TEST_CASE("simplex grid enumerates exactly the rational points") {
  auto g6 = simplex_grid(3, 6);
  CHECK(g6.size() == 28);  // C(8,2)
  bool has_half = false, has_uniform = false;
  for (const GridPmf& g : g6) {
    int sum = 0;
    for (int v : g.num) {
      CHECK(v >= 0);
      sum += v;
    }
    CHECK(sum == g.den);
    if (g.num == std::vector<int>{3, 0, 3}) has_half = true;
    if (g.num == std::vector<int>{2, 2, 2}) has_uniform = true;
  }
  CHECK(has_half);
  CHECK(has_uniform);
  CHECK(simplex_grid(2, 40).size() == 41);
  CHECK(simplex_grid(1, 7).size() == 1);
}

TEST_CASE("grid pmfs convert exactly") {
  GridPmf g{{3, 0, 3}, 6};
  Pmf p = g.to_pmf();
  CHECK(p[0] == 0.5);
  CHECK(p[1] == 0.0);
  CHECK(p[2] == 0.5);
  GridPmf n = GridPmf{{2, 0, 2}, 4}.normalized();
  CHECK(n.den == 2);
  CHECK(n.num == std::vector<int>{1, 0, 1});
}

TEST_CASE("refinement around a center") {
  SECTION("zero radius keeps only the center") {
    auto pts = refine_around_grid(Pmf::uniform(3), 0.0, 6);
    REQUIRE(pts.size() == 1);
    CHECK(pts[0].num == std::vector<int>{2, 2, 2});
  }
  SECTION("all refined points are valid and within the ball") {
    Pmf center(std::vector<double>{0.5, 0.0, 0.5});
    auto pts = refine_around_grid(center, 1.0 / 6.0, 12);
    REQUIRE(!pts.empty());
    for (const GridPmf& g : pts) {
      Pmf p = g.to_pmf();
      p.validate();
      for (int i = 0; i < p.size(); ++i)
        CHECK(std::abs(p[i] - center[i]) <= 1.0 / 6.0 + 1e-12);
    }
  }
  SECTION("coarser grids nest inside finer ones") {
    Pmf center(std::vector<double>{0.5, 0.0, 0.5});
    auto coarse = refine_around_grid(center, 1.0 / 6.0, 6);
    auto fine = refine_around_grid(center, 1.0 / 6.0, 12);
    for (const GridPmf& c : coarse) {
      bool found = false;
      for (const GridPmf& f : fine)
        if (f.normalized().num == c.normalized().num) found = true;
      CHECK(found);
    }
  }
}

TEST_CASE("random pmfs are valid and seeded") {
  std::mt19937_64 g1(42), g2(42), g3(43);
  Pmf a = random_pmf(4, g1), b = random_pmf(4, g2), c = random_pmf(4, g3);
  a.validate();
  for (int i = 0; i < 4; ++i) CHECK(a[i] == b[i]);
  bool differs = false;
  for (int i = 0; i < 4; ++i) differs = differs || a[i] != c[i];
  CHECK(differs);
}
