#pragma once

#include <algorithm>
#include <numeric>

#include "dic/common.hpp"

namespace dic {

// Finite pmf over symbol indices 0..n-1; nonnegative, sums to 1 within 1e-12.
struct Pmf {
  std::vector<double> p;

  Pmf() = default;
  explicit Pmf(std::vector<double> probs) : p(std::move(probs)) { validate(); }

  static Pmf uniform(int n) {
    return Pmf(std::vector<double>(static_cast<size_t>(n), 1.0 / n));
  }
  static Pmf point(int n, int i) {
    std::vector<double> v(static_cast<size_t>(n), 0.0);
    v.at(static_cast<size_t>(i)) = 1.0;
    return Pmf(std::move(v));
  }

  int size() const { return static_cast<int>(p.size()); }
  double operator[](int i) const { return p[static_cast<size_t>(i)]; }

  void validate() const {
    if (p.empty()) throw validation_error("pmf: empty alphabet");
    double sum = 0.0;
    for (double v : p) {
      if (v < -1e-12) throw validation_error("pmf: negative probability");
      sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-12)
      throw validation_error("pmf: mass sums to " + std::to_string(sum));
  }
};

// Base-2 entropy with 0 log 0 = 0; valid for any nonnegative weight vector
// summing to 1.
inline double entropy_bits(const std::vector<double>& p) {
  double h = 0.0;
  for (double v : p)
    if (v > 0.0) h -= v * std::log2(v);
  return h;
}

inline double entropy(const Pmf& pmf) { return entropy_bits(pmf.p); }

// Binary entropy of (q, 1-q).
inline double h2(double q) {
  if (q <= 0.0 || q >= 1.0) return 0.0;
  return -q * std::log2(q) - (1.0 - q) * std::log2(1.0 - q);
}

// Grid pmf represented exactly by integer numerators over a common
// denominator; keeps grid bookkeeping free of float comparisons.
struct GridPmf {
  std::vector<int> num;
  int den = 1;

  Pmf to_pmf() const {
    std::vector<double> v(num.size());
    for (size_t i = 0; i < num.size(); ++i) v[i] = static_cast<double>(num[i]) / den;
    return Pmf(std::move(v));
  }
  bool operator==(const GridPmf&) const = default;
  bool operator<(const GridPmf& o) const {
    if (den != o.den) return den < o.den;
    return num < o.num;
  }

  // Reduced form: (3,3)/6 and (1,1)/2 are the same pmf and must key equal
  // across nested refinement grids.
  GridPmf normalized() const {
    int g = den;
    for (int v : num) g = std::gcd(g, v);
    GridPmf out = *this;
    if (g > 1) {
      out.den = den / g;
      for (int& v : out.num) v /= g;
    }
    return out;
  }
};

namespace detail {
inline void compositions(int total, int parts, std::vector<int>& cur,
                         std::vector<std::vector<int>>& out) {
  if (parts == 1) {
    cur.push_back(total);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int i = 0; i <= total; ++i) {
    cur.push_back(i);
    compositions(total - i, parts - 1, cur, out);
    cur.pop_back();
  }
}
}  // namespace detail

// All pmfs over `dim` symbols with entries that are multiples of 1/den,
// lexicographic in the numerator tuple; count = C(den+dim-1, dim-1).
inline std::vector<GridPmf> simplex_grid(int dim, int den) {
  if (dim < 1) throw usage_error("simplex_grid: dim must be >= 1");
  if (den < 1) throw usage_error("simplex_grid: step must be 1/M with integer M >= 1");
  std::vector<std::vector<int>> nums;
  std::vector<int> cur;
  detail::compositions(den, dim, cur, nums);
  std::vector<GridPmf> out;
  out.reserve(nums.size());
  for (auto& n : nums) out.push_back(GridPmf{std::move(n), den});
  return out;
}

// Grid points of step 1/den within the closed Linf ball around `center`.
inline std::vector<GridPmf> refine_around_grid(const Pmf& center, double radius, int den) {
  if (radius < 0.0) throw usage_error("refine_around: negative radius");
  std::vector<GridPmf> out;
  for (auto& g : simplex_grid(center.size(), den)) {
    double d = 0.0;
    for (int i = 0; i < center.size(); ++i)
      d = std::max(d, std::abs(static_cast<double>(g.num[i]) / den - center[i]));
    if (d <= radius + 1e-12) out.push_back(g);
  }
  return out;
}

// Zero radius returns just the center (even off-grid); otherwise the grid
// points of the finer step inside the ball.
inline std::vector<Pmf> refine_around(const Pmf& center, double radius, int den) {
  if (radius == 0.0) return {center};
  std::vector<Pmf> out;
  for (auto& g : refine_around_grid(center, radius, den)) out.push_back(g.to_pmf());
  return out;
}

// Independent per-sender input pmfs p(x1)p(x2)p(x3).
struct ProductInput {
  std::array<Pmf, 3> pmf;
};

// Random interior pmf: exponential spacings give uniform sampling on the
// simplex; used by sampled structural checks and property tests.
inline Pmf random_pmf(int dim, std::mt19937_64& gen) {
  std::vector<double> v(static_cast<size_t>(dim));
  double sum = 0.0;
  for (double& x : v) {
    double u = uniform01(gen);
    if (u < 1e-300) u = 1e-300;
    x = -std::log(u);
    sum += x;
  }
  for (double& x : v) x /= sum;
  return Pmf(std::move(v));
}

}  // namespace dic
