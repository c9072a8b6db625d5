#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace dic {

// Error taxonomy maps onto CLI exit codes: validation 1, usage 2, resource 3.
struct validation_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct usage_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct resource_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// Numerical routine failed to reach its required accuracy.
struct accuracy_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Absolute tolerances in bits / rate units.
inline constexpr double entropy_tol = 1e-9;
inline constexpr double vertex_tol = 1e-9;
inline constexpr double feas_tol = 1e-9;

using Rate = std::array<double, 3>;

inline double dot(const Rate& a, const Rate& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

inline double linf_dist(const Rate& a, const Rate& b) {
  double d = 0.0;
  for (int i = 0; i < 3; ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

inline bool lex_less(const Rate& a, const Rate& b) {
  for (int i = 0; i < 3; ++i) {
    if (a[i] < b[i]) return true;
    if (a[i] > b[i]) return false;
  }
  return false;
}

// Quantized key for tolerance-based dedup; 1e-9 grid.
inline std::array<long long, 3> rate_key(const Rate& r, double tol = vertex_tol) {
  std::array<long long, 3> k{};
  for (int i = 0; i < 3; ++i) k[i] = static_cast<long long>(std::llround(r[i] / tol));
  return k;
}

// splitmix64: cheap, well-mixed derivation of independent seed streams.
inline std::uint64_t split_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

inline double uniform01(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

// Fixed-precision formatting keeps CSV output byte-stable across runs.
inline std::string fmt_fixed(double v, int digits = 9) {
  char buf[64];
  if (v == 0.0) v = 0.0;  // normalize -0
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return std::string(buf);
}

inline int parallel_width() {
  if (const char* env = std::getenv("DIC_THREADS")) {
    int n = std::atoi(env);
    if (n >= 1) return n;
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc ? static_cast<int>(hc) : 1;
}

}  // namespace dic
