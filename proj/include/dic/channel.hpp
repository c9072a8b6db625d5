#pragma once

#include <optional>

#include "dic/prob.hpp"

namespace dic {

// Receiver k decodes sender k; the two interfering senders, in the cyclic
// order used throughout, are cross_a = k+1 and cross_b = k+2 (mod 3).
inline int cross_a(int k) { return (k + 1) % 3; }
inline int cross_b(int k) { return (k + 2) % 3; }

// Three-sender deterministic interference network. Symbols are dense
// indices 0..size-1; yval optionally embeds output symbols on the real line
// for additive-noise observation models.
struct ChannelSpec {
  std::string name;
  std::array<int, 3> nx{};                               // |X_l|
  std::array<std::array<int, 3>, 3> nloss{};             // |X_lk|, l = sender, k = receiver
  std::array<int, 3> ns{};                               // |S_k|
  std::array<int, 3> ny{};                               // |Y_k|
  std::array<std::array<std::vector<int>, 3>, 3> g;      // g[l][k]: X_l -> X_lk
  std::array<std::vector<int>, 3> h;  // h[k]: (x_ak, x_bk) -> s_k, row-major in x_ak
  std::array<std::vector<int>, 3> f;  // f[k]: (x_kk, s_k) -> y_k, row-major in x_kk
  std::array<std::vector<double>, 3> yval;  // optional real values of Y_k

  int h_at(int k, int xa, int xb) const {
    return h[k][static_cast<size_t>(xa) * nloss[cross_b(k)][k] + xb];
  }
  int f_at(int k, int xkk, int s) const {
    return f[k][static_cast<size_t>(xkk) * ns[k] + s];
  }
};

// All signals produced by one input triple.
struct NetworkSignals {
  std::array<std::array<int, 3>, 3> xlk{};  // xlk[l][k]
  std::array<int, 3> s{};
  std::array<int, 3> y{};
};

struct ValidationCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

enum class Verdict { proved_structurally, passed_sampled, failed };

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::proved_structurally: return "proved-structurally";
    case Verdict::passed_sampled: return "passed-sampled";
    default: return "failed";
  }
}

// Result of a condition quantified over all product pmfs: either proved from
// the map structure, or sampled; failures carry a witness pmf.
struct ConditionReport {
  std::string name;
  Verdict verdict = Verdict::failed;
  std::string detail;
  std::optional<ProductInput> witness;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;
  std::vector<ConditionReport> conditions;

  bool pass() const {
    for (auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

namespace detail {

inline void check_table(const std::vector<int>& table, size_t domain, int codomain,
                        const std::string& what) {
  if (table.size() != domain)
    throw validation_error(what + ": table has " + std::to_string(table.size()) +
                           " entries, domain size " + std::to_string(domain));
  for (size_t i = 0; i < table.size(); ++i)
    if (table[i] < 0 || table[i] >= codomain)
      throw validation_error(what + ": entry " + std::to_string(i) + " maps to " +
                             std::to_string(table[i]) + ", codomain size " +
                             std::to_string(codomain));
}

}  // namespace detail

// Structural validation: table shapes and codomains (malformed specs throw),
// then per-argument injectivity of every h_k and f_k, reporting the first
// counterexample pair on failure.
inline ValidationReport validate_spec(const ChannelSpec& spec) {
  for (int l = 0; l < 3; ++l) {
    if (spec.nx[l] <= 0) throw validation_error("input alphabet " + std::to_string(l + 1) + " empty");
    for (int k = 0; k < 3; ++k)
      detail::check_table(spec.g[l][k], static_cast<size_t>(spec.nx[l]), spec.nloss[l][k],
                          "g[" + std::to_string(l + 1) + "][" + std::to_string(k + 1) + "]");
  }
  for (int k = 0; k < 3; ++k) {
    int na = spec.nloss[cross_a(k)][k], nb = spec.nloss[cross_b(k)][k];
    detail::check_table(spec.h[k], static_cast<size_t>(na) * nb, spec.ns[k],
                        "h[" + std::to_string(k + 1) + "]");
    detail::check_table(spec.f[k], static_cast<size_t>(spec.nloss[k][k]) * spec.ns[k], spec.ny[k],
                        "f[" + std::to_string(k + 1) + "]");
    if (!spec.yval[k].empty() && spec.yval[k].size() != static_cast<size_t>(spec.ny[k]))
      throw validation_error("yval[" + std::to_string(k + 1) + "]: wrong length");
  }

  ValidationReport rep;
  auto add = [&rep](std::string name, bool pass, std::string detail_str) {
    rep.checks.push_back({std::move(name), pass, std::move(detail_str)});
  };

  for (int k = 0; k < 3; ++k) {
    std::string kk = std::to_string(k + 1);
    int na = spec.nloss[cross_a(k)][k], nb = spec.nloss[cross_b(k)][k];
    {  // h injective in first argument for each fixed second
      bool ok = true;
      std::string w;
      for (int b = 0; b < nb && ok; ++b)
        for (int a1 = 0; a1 < na && ok; ++a1)
          for (int a2 = a1 + 1; a2 < na && ok; ++a2)
            if (spec.h_at(k, a1, b) == spec.h_at(k, a2, b)) {
              ok = false;
              w = "h" + kk + "(" + std::to_string(a1) + "," + std::to_string(b) + ") = h" + kk +
                  "(" + std::to_string(a2) + "," + std::to_string(b) + ")";
            }
      add("h" + kk + " one-to-one in first argument", ok, w);
    }
    {
      bool ok = true;
      std::string w;
      for (int a = 0; a < na && ok; ++a)
        for (int b1 = 0; b1 < nb && ok; ++b1)
          for (int b2 = b1 + 1; b2 < nb && ok; ++b2)
            if (spec.h_at(k, a, b1) == spec.h_at(k, a, b2)) {
              ok = false;
              w = "h" + kk + "(" + std::to_string(a) + "," + std::to_string(b1) + ") = h" + kk +
                  "(" + std::to_string(a) + "," + std::to_string(b2) + ")";
            }
      add("h" + kk + " one-to-one in second argument", ok, w);
    }
    {
      bool ok = true;
      std::string w;
      for (int s = 0; s < spec.ns[k] && ok; ++s)
        for (int x1 = 0; x1 < spec.nloss[k][k] && ok; ++x1)
          for (int x2 = x1 + 1; x2 < spec.nloss[k][k] && ok; ++x2)
            if (spec.f_at(k, x1, s) == spec.f_at(k, x2, s)) {
              ok = false;
              w = "f" + kk + "(" + std::to_string(x1) + "," + std::to_string(s) + ") = f" + kk +
                  "(" + std::to_string(x2) + "," + std::to_string(s) + ")";
            }
      add("f" + kk + " one-to-one in direct argument", ok, w);
    }
    {
      bool ok = true;
      std::string w;
      for (int x = 0; x < spec.nloss[k][k] && ok; ++x)
        for (int s1 = 0; s1 < spec.ns[k] && ok; ++s1)
          for (int s2 = s1 + 1; s2 < spec.ns[k] && ok; ++s2)
            if (spec.f_at(k, x, s1) == spec.f_at(k, x, s2)) {
              ok = false;
              w = "f" + kk + "(" + std::to_string(x) + "," + std::to_string(s1) + ") = f" + kk +
                  "(" + std::to_string(x) + "," + std::to_string(s2) + ")";
            }
      add("f" + kk + " one-to-one in interference argument", ok, w);
    }
    add("output alphabet " + kk + " large enough",
        spec.ny[k] >= std::max(spec.nloss[k][k], spec.ns[k]),
        spec.ny[k] >= std::max(spec.nloss[k][k], spec.ns[k])
            ? ""
            : "|Y| < max(|X_kk|, |S_k|) contradicts one-to-one maps");
  }
  return rep;
}

inline NetworkSignals evaluate(const ChannelSpec& spec, int x1, int x2, int x3) {
  std::array<int, 3> x{x1, x2, x3};
  for (int l = 0; l < 3; ++l)
    if (x[l] < 0 || x[l] >= spec.nx[l])
      throw usage_error("evaluate: symbol " + std::to_string(x[l]) + " out of range for sender " +
                        std::to_string(l + 1));
  NetworkSignals sig;
  for (int l = 0; l < 3; ++l)
    for (int k = 0; k < 3; ++k) sig.xlk[l][k] = spec.g[l][k][static_cast<size_t>(x[l])];
  for (int k = 0; k < 3; ++k) {
    sig.s[k] = spec.h_at(k, sig.xlk[cross_a(k)][k], sig.xlk[cross_b(k)][k]);
    sig.y[k] = spec.f_at(k, sig.xlk[k][k], sig.s[k]);
  }
  return sig;
}

namespace builtin {

inline std::vector<int> identity_map(int n) {
  std::vector<int> v(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<size_t>(i)] = i;
  return v;
}

inline std::vector<int> add_table(int na, int nb) {
  std::vector<int> t(static_cast<size_t>(na) * nb);
  for (int a = 0; a < na; ++a)
    for (int b = 0; b < nb; ++b) t[static_cast<size_t>(a) * nb + b] = a + b;
  return t;
}

// Ternary-input additive network: identity direct links, the two binary loss
// maps keep_low = {0,1,2 -> 0,1,0} and keep_high = {0,1,2 -> 0,1,1}, and all
// combining/receiver maps are integer addition.
inline ChannelSpec additive3dic() {
  ChannelSpec s;
  s.name = "additive3dic";
  s.nx = {3, 3, 3};
  std::vector<int> keep_low{0, 1, 0}, keep_high{0, 1, 1};
  // Cross pattern is cyclic: sender l into receiver l+1 uses keep_high,
  // into receiver l+2 uses keep_low.
  for (int l = 0; l < 3; ++l) {
    s.g[l][l] = identity_map(3);
    s.nloss[l][l] = 3;
    s.g[l][(l + 1) % 3] = keep_high;
    s.nloss[l][(l + 1) % 3] = 2;
    s.g[l][(l + 2) % 3] = keep_low;
    s.nloss[l][(l + 2) % 3] = 2;
  }
  for (int k = 0; k < 3; ++k) {
    s.ns[k] = 3;  // {0,1} + {0,1}
    s.h[k] = add_table(2, 2);
    s.ny[k] = 5;  // {0..2} + {0..2}
    s.f[k] = add_table(3, 3);
    s.yval[k] = {0, 1, 2, 3, 4};
  }
  return s;
}

// Two-user channel embedded as a three-sender network with a silent third
// sender (singleton alphabet). Receiver 1 sees X1 + X2; receiver 2 sees
// X2 + q(X1) with q = {0,1,2 -> 0,0,1}. Every receiver-3 map is
// singleton-valued, so receiver 3 contributes only R3 = 0.
inline ChannelSpec blackwell2dic() {
  ChannelSpec s;
  s.name = "blackwell2dic";
  s.nx = {3, 2, 1};
  std::vector<int> q{0, 0, 1};
  std::vector<int> const0_3(3, 0), const0_2(2, 0), const0_1(1, 0);

  s.g[0][0] = identity_map(3);
  s.nloss[0][0] = 3;
  s.g[0][1] = q;
  s.nloss[0][1] = 2;
  s.g[0][2] = const0_3;
  s.nloss[0][2] = 1;

  s.g[1][0] = identity_map(2);
  s.nloss[1][0] = 2;
  s.g[1][1] = identity_map(2);
  s.nloss[1][1] = 2;
  s.g[1][2] = const0_2;
  s.nloss[1][2] = 1;

  for (int k = 0; k < 3; ++k) {
    s.g[2][k] = const0_1;
    s.nloss[2][k] = 1;
  }

  // Receiver 1: interferers are (sender 2, sender 3): 2x1 domain.
  s.ns[0] = 2;
  s.h[0] = identity_map(2);  // h(x21, x31) = x21
  s.ny[0] = 4;
  s.f[0] = add_table(3, 2);
  s.yval[0] = {0, 1, 2, 3};
  // Receiver 2: interferers are (sender 3, sender 1): 1x2 domain.
  s.ns[1] = 2;
  s.h[1] = identity_map(2);  // h(x32, x12) = x12
  s.ny[1] = 3;
  s.f[1] = add_table(2, 2);
  s.yval[1] = {0, 1, 2};
  // Receiver 3: everything singleton.
  s.ns[2] = 1;
  s.h[2] = {0};
  s.ny[2] = 1;
  s.f[2] = {0};
  s.yval[2] = {0};
  return s;
}

// Binary inputs, identity losses everywhere, and injective pairings
// h(a,b) = 2a + b, f(x,s) = 4x + s. Cross links carry the full input and h
// is a bijection, so the strong-interference and invertible-h conditions
// hold by construction.
inline ChannelSpec pairing_strong() {
  ChannelSpec s;
  s.name = "pairing-strong";
  s.nx = {2, 2, 2};
  for (int l = 0; l < 3; ++l)
    for (int k = 0; k < 3; ++k) {
      s.g[l][k] = identity_map(2);
      s.nloss[l][k] = 2;
    }
  for (int k = 0; k < 3; ++k) {
    s.ns[k] = 4;
    s.h[k] = {0, 1, 2, 3};  // 2a + b
    s.ny[k] = 8;
    s.f[k] = {0, 1, 2, 3, 4, 5, 6, 7};  // 4x + s
    s.yval[k] = {0, 1, 2, 3, 4, 5, 6, 7};
  }
  return s;
}

// Bit-vector network over F_2: inputs are N-bit words, outputs 2N-bit words.
// Direct link shifts the input up by (alpha-1)N bits; cross links keep the
// top beta*N bits; h is XOR of the cross words and f XORs the shifted direct
// word with s. Both are one-to-one per fixed argument for any such shifts.
inline ChannelSpec finite_field(double alpha, double beta, int N) {
  if (N < 1 || N > 6) throw usage_error("finite-field: N must be in 1..6");
  if (alpha < 1.0 || alpha > 2.0 || beta < 0.0 || beta > 1.0)
    throw usage_error("finite-field: need alpha in [1,2], beta in [0,1]");
  double sd_real = (alpha - 1.0) * N, sc_real = beta * N;
  int sd = static_cast<int>(std::lround(sd_real));
  int sc = static_cast<int>(std::lround(sc_real));
  if (std::abs(sd_real - sd) > 1e-9 || std::abs(sc_real - sc) > 1e-9)
    throw usage_error("finite-field: (alpha-1)*N and beta*N must be integers");

  int nin = 1 << N, ncross = 1 << sc, nout = 1 << (2 * N);
  ChannelSpec s;
  s.name = "finite-field";
  s.nx = {nin, nin, nin};
  std::vector<int> direct(static_cast<size_t>(nin)), cross(static_cast<size_t>(nin));
  for (int x = 0; x < nin; ++x) {
    direct[static_cast<size_t>(x)] = x;  // direct alphabet indexes the raw word
    cross[static_cast<size_t>(x)] = x >> (N - sc);
  }
  for (int l = 0; l < 3; ++l)
    for (int k = 0; k < 3; ++k) {
      if (l == k) {
        s.g[l][k] = direct;
        s.nloss[l][k] = nin;
      } else {
        s.g[l][k] = cross;
        s.nloss[l][k] = ncross;
      }
    }
  for (int k = 0; k < 3; ++k) {
    s.ns[k] = ncross;
    s.h[k].resize(static_cast<size_t>(ncross) * ncross);
    for (int a = 0; a < ncross; ++a)
      for (int b = 0; b < ncross; ++b) s.h[k][static_cast<size_t>(a) * ncross + b] = a ^ b;
    s.ny[k] = nout;
    s.f[k].resize(static_cast<size_t>(nin) * ncross);
    for (int x = 0; x < nin; ++x)
      for (int v = 0; v < ncross; ++v)
        s.f[k][static_cast<size_t>(x) * ncross + v] = (x << sd) ^ v;
  }
  return s;
}

}  // namespace builtin

// Named channel factory; every returned spec passes validate_spec.
inline ChannelSpec builtin_channel(const std::string& name, double alpha = 1.0,
                                   double beta = 1.0, int N = 2) {
  ChannelSpec s;
  if (name == "additive3dic") s = builtin::additive3dic();
  else if (name == "blackwell2dic") s = builtin::blackwell2dic();
  else if (name == "pairing-strong") s = builtin::pairing_strong();
  else if (name == "finite-field") s = builtin::finite_field(alpha, beta, N);
  else throw usage_error("unknown builtin channel: " + name);
  if (!validate_spec(s).pass()) throw validation_error("builtin channel failed validation");
  return s;
}

}  // namespace dic
