#pragma once

#include <bit>
#include <memory>

#include "dic/prob.hpp"

namespace dic {

// Two-input deterministic map b = h(b1, b2) on finite alphabets, injective
// in each argument for fixed other argument.
struct MacSpec {
  std::string name;
  int nb1 = 0, nb2 = 0, nb = 0;
  std::vector<int> h;  // row-major: h[b1 * nb2 + b2]

  int at(int b1, int b2) const { return h[static_cast<size_t>(b1 * nb2 + b2)]; }
};

inline void validate_mac(const MacSpec& m) {
  if (m.nb1 < 1 || m.nb2 < 1 || m.nb < 1) throw validation_error("mac: empty alphabet");
  if (m.h.size() != static_cast<size_t>(m.nb1) * static_cast<size_t>(m.nb2))
    throw validation_error("mac: table size mismatch");
  for (int v : m.h)
    if (v < 0 || v >= m.nb) throw validation_error("mac: table value out of range");
  for (int i = 0; i < m.nb1; ++i)
    for (int j = 0; j < m.nb2; ++j) {
      for (int j2 = j + 1; j2 < m.nb2; ++j2)
        if (m.at(i, j) == m.at(i, j2))
          throw validation_error("mac: not injective in the second argument");
      for (int i2 = i + 1; i2 < m.nb1; ++i2)
        if (m.at(i, j) == m.at(i2, j))
          throw validation_error("mac: not injective in the first argument");
    }
}

inline MacSpec builtin_mac(const std::string& name) {
  if (name == "adder") {
    MacSpec m;
    m.name = "adder";
    m.nb1 = m.nb2 = 2;
    m.nb = 3;
    m.h = {0, 1, 1, 2};
    return m;
  }
  throw usage_error("unknown builtin mac: " + name);
}

// One Monte Carlo configuration: random codebooks of rate-determined sizes,
// componentwise h-combination, distinct-sequence counting.
struct MacExperiment {
  MacSpec mac;
  Pmf p1{std::vector<double>{0.5, 0.5}};
  Pmf p2{std::vector<double>{0.5, 0.5}};
  double R1 = 0.5, R2 = 0.5;
  int n = 14;
  int trials = 20;
  std::uint64_t seed = 0;
  // Sampling strategy knobs (defaults sized for desk-scale runs).
  std::uint64_t direct_draw_limit = 1ull << 24;  // max codebook size drawn row by row
  std::uint64_t pair_budget = 1ull << 28;        // max |S1| x |S2| combinations enumerated
  bool allow_full_shortcut = true;               // closed form when supports are a.s. full
};

// min{R1 + R2, R1 + H(B2), H(B1) + R2, H(B)}: the sequence-count exponent
// the typicality argument predicts.
inline double predicted_exponent(const MacExperiment& exp) {
  double h1 = entropy_bits(exp.p1.p);
  double h2 = entropy_bits(exp.p2.p);
  std::vector<double> pb(static_cast<size_t>(exp.mac.nb), 0.0);
  for (int i = 0; i < exp.mac.nb1; ++i)
    for (int j = 0; j < exp.mac.nb2; ++j)
      pb[static_cast<size_t>(exp.mac.at(i, j))] += exp.p1[i] * exp.p2[j];
  double hb = entropy_bits(pb);
  return std::min({exp.R1 + exp.R2, exp.R1 + h2, h1 + exp.R2, hb});
}

namespace detail {

inline std::uint64_t codebook_size(double rate, int n) {
  double v = std::exp2(rate * n);
  if (v > 9.0e15) throw resource_error("satlab: codebook size exceeds 2^53");
  return static_cast<std::uint64_t>(std::ceil(v - 1e-9));
}

// Exact binomial draw by pmf enumeration outward from the mode; O(1) work
// per term via the pmf recurrence.
inline std::uint64_t binomial_draw(std::mt19937_64& gen, std::uint64_t m, double p) {
  if (m == 0 || p <= 0.0) return 0;
  if (p >= 1.0) return m;
  double u = uniform01(gen);
  double md = static_cast<double>(m);
  std::uint64_t k0 = static_cast<std::uint64_t>(std::min(md, std::floor((md + 1.0) * p)));
  double logp0 = std::lgamma(md + 1.0) - std::lgamma(static_cast<double>(k0) + 1.0) -
                 std::lgamma(md - static_cast<double>(k0) + 1.0) +
                 static_cast<double>(k0) * std::log(p) +
                 (md - static_cast<double>(k0)) * std::log1p(-p);
  double pm0 = std::exp(logp0);
  double cum = pm0;
  if (u <= cum) return k0;
  double up = pm0, down = pm0;
  std::uint64_t hi = k0, lo = k0;
  double odds = p / (1.0 - p);
  while (hi < m || lo > 0) {
    if (hi < m) {
      up *= (md - static_cast<double>(hi)) / (static_cast<double>(hi) + 1.0) * odds;
      ++hi;
      cum += up;
      if (u <= cum) return hi;
    }
    if (lo > 0) {
      down *= static_cast<double>(lo) / (md - static_cast<double>(lo) + 1.0) / odds;
      --lo;
      cum += down;
      if (u <= cum) return lo;
    }
  }
  return k0;  // accumulated mass fell short of u by rounding; return the mode
}

// Distinct-sequence sampler for one codebook: returns the support of M
// i.i.d. length-n draws, each sequence packed little-endian at bps bits per
// symbol. Direct row-by-row draws when M is small; otherwise the exact
// occupancy distribution over all |alphabet|^n cells via sequential
// conditional binomials.
struct SupportResult {
  std::vector<std::uint64_t> seqs;  // sorted distinct packed sequences
  bool full = false;                // all |alphabet|^n sequences present
};

inline double prob_not_full(const Pmf& p, int n, std::uint64_t m) {
  // Union bound sum over cells of (1 - q_cell)^m, streamed by odometer.
  int na = p.size();
  std::vector<int> digit(static_cast<size_t>(n), 0);
  std::vector<double> prefix(static_cast<size_t>(n) + 1, 1.0);
  for (int t = 0; t < n; ++t) prefix[static_cast<size_t>(t) + 1] = prefix[static_cast<size_t>(t)] * p[0];
  double md = static_cast<double>(m);
  double sum = 0.0;
  while (true) {
    double q = prefix[static_cast<size_t>(n)];
    if (q <= 0.0) return 1.0;  // an impossible sequence can never appear
    sum += std::exp(md * std::log1p(-q));
    if (sum > 1.0) return 1.0;
    int t = n - 1;
    while (t >= 0 && digit[static_cast<size_t>(t)] == na - 1) digit[static_cast<size_t>(t--)] = 0;
    if (t < 0) break;
    ++digit[static_cast<size_t>(t)];
    for (int s = t; s < n; ++s)
      prefix[static_cast<size_t>(s) + 1] =
          prefix[static_cast<size_t>(s)] * p[digit[static_cast<size_t>(s)]];
  }
  return sum;
}

inline SupportResult sample_support(const Pmf& p, int n, std::uint64_t m, int bps,
                                    std::mt19937_64& gen, const MacExperiment& cfg) {
  SupportResult out;
  int na = p.size();
  double cells_log2 = static_cast<double>(n) * std::log2(static_cast<double>(na));
  bool cells_enumerable = cells_log2 <= 24.0 + 1e-9;

  if (cfg.allow_full_shortcut && cells_enumerable && m > (1ull << 16)) {
    if (prob_not_full(p, n, m) <= 1e-12) {
      out.full = true;
      std::uint64_t cells = 1;
      for (int t = 0; t < n; ++t) cells *= static_cast<std::uint64_t>(na);
      out.seqs.reserve(cells);
      std::vector<int> digit(static_cast<size_t>(n), 0);
      while (true) {
        std::uint64_t key = 0;
        for (int t = 0; t < n; ++t)
          key |= static_cast<std::uint64_t>(digit[static_cast<size_t>(t)]) << (bps * t);
        out.seqs.push_back(key);
        int t = n - 1;
        while (t >= 0 && digit[static_cast<size_t>(t)] == na - 1) digit[static_cast<size_t>(t--)] = 0;
        if (t < 0) break;
        ++digit[static_cast<size_t>(t)];
      }
      std::sort(out.seqs.begin(), out.seqs.end());
      return out;
    }
  }

  if (m <= cfg.direct_draw_limit) {
    std::vector<double> cdf(p.p);
    for (size_t i = 1; i < cdf.size(); ++i) cdf[i] += cdf[i - 1];
    out.seqs.reserve(m);
    for (std::uint64_t r = 0; r < m; ++r) {
      std::uint64_t key = 0;
      for (int t = 0; t < n; ++t) {
        double u = uniform01(gen);
        int sym = 0;
        while (sym + 1 < na && u > cdf[static_cast<size_t>(sym)]) ++sym;
        key |= static_cast<std::uint64_t>(sym) << (bps * t);
      }
      out.seqs.push_back(key);
    }
    std::sort(out.seqs.begin(), out.seqs.end());
    out.seqs.erase(std::unique(out.seqs.begin(), out.seqs.end()), out.seqs.end());
    return out;
  }

  if (!cells_enumerable)
    throw resource_error("satlab: codebook size " + std::to_string(m) +
                         " exceeds the direct-draw limit and the sequence space exceeds 2^24 "
                         "cells; reduce n or the rate");

  // Exact occupancy sampling: walk all cells in lexicographic order, drawing
  // each cell's hit count from its conditional binomial; only nonempty cells
  // are kept. The final cell absorbs whatever remains.
  std::vector<int> digit(static_cast<size_t>(n), 0);
  std::vector<double> prefix(static_cast<size_t>(n) + 1, 1.0);
  for (int t = 0; t < n; ++t) prefix[static_cast<size_t>(t) + 1] = prefix[static_cast<size_t>(t)] * p[0];
  std::uint64_t m_rem = m;
  double q_rem = 1.0, comp = 0.0;  // Kahan-compensated remaining mass
  while (true) {
    double q = prefix[static_cast<size_t>(n)];
    bool last = true;
    for (int t = 0; t < n && last; ++t) last = digit[static_cast<size_t>(t)] == na - 1;
    if (m_rem == 0) break;
    std::uint64_t cnt;
    if (last) {
      cnt = m_rem;
    } else {
      double pc = q_rem > 0.0 ? std::min(1.0, std::max(0.0, q / q_rem)) : 1.0;
      cnt = binomial_draw(gen, m_rem, pc);
    }
    if (cnt > 0) {
      std::uint64_t key = 0;
      for (int t = 0; t < n; ++t)
        key |= static_cast<std::uint64_t>(digit[static_cast<size_t>(t)]) << (bps * t);
      out.seqs.push_back(key);
      m_rem -= cnt;
    }
    double y = -q - comp;  // q_rem -= q with compensation
    double s = q_rem + y;
    comp = (s - q_rem) - y;
    q_rem = s;
    int t = n - 1;
    while (t >= 0 && digit[static_cast<size_t>(t)] == na - 1) digit[static_cast<size_t>(t--)] = 0;
    if (t < 0) break;
    ++digit[static_cast<size_t>(t)];
    for (int s2 = t; s2 < n; ++s2)
      prefix[static_cast<size_t>(s2) + 1] =
          prefix[static_cast<size_t>(s2)] * p[digit[static_cast<size_t>(s2)]];
  }
  // Lexicographic digit order is descending in packed keys' low bits; sort.
  std::sort(out.seqs.begin(), out.seqs.end());
  return out;
}

// Word array with per-word epoch stamps: set/test without clearing between
// uses.
class StampedBits {
 public:
  explicit StampedBits(std::uint64_t nbits)
      : words_((nbits + 63) / 64, 0), stamp_((nbits + 63) / 64, 0), epoch_(0) {}
  void next_epoch() { ++epoch_; }
  bool set(std::uint64_t i) {  // returns true when newly set
    std::uint64_t w = i >> 6;
    if (stamp_[w] != epoch_) {
      stamp_[w] = epoch_;
      words_[w] = 0;
    }
    std::uint64_t bit = 1ull << (i & 63);
    if (words_[w] & bit) return false;
    words_[w] |= bit;
    return true;
  }

 private:
  std::vector<std::uint64_t> words_;
  std::vector<std::uint32_t> stamp_;
  std::uint64_t epoch_;
};

}  // namespace detail

struct ExponentEstimate {
  double exponent = 0.0;       // (1/n) log2(mean distinct count)
  double stddev = 0.0;         // sample stddev of per-trial exponents
  double mean_count = 0.0;
  std::vector<double> per_trial_counts;
};

// Count distinct componentwise h-combinations of two random codebooks,
// averaged over trials. Codebook draws use per-(trial, codebook) seed
// streams, so growing a rate extends codebooks by a prefix property and the
// count is monotone in each rate (in the direct-draw regime).
inline ExponentEstimate empirical_exponent(const MacExperiment& exp) {
  validate_mac(exp.mac);
  if (exp.n < 1 || exp.n > 63) throw usage_error("satlab: n out of range");
  if (exp.trials < 1) throw usage_error("satlab: needs at least one trial");
  if (exp.mac.nb1 != exp.p1.size() || exp.mac.nb2 != exp.p2.size())
    throw validation_error("satlab: pmf size does not match the mac alphabet");

  int bps = std::max(1, static_cast<int>(std::bit_width(static_cast<unsigned>(exp.mac.nb - 1))));
  if (bps * exp.n > 63)
    throw resource_error("satlab: packed output sequences exceed 63 bits; reduce n");
  std::uint64_t m1 = detail::codebook_size(exp.R1, exp.n);
  std::uint64_t m2 = detail::codebook_size(exp.R2, exp.n);

  bool adder = exp.mac.nb == exp.mac.nb1 + exp.mac.nb2 - 1;
  for (int i = 0; i < exp.mac.nb1 && adder; ++i)
    for (int j = 0; j < exp.mac.nb2 && adder; ++j) adder = exp.mac.at(i, j) == i + j;

  // Output combinations per position for the full-support closed form.
  std::vector<char> attained(static_cast<size_t>(exp.mac.nb), 0);
  for (int i = 0; i < exp.mac.nb1; ++i)
    for (int j = 0; j < exp.mac.nb2; ++j) attained[static_cast<size_t>(exp.mac.at(i, j))] = 1;
  int kout = 0;
  for (char c : attained) kout += c;

  std::uint64_t bitspace = 1ull << (bps * exp.n);
  std::unique_ptr<detail::StampedBits> bits;
  if (bps * exp.n <= 28) bits = std::make_unique<detail::StampedBits>(bitspace);

  std::vector<double> counts(static_cast<size_t>(exp.trials), 0.0);
  for (int trial = 0; trial < exp.trials; ++trial) {
    std::uint64_t tseed = split_seed(exp.seed, static_cast<std::uint64_t>(trial));
    std::mt19937_64 g1(split_seed(tseed, 0));
    std::mt19937_64 g2(split_seed(tseed, 1));
    auto s1 = detail::sample_support(exp.p1, exp.n, m1, bps, g1, exp);
    auto s2 = detail::sample_support(exp.p2, exp.n, m2, bps, g2, exp);

    if (s1.full && s2.full) {
      counts[static_cast<size_t>(trial)] = std::pow(static_cast<double>(kout), exp.n);
      continue;
    }
    std::uint64_t pairs = static_cast<std::uint64_t>(s1.seqs.size()) * s2.seqs.size();
    if (pairs > exp.pair_budget)
      throw resource_error("satlab: " + std::to_string(pairs) +
                           " codeword pairs exceed the combine budget");

    std::uint64_t distinct = 0;
    if (bits) {
      bits->next_epoch();
      if (adder) {
        for (std::uint64_t u : s1.seqs)
          for (std::uint64_t v : s2.seqs)
            if (bits->set(u + v)) ++distinct;
      } else {
        std::uint64_t mask = (1ull << bps) - 1;
        for (std::uint64_t u : s1.seqs)
          for (std::uint64_t v : s2.seqs) {
            std::uint64_t key = 0;
            for (int t = 0; t < exp.n; ++t) {
              int a = static_cast<int>((u >> (bps * t)) & mask);
              int b = static_cast<int>((v >> (bps * t)) & mask);
              key |= static_cast<std::uint64_t>(exp.mac.at(a, b)) << (bps * t);
            }
            if (bits->set(key)) ++distinct;
          }
      }
    } else {
      if (pairs > (1ull << 25))
        throw resource_error("satlab: output space too large for the bitset and too many "
                             "pairs to sort; reduce n or the rates");
      std::vector<std::uint64_t> keys;
      keys.reserve(pairs);
      std::uint64_t mask = (1ull << bps) - 1;
      for (std::uint64_t u : s1.seqs)
        for (std::uint64_t v : s2.seqs) {
          if (adder) {
            keys.push_back(u + v);
          } else {
            std::uint64_t key = 0;
            for (int t = 0; t < exp.n; ++t) {
              int a = static_cast<int>((u >> (bps * t)) & mask);
              int b = static_cast<int>((v >> (bps * t)) & mask);
              key |= static_cast<std::uint64_t>(exp.mac.at(a, b)) << (bps * t);
            }
            keys.push_back(key);
          }
        }
      std::sort(keys.begin(), keys.end());
      distinct = static_cast<std::uint64_t>(
          std::unique(keys.begin(), keys.end()) - keys.begin());
    }
    counts[static_cast<size_t>(trial)] = static_cast<double>(distinct);
  }

  ExponentEstimate est;
  est.per_trial_counts = counts;
  double mean = 0.0;
  for (double c : counts) mean += c;
  mean /= static_cast<double>(exp.trials);
  est.mean_count = mean;
  est.exponent = std::log2(mean) / exp.n;
  if (exp.trials > 1) {
    std::vector<double> es;
    double emean = 0.0;
    for (double c : counts) {
      es.push_back(std::log2(c) / exp.n);
      emean += es.back();
    }
    emean /= static_cast<double>(exp.trials);
    double var = 0.0;
    for (double e : es) var += (e - emean) * (e - emean);
    est.stddev = std::sqrt(var / static_cast<double>(exp.trials - 1));
  }
  return est;
}

struct ExponentRow {
  double r1, r2, predicted, empirical, stddev;
};

// One experiment per grid cell over {0, step, ..., rmax}^2; identical seed
// across cells keeps codebooks nested as rates grow.
inline std::vector<ExponentRow> sweep_exponent_map(MacExperiment base, double step, double rmax) {
  if (step <= 0.0 || rmax < 0.0) throw usage_error("satlab sweep: bad grid");
  std::vector<ExponentRow> rows;
  int nsteps = static_cast<int>(std::llround(rmax / step));
  for (int i = 0; i <= nsteps; ++i)
    for (int j = 0; j <= nsteps; ++j) {
      MacExperiment e = base;
      e.R1 = step * i;
      e.R2 = step * j;
      auto est = empirical_exponent(e);
      rows.push_back({e.R1, e.R2, predicted_exponent(e), est.exponent, est.stddev});
    }
  return rows;
}

}  // namespace dic
