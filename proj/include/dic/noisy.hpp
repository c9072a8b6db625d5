#pragma once

#include <map>

#include "dic/region.hpp"

namespace dic {

// Memoryless observation channel Y_k -> Z_k: identity, a row-stochastic
// matrix over a finite output set, or additive Gaussian noise acting on the
// real embedding of the output alphabet.
struct ObservationChannel {
  enum class Kind { identity, discrete, gaussian };
  Kind kind = Kind::identity;
  std::vector<std::vector<double>> matrix;  // P(z | y), one row per y
  double sigma2 = 0.0;

  static ObservationChannel identity() { return {}; }
  static ObservationChannel discrete(std::vector<std::vector<double>> m) {
    ObservationChannel o;
    o.kind = Kind::discrete;
    o.matrix = std::move(m);
    return o;
  }
  static ObservationChannel gaussian(double s2) {
    ObservationChannel o;
    o.kind = Kind::gaussian;
    o.sigma2 = s2;
    return o;
  }

  void validate(int ny) const {
    if (kind == Kind::discrete) {
      if (matrix.size() != static_cast<size_t>(ny))
        throw validation_error("observation matrix: needs one row per output symbol");
      size_t nz = matrix.empty() ? 0 : matrix[0].size();
      if (nz == 0) throw validation_error("observation matrix: empty rows");
      for (const auto& row : matrix) {
        if (row.size() != nz) throw validation_error("observation matrix: ragged rows");
        double sum = 0.0;
        for (double v : row) {
          if (v < -1e-12) throw validation_error("observation matrix: negative entry");
          sum += v;
        }
        if (std::abs(sum - 1.0) > 1e-9)
          throw validation_error("observation matrix: row does not sum to 1");
      }
    } else if (kind == Kind::gaussian) {
      if (!(sigma2 > 0.0)) throw validation_error("gaussian observation: sigma^2 must be > 0");
    }
  }
};

// Real-gain network Y_k = sum_l g_lk X_l with finite real input alphabets;
// induces a deterministic core whose symbol sets are the attained values,
// merged at 1e-12, plus a Gaussian observation of variance sigma2.
struct GaussianNetSpec {
  std::string name = "gaussian-net";
  std::array<std::vector<double>, 3> alphabet;  // per-sender real values
  double g[3][3] = {};                          // g[l][k]: sender l to receiver k
  double sigma2 = 0.1;

  ChannelSpec to_channel() const;
  std::array<ObservationChannel, 3> observations() const {
    return {ObservationChannel::gaussian(sigma2), ObservationChannel::gaussian(sigma2),
            ObservationChannel::gaussian(sigma2)};
  }
};

namespace detail {

// Index of v in vals, treating values within 1e-12 as the same symbol.
inline int value_index(std::vector<double>& vals, double v) {
  for (size_t i = 0; i < vals.size(); ++i)
    if (std::abs(vals[i] - v) <= 1e-12) return static_cast<int>(i);
  vals.push_back(v);
  return static_cast<int>(vals.size()) - 1;
}

}  // namespace detail

inline ChannelSpec GaussianNetSpec::to_channel() const {
  ChannelSpec s;
  s.name = name;
  for (int l = 0; l < 3; ++l) {
    if (alphabet[l].empty()) throw validation_error("gaussian net: empty input alphabet");
    s.nx[l] = static_cast<int>(alphabet[l].size());
  }
  std::array<std::array<std::vector<double>, 3>, 3> lossval;
  for (int l = 0; l < 3; ++l)
    for (int k = 0; k < 3; ++k) {
      std::vector<double> vals;
      std::vector<int> table;
      for (double x : alphabet[l]) table.push_back(detail::value_index(vals, g[l][k] * x));
      s.g[l][k] = std::move(table);
      s.nloss[l][k] = static_cast<int>(vals.size());
      lossval[l][k] = std::move(vals);
    }
  for (int k = 0; k < 3; ++k) {
    int a = cross_a(k), b = cross_b(k);
    std::vector<double> sval;
    for (int ia = 0; ia < s.nloss[a][k]; ++ia)
      for (int ib = 0; ib < s.nloss[b][k]; ++ib)
        s.h[k].push_back(detail::value_index(sval, lossval[a][k][static_cast<size_t>(ia)] +
                                                       lossval[b][k][static_cast<size_t>(ib)]));
    s.ns[k] = static_cast<int>(sval.size());
    std::vector<double> yv;
    for (int ix = 0; ix < s.nloss[k][k]; ++ix)
      for (int is = 0; is < s.ns[k]; ++is)
        s.f[k].push_back(detail::value_index(
            yv, lossval[k][k][static_cast<size_t>(ix)] + sval[static_cast<size_t>(is)]));
    s.ny[k] = static_cast<int>(yv.size());
    s.yval[k] = std::move(yv);
  }
  return s;
}

namespace detail {

// Adaptive Simpson integration; the unresolved-error budget is tracked so a
// failure to reach the requested accuracy is reported rather than absorbed.
template <class F>
double adaptive_simpson_rec(const F& f, double a, double b, double fa, double fm, double fb,
                            double whole, double tol, int depth, double& bad) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  double err = left + right - whole;
  if (std::abs(err) <= 15.0 * tol) return left + right + err / 15.0;
  if (depth <= 0) {
    bad += std::abs(err) / 15.0;
    return left + right + err / 15.0;
  }
  return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, bad) +
         adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1, bad);
}

template <class F>
double adaptive_simpson(const F& f, double a, double b, double tol, double& bad) {
  double m = 0.5 * (a + b);
  double fa = f(a), fm = f(m), fb = f(b);
  double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, tol, 48, bad);
}

struct MixtureKey {
  long long s2;
  std::vector<std::pair<long long, long long>> comp;
  bool operator<(const MixtureKey& o) const {
    if (s2 != o.s2) return s2 < o.s2;
    return comp < o.comp;
  }
};

}  // namespace detail

inline constexpr double quadrature_tol = 1e-6;

// Differential entropy (bits) of sum_i w_i N(mu_i, sigma2), by adaptive
// quadrature over [min mu - 10 sigma, max mu + 10 sigma] to 1e-6 bits.
// Entropy is translation invariant, so results are cached on the shifted
// component list.
inline double gaussian_mixture_entropy_bits(std::vector<double> means, std::vector<double> weights,
                                            double sigma2) {
  if (!(sigma2 > 0.0)) throw usage_error("mixture entropy: sigma^2 must be > 0");
  if (means.size() != weights.size() || means.empty())
    throw usage_error("mixture entropy: component mismatch");
  // Merge coincident means, drop zero weights, normalize.
  std::vector<std::pair<double, double>> comp;
  double wsum = 0.0;
  for (size_t i = 0; i < means.size(); ++i) {
    if (weights[i] <= 0.0) continue;
    wsum += weights[i];
    bool merged = false;
    for (auto& c : comp)
      if (std::abs(c.first - means[i]) <= 1e-12) {
        c.second += weights[i];
        merged = true;
        break;
      }
    if (!merged) comp.emplace_back(means[i], weights[i]);
  }
  if (comp.empty() || std::abs(wsum - 1.0) > 1e-9)
    throw usage_error("mixture entropy: weights must sum to 1");
  for (auto& c : comp) c.second /= wsum;
  std::sort(comp.begin(), comp.end());
  double shift = comp.front().first;

  detail::MixtureKey key;
  key.s2 = static_cast<long long>(std::llround(sigma2 * 1e12));
  for (auto& c : comp)
    key.comp.emplace_back(static_cast<long long>(std::llround((c.first - shift) * 1e12)),
                          static_cast<long long>(std::llround(c.second * 1e12)));
  thread_local std::map<detail::MixtureKey, double> cache;
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  double sigma = std::sqrt(sigma2);
  double norm = 1.0 / (sigma * std::sqrt(2.0 * 3.14159265358979323846));
  auto density = [&](double z) {
    double q = 0.0;
    for (auto& c : comp) {
      double t = (z - c.first) / sigma;
      q += c.second * norm * std::exp(-0.5 * t * t);
    }
    return q;
  };
  auto integrand = [&](double z) {
    double q = density(z);
    return q > 0.0 ? -q * std::log2(q) : 0.0;
  };
  double lo = comp.front().first - 10.0 * sigma;
  double hi = comp.back().first + 10.0 * sigma;
  // Segment at component means so narrow modes cannot hide from the first
  // coarse Simpson estimate.
  std::vector<double> cuts{lo};
  for (auto& c : comp)
    if (c.first > cuts.back() + 1e-9 && c.first < hi - 1e-9) cuts.push_back(c.first);
  cuts.push_back(hi);
  double total = 0.0, bad = 0.0;
  double per = quadrature_tol / (2.0 * static_cast<double>(cuts.size()));
  for (size_t i = 0; i + 1 < cuts.size(); ++i)
    total += detail::adaptive_simpson(integrand, cuts[i], cuts[i + 1], per, bad);
  if (bad > quadrature_tol)
    throw accuracy_error("mixture entropy quadrature: achieved " + fmt_fixed(bad, 9) +
                         " > 1e-6 bits");
  cache.emplace(std::move(key), total);
  return total;
}

// One receiver's rate bounds under a noisy observation: four mutual
// informations plus the discrete saturation constants.
struct NoisyTerms {
  double i_direct;  // I(X_k; Z_k | S_k)
  double i_with_a;  // I(X_k, X_ak; Z_k | X_bk)
  double i_with_b;  // I(X_k, X_bk; Z_k | X_ak)
  double i_all;     // I(X_k, S_k; Z_k)
  double hx_a, hx_b, hs;
};

// Evaluates observation-side quantities on top of an exact core
// distribution. Every subtracted conditional entropy h(Z|A,B) in the four
// mutual informations has (A,B) determining Y, so it equals h(Z|Y): the
// noise entropy (Gaussian) or the matrix-row entropy average (discrete).
class NoisyEvaluator {
 public:
  NoisyEvaluator(const ChannelSpec& spec, std::array<ObservationChannel, 3> obs, ProductInput input)
      : d_(spec, std::move(input)), obs_(std::move(obs)) {
    for (int k = 0; k < 3; ++k) {
      ObservationChannel& o = obs_[static_cast<size_t>(k)];
      o.validate(spec.ny[k]);
      // Vanishing noise is below quadrature resolution; the channel is
      // noiseless for every purpose here.
      if (o.kind == ObservationChannel::Kind::gaussian && o.sigma2 <= 1e-12)
        o = ObservationChannel::identity();
      if (o.kind == ObservationChannel::Kind::gaussian && spec.yval[k].empty())
        throw validation_error("gaussian observation needs a real embedding of Y_" +
                               std::to_string(k + 1));
    }
  }

  const SignalDistribution& dist() const { return d_; }

  // h(Z_k | B) for B a core variable; VarRef{} sentinel (pass nullptr) means
  // unconditional h(Z_k).
  double out_entropy_given(int k, const VarRef* given) const {
    const ObservationChannel& o = obs_[static_cast<size_t>(k)];
    // p(b) and p(y | b), keyed by the conditioning value.
    std::map<int, double> pb;
    std::map<int, std::map<int, double>> py;
    for (const auto& c : d_.cells()) {
      int b = given ? d_.value_of(c, *given) : 0;
      pb[b] += c.p;
      py[b][c.sig.y[k]] += c.p;
    }
    double total = 0.0;
    for (auto& [b, w] : pb) {
      auto& rows = py[b];
      if (o.kind == ObservationChannel::Kind::gaussian) {
        std::vector<double> means, weights;
        for (auto& [y, p] : rows) {
          means.push_back(d_.spec().yval[k][static_cast<size_t>(y)]);
          weights.push_back(p / w);
        }
        total += w * gaussian_mixture_entropy_bits(means, weights, o.sigma2);
      } else if (o.kind == ObservationChannel::Kind::discrete) {
        size_t nz = o.matrix[0].size();
        std::vector<double> qz(nz, 0.0);
        for (auto& [y, p] : rows)
          for (size_t z = 0; z < nz; ++z) qz[z] += (p / w) * o.matrix[static_cast<size_t>(y)][z];
        total += w * entropy_bits(qz);
      } else {
        std::vector<double> qy;
        for (auto& [y, p] : rows) qy.push_back(p / w);
        total += w * entropy_bits(qy);
      }
    }
    return total;
  }

  // h(Z_k | Y_k): 0 for identity, average row entropy for discrete, the
  // noise entropy (1/2) log2(2 pi e sigma^2) for Gaussian.
  double out_entropy_given_y(int k) const {
    const ObservationChannel& o = obs_[static_cast<size_t>(k)];
    if (o.kind == ObservationChannel::Kind::identity) return 0.0;
    if (o.kind == ObservationChannel::Kind::gaussian)
      return 0.5 * std::log2(2.0 * 3.14159265358979323846 * 2.718281828459045235 * o.sigma2);
    Pmf ymarg = d_.marginal(VarRef::Y(k));
    double total = 0.0;
    for (size_t y = 0; y < ymarg.size(); ++y)
      if (ymarg[y] > 0.0) total += ymarg[y] * entropy_bits(o.matrix[y]);
    return total;
  }

  NoisyTerms terms(int k) const {
    int a = cross_a(k), b = cross_b(k);
    double hzy = out_entropy_given_y(k);
    NoisyTerms t;
    VarRef s = VarRef::S(k), xa = VarRef::Xlk(a, k), xb = VarRef::Xlk(b, k);
    t.i_direct = out_entropy_given(k, &s) - hzy;
    t.i_with_a = out_entropy_given(k, &xb) - hzy;
    t.i_with_b = out_entropy_given(k, &xa) - hzy;
    t.i_all = out_entropy_given(k, nullptr) - hzy;
    t.hx_a = d_.entropy_of({xa});
    t.hx_b = d_.entropy_of({xb});
    t.hs = d_.entropy_of({s});
    return t;
  }

  // I(X_k; Z_k) = h(Z_k) - h(Z_k | X_kk); X_kk determines the direct signal.
  double tin_rate(int k) const {
    VarRef x = VarRef::Xlk(k, k);
    return out_entropy_given(k, nullptr) - out_entropy_given(k, &x);
  }

  // H(S_k | X_k, Z_k) = H(S_k) - [h(Z_k|X_kk) - h(Z_k|Y_k)]: the rate lost
  // relative to treating interference as noise when decoding it instead.
  double penalty(int k) const {
    VarRef x = VarRef::Xlk(k, k), s = VarRef::S(k);
    double val = d_.entropy_of({s}) - (out_entropy_given(k, &x) - out_entropy_given_y(k));
    return std::max(0.0, val);
  }

 private:
  SignalDistribution d_;
  std::array<ObservationChannel, 3> obs_;
};

inline std::array<NoisyTerms, 3> mutual_info_terms(const ChannelSpec& spec,
                                                   const std::array<ObservationChannel, 3>& obs,
                                                   const ProductInput& input) {
  NoisyEvaluator ev(spec, obs, input);
  std::array<NoisyTerms, 3> out;
  for (int k = 0; k < 3; ++k) out[static_cast<size_t>(k)] = ev.terms(k);
  return out;
}

inline double penalty_term(const ChannelSpec& spec, const std::array<ObservationChannel, 3>& obs,
                           const ProductInput& input, int k) {
  if (k < 0 || k > 2) throw usage_error("penalty_term: receiver index out of range");
  return NoisyEvaluator(spec, obs, input).penalty(k);
}

// Same constraint machinery as the exact engine with mutual-information
// right-hand sides; the saturation constants inside the mins stay the
// discrete cross-signal entropies.
inline RateRegion id_region_noisy_at(const ChannelSpec& spec,
                                     const std::array<ObservationChannel, 3>& obs,
                                     const ProductInput& input, bool materialize_pieces = false) {
  auto terms = mutual_info_terms(spec, obs, input);
  std::array<ReceiverBounds, 3> t;
  for (int k = 0; k < 3; ++k) {
    const NoisyTerms& n = terms[static_cast<size_t>(k)];
    t[static_cast<size_t>(k)] = {n.i_direct, n.i_with_a, n.i_with_b, n.i_all,
                                 n.hx_a,     n.hx_b,     n.hs};
  }
  return region_from_constraints(interference_decoding_constraints(t), materialize_pieces);
}

inline RateRegion tin_region_noisy_at(const ChannelSpec& spec,
                                      const std::array<ObservationChannel, 3>& obs,
                                      const ProductInput& input) {
  NoisyEvaluator ev(spec, obs, input);
  std::vector<MinConstraint> cons;
  for (int k = 0; k < 3; ++k)
    cons.push_back({k, {{{0, 0, 0}, 0.0}}, std::max(0.0, ev.tin_rate(k))});
  return region_from_constraints(std::move(cons));
}

// The worked real-gain example: BPSK inputs, direct gain 1.8, cyclic cross
// gains 1.0 and 1.1, noise power 0.1.
inline GaussianNetSpec builtin_gaussian_bpsk() {
  GaussianNetSpec net;
  net.name = "gaussian-bpsk";
  for (int l = 0; l < 3; ++l) net.alphabet[l] = {1.0, -1.0};
  for (int l = 0; l < 3; ++l)
    for (int k = 0; k < 3; ++k) {
      int d = (k - l + 3) % 3;
      net.g[l][k] = d == 0 ? 1.8 : (d == 1 ? 1.1 : 1.0);
    }
  net.sigma2 = 0.1;
  return net;
}

}  // namespace dic
