#pragma once

#include <map>

#include "dic/channel.hpp"

namespace dic {

// Handle to one network signal: a sender input X_l, a loss-map output X_lk,
// a combined interference S_k, or a channel output Y_k.
struct VarRef {
  enum Kind { input, loss, comb, out } kind;
  int l = 0;  // sender for input/loss
  int k = 0;  // receiver for loss/comb/out

  static VarRef X(int l) { return {input, l, 0}; }
  static VarRef Xlk(int l, int k) { return {loss, l, k}; }
  static VarRef S(int k) { return {comb, 0, k}; }
  static VarRef Y(int k) { return {out, 0, k}; }
};

// Exact joint distribution over all network signals induced by a product
// input: the at most |X1||X2||X3| positive-probability cells, each carrying
// its deterministic signal values.
class SignalDistribution {
 public:
  struct Cell {
    double p;
    std::array<int, 3> x;
    NetworkSignals sig;
  };

  SignalDistribution(const ChannelSpec& spec, ProductInput input)
      : spec_(&spec), input_(std::move(input)) {
    for (int l = 0; l < 3; ++l)
      if (input_.pmf[l].size() != spec.nx[l])
        throw validation_error("input pmf " + std::to_string(l + 1) +
                               " does not match the sender alphabet");
    for (int x1 = 0; x1 < spec.nx[0]; ++x1) {
      double p1 = input_.pmf[0][x1];
      if (p1 <= 0.0) continue;
      for (int x2 = 0; x2 < spec.nx[1]; ++x2) {
        double p12 = p1 * input_.pmf[1][x2];
        if (p12 <= 0.0) continue;
        for (int x3 = 0; x3 < spec.nx[2]; ++x3) {
          double p = p12 * input_.pmf[2][x3];
          if (p <= 0.0) continue;
          cells_.push_back({p, {x1, x2, x3}, evaluate(spec, x1, x2, x3)});
        }
      }
    }
  }

  const ChannelSpec& spec() const { return *spec_; }
  const ProductInput& input() const { return input_; }
  const std::vector<Cell>& cells() const { return cells_; }

  int value_of(const Cell& c, const VarRef& v) const {
    switch (v.kind) {
      case VarRef::input: return c.x[v.l];
      case VarRef::loss: return c.sig.xlk[v.l][v.k];
      case VarRef::comb: return c.sig.s[v.k];
      default: return c.sig.y[v.k];
    }
  }

  // Joint entropy of a signal subset in bits; empty subset has entropy 0.
  double entropy_of(const std::vector<VarRef>& vars) const {
    if (vars.empty()) return 0.0;
    std::map<std::vector<int>, double> acc;
    std::vector<int> key(vars.size());
    for (const Cell& c : cells_) {
      for (size_t i = 0; i < vars.size(); ++i) key[i] = value_of(c, vars[i]);
      acc[key] += c.p;
    }
    double hsum = 0.0;
    for (auto& [k, p] : acc)
      if (p > 0.0) hsum -= p * std::log2(p);
    return hsum;
  }

  double conditional_entropy(std::vector<VarRef> vars, const std::vector<VarRef>& given) const {
    double hg = entropy_of(given);
    vars.insert(vars.end(), given.begin(), given.end());
    return entropy_of(vars) - hg;
  }

  Pmf marginal(const VarRef& v) const {
    int n = 0;
    switch (v.kind) {
      case VarRef::input: n = spec_->nx[v.l]; break;
      case VarRef::loss: n = spec_->nloss[v.l][v.k]; break;
      case VarRef::comb: n = spec_->ns[v.k]; break;
      default: n = spec_->ny[v.k]; break;
    }
    std::vector<double> p(static_cast<size_t>(n), 0.0);
    for (const Cell& c : cells_) p[static_cast<size_t>(value_of(c, v))] += c.p;
    return Pmf(std::move(p));
  }

  // The seven entropy quantities of one receiver's rate constraints.
  struct ReceiverTerms {
    double hx_direct;   // H(X_kk)
    double hx_a;        // H(X_ak), a = k+1
    double hx_b;        // H(X_bk), b = k+2
    double hs;          // H(S_k)
    double hy;          // H(Y_k)
    double hy_given_a;  // H(Y_k | X_ak)
    double hy_given_b;  // H(Y_k | X_bk)
  };

  ReceiverTerms receiver_terms(int k) const {
    int a = cross_a(k), b = cross_b(k);
    ReceiverTerms t;
    t.hx_direct = entropy_of({VarRef::Xlk(k, k)});
    t.hx_a = entropy_of({VarRef::Xlk(a, k)});
    t.hx_b = entropy_of({VarRef::Xlk(b, k)});
    t.hs = entropy_of({VarRef::S(k)});
    t.hy = entropy_of({VarRef::Y(k)});
    t.hy_given_a = conditional_entropy({VarRef::Y(k)}, {VarRef::Xlk(a, k)});
    t.hy_given_b = conditional_entropy({VarRef::Y(k)}, {VarRef::Xlk(b, k)});
    return t;
  }

 private:
  const ChannelSpec* spec_;
  ProductInput input_;
  std::vector<Cell> cells_;
};

inline SignalDistribution push_forward(const ChannelSpec& spec, const ProductInput& input) {
  return SignalDistribution(spec, input);
}

}  // namespace dic
