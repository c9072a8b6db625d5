#pragma once

#include <set>

#include "dic/checks.hpp"
#include "dic/lp.hpp"

namespace dic {

// One alternative inside a min expression: value(r) = coeff . r + cst.
struct MinAlternative {
  Rate coeff{0.0, 0.0, 0.0};
  double cst = 0.0;
  double value(const Rate& r) const { return dot(coeff, r) + cst; }
};

// Encodes "R_base + min{alt_1, ..., alt_m} <= rhs". All coefficients and
// constants are nonnegative, which keeps every expanded piece downward
// closed.
struct MinConstraint {
  int base = 0;
  std::vector<MinAlternative> alts;
  double rhs = 0.0;

  double min_value(const Rate& r) const {
    double m = alts.front().value(r);
    for (size_t i = 1; i < alts.size(); ++i) m = std::min(m, alts[i].value(r));
    return m;
  }
  bool satisfied(const Rate& r, double tol = feas_tol) const {
    return r[static_cast<size_t>(base)] + min_value(r) <= rhs + tol;
  }
};

struct HalfSpace {
  Rate a{0.0, 0.0, 0.0};
  double b = 0.0;
};

// Conjunction of closed half-spaces within r >= 0; convex, downward closed
// whenever all normals are nonnegative (always the case here).
struct RegionPiece {
  std::vector<HalfSpace> hs;
};

// A rate region, either as min-constraints (finite union of polyhedra) or as
// the downward-closed convex hull of a corner set. For hull form, `corners`
// holds a minimal generating set: the region is the union of downward
// closures over its convex hull.
struct RateRegion {
  enum class Form { constraints, hull };
  Form form = Form::constraints;
  std::vector<MinConstraint> cons;
  std::vector<RegionPiece> pieces;  // expanded union for constraints form
  std::vector<Rate> corners;        // deduplicated, lexicographically sorted
  bool downward_closed = true;

  bool contains(const Rate& r, double tol = feas_tol) const;
};

// Membership in the downward-closed convex hull of `pts`: feasibility of
// {lambda >= 0, sum lambda = 1, sum lambda pts - slack = r, slack >= 0}.
// On failure *sep (if given) receives a nonnegative direction w with
// w.r > max_i w.pts_i.
inline bool in_dc_hull(const std::vector<Rate>& pts, const Rate& r, double tol = feas_tol,
                       Rate* sep = nullptr) {
  std::vector<std::vector<double>> cols;
  cols.reserve(pts.size() + 3);
  for (const Rate& p : pts) cols.push_back({p[0], p[1], p[2], 1.0});
  for (int i = 0; i < 3; ++i) {
    std::vector<double> s(4, 0.0);
    s[static_cast<size_t>(i)] = -1.0;
    cols.push_back(std::move(s));
  }
  auto res = lp_feasible(std::move(cols), {r[0], r[1], r[2], 1.0}, tol);
  if (!res.feasible && sep) {
    (*sep)[0] = std::max(0.0, res.y[0]);
    (*sep)[1] = std::max(0.0, res.y[1]);
    (*sep)[2] = std::max(0.0, res.y[2]);
  }
  return res.feasible;
}

inline bool RateRegion::contains(const Rate& r, double tol) const {
  for (int i = 0; i < 3; ++i)
    if (r[static_cast<size_t>(i)] < -tol) return false;
  if (form == Form::hull) return in_dc_hull(corners, r, tol);
  for (const MinConstraint& c : cons)
    if (!c.satisfied(r, tol)) return false;
  return true;
}

namespace detail {

// Drop alternatives dominated coefficientwise and in constant by another;
// such alternatives can never uniquely achieve the min over r >= 0.
inline void prune_alternatives(MinConstraint& c) {
  std::vector<MinAlternative> kept;
  for (size_t i = 0; i < c.alts.size(); ++i) {
    bool dominated = false;
    for (size_t j = 0; j < c.alts.size() && !dominated; ++j) {
      if (i == j) continue;
      const auto &ai = c.alts[i], &aj = c.alts[j];
      bool leq = aj.cst <= ai.cst + 1e-15;
      for (int t = 0; t < 3; ++t) leq = leq && aj.coeff[t] <= ai.coeff[t] + 1e-15;
      if (!leq) continue;
      bool equal = std::abs(aj.cst - ai.cst) <= 1e-15;
      for (int t = 0; t < 3; ++t) equal = equal && std::abs(aj.coeff[t] - ai.coeff[t]) <= 1e-15;
      // Of two identical alternatives keep the earlier one.
      dominated = equal ? (j < i) : true;
    }
    if (!dominated) kept.push_back(c.alts[i]);
  }
  c.alts = std::move(kept);
}

struct PlaneKey {
  std::array<long long, 4> k;
  bool operator<(const PlaneKey& o) const { return k < o.k; }
};

inline PlaneKey plane_key(const Rate& a, double b) {
  return PlaneKey{{static_cast<long long>(std::llround(a[0] * 1e9)),
                   static_cast<long long>(std::llround(a[1] * 1e9)),
                   static_cast<long long>(std::llround(a[2] * 1e9)),
                   static_cast<long long>(std::llround(b * 1e9))}};
}

// Solve the 3x3 system rows.r = rhs; false when near-singular.
inline bool solve3(const std::array<Rate, 3>& rows, const std::array<double, 3>& rhs, Rate& out) {
  const Rate &r0 = rows[0], &r1 = rows[1], &r2 = rows[2];
  double det = r0[0] * (r1[1] * r2[2] - r1[2] * r2[1]) - r0[1] * (r1[0] * r2[2] - r1[2] * r2[0]) +
               r0[2] * (r1[0] * r2[1] - r1[1] * r2[0]);
  if (std::abs(det) < 1e-9) return false;
  auto det3 = [](const Rate& a, const Rate& b, const Rate& c) {
    return a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) +
           a[2] * (b[0] * c[1] - b[1] * c[0]);
  };
  Rate c0{rhs[0], r0[1], r0[2]}, c1{rhs[1], r1[1], r1[2]}, c2{rhs[2], r2[1], r2[2]};
  out[0] = det3(c0, c1, c2) / det;
  Rate d0{r0[0], rhs[0], r0[2]}, d1{r1[0], rhs[1], r1[2]}, d2{r2[0], rhs[2], r2[2]};
  out[1] = det3(d0, d1, d2) / det;
  Rate e0{r0[0], r0[1], rhs[0]}, e1{r1[0], r1[1], rhs[1]}, e2{r2[0], r2[1], rhs[2]};
  out[2] = det3(e0, e1, e2) / det;
  return true;
}

}  // namespace detail

// Expand the min-constraints into their union of polyhedra: one piece per
// choice of alternative, dropping pieces with a negative bound (empty within
// r >= 0 since all normals are nonnegative) and exact duplicates.
inline std::vector<RegionPiece> expand_pieces(const std::vector<MinConstraint>& cons) {
  std::vector<RegionPiece> out;
  std::set<std::vector<detail::PlaneKey>> seen;
  std::vector<size_t> choice(cons.size(), 0);
  while (true) {
    RegionPiece piece;
    bool empty = false;
    for (size_t c = 0; c < cons.size(); ++c) {
      const auto& alt = cons[c].alts[choice[c]];
      HalfSpace hs;
      hs.a = alt.coeff;
      hs.a[static_cast<size_t>(cons[c].base)] += 1.0;
      hs.b = cons[c].rhs - alt.cst;
      if (hs.b < -feas_tol) {
        empty = true;
        break;
      }
      piece.hs.push_back(hs);
    }
    if (!empty) {
      std::vector<detail::PlaneKey> key;
      for (auto& hs : piece.hs) key.push_back(detail::plane_key(hs.a, hs.b));
      std::sort(key.begin(), key.end());
      key.erase(std::unique(key.begin(), key.end(),
                            [](const detail::PlaneKey& x, const detail::PlaneKey& y) {
                              return !(x < y) && !(y < x);
                            }),
                key.end());
      if (seen.insert(key).second) out.push_back(std::move(piece));
    }
    size_t c = 0;
    while (c < cons.size() && ++choice[c] == cons[c].alts.size()) choice[c++] = 0;
    if (c == cons.size()) break;
  }
  return out;
}

// Corner points: every feasible intersection of three planes drawn from the
// constraint alternatives and the coordinate planes, deduplicated at 1e-9
// and sorted lexicographically.
inline std::vector<Rate> enumerate_corners(const std::vector<MinConstraint>& cons) {
  std::vector<std::pair<Rate, double>> planes;
  std::set<detail::PlaneKey> seen;
  auto add_plane = [&](Rate a, double b) {
    if (b < -feas_tol) return;  // unreachable within r >= 0
    auto key = detail::plane_key(a, b);
    if (seen.insert(key).second) planes.emplace_back(a, b);
  };
  for (const MinConstraint& c : cons)
    for (const MinAlternative& alt : c.alts) {
      Rate a = alt.coeff;
      a[static_cast<size_t>(c.base)] += 1.0;
      add_plane(a, c.rhs - alt.cst);
    }
  for (int i = 0; i < 3; ++i) {
    Rate a{0.0, 0.0, 0.0};
    a[static_cast<size_t>(i)] = 1.0;
    add_plane(a, 0.0);
  }

  std::vector<Rate> corners;
  std::set<std::array<long long, 3>> ckeys;
  const size_t n = planes.size();
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      for (size_t k = j + 1; k < n; ++k) {
        Rate r;
        if (!detail::solve3({planes[i].first, planes[j].first, planes[k].first},
                            {planes[i].second, planes[j].second, planes[k].second}, r))
          continue;
        bool ok = r[0] >= -feas_tol && r[1] >= -feas_tol && r[2] >= -feas_tol;
        for (size_t c = 0; c < cons.size() && ok; ++c) ok = cons[c].satisfied(r, feas_tol);
        if (!ok) continue;
        for (int t = 0; t < 3; ++t)
          if (std::abs(r[static_cast<size_t>(t)]) <= feas_tol) r[static_cast<size_t>(t)] = 0.0;
        if (ckeys.insert(rate_key(r)).second) corners.push_back(r);
      }
  std::sort(corners.begin(), corners.end(), lex_less);
  return corners;
}

inline RateRegion region_from_constraints(std::vector<MinConstraint> cons,
                                          bool materialize_pieces = true) {
  for (auto& c : cons) detail::prune_alternatives(c);
  RateRegion reg;
  reg.form = RateRegion::Form::constraints;
  reg.cons = std::move(cons);
  reg.corners = enumerate_corners(reg.cons);
  if (materialize_pieces) reg.pieces = expand_pieces(reg.cons);
  return reg;
}

// Per-receiver bounds feeding the four rate constraints; identical shape for
// the exact-entropy and the noisy-observation variants (only the right-hand
// sides change; the saturation constants stay the cross-signal entropies).
struct ReceiverBounds {
  double r_direct;  // rhs of R_k <= .
  double r_with_a;  // rhs of R_k + min{R_a, hx_a} <= .   (a = k+1)
  double r_with_b;  // rhs of R_k + min{R_b, hx_b} <= .   (b = k+2)
  double r_all;     // rhs of R_k + min{R_a+R_b, R_a+hx_b, hx_a+R_b, hs} <= .
  double hx_a, hx_b, hs;
};

inline std::vector<MinConstraint> interference_decoding_constraints(
    const std::array<ReceiverBounds, 3>& t) {
  std::vector<MinConstraint> cons;
  auto e = [](int i) {
    Rate r{0.0, 0.0, 0.0};
    r[static_cast<size_t>(i)] = 1.0;
    return r;
  };
  for (int k = 0; k < 3; ++k) {
    int a = cross_a(k), b = cross_b(k);
    const ReceiverBounds& tk = t[static_cast<size_t>(k)];
    cons.push_back({k, {{{0, 0, 0}, 0.0}}, tk.r_direct});
    cons.push_back({k, {{e(a), 0.0}, {{0, 0, 0}, tk.hx_a}}, tk.r_with_a});
    cons.push_back({k, {{e(b), 0.0}, {{0, 0, 0}, tk.hx_b}}, tk.r_with_b});
    Rate eab = e(a);
    eab[static_cast<size_t>(b)] = 1.0;
    cons.push_back({k,
                    {{eab, 0.0}, {e(a), tk.hx_b}, {e(b), tk.hx_a}, {{0, 0, 0}, tk.hs}},
                    tk.r_all});
  }
  return cons;
}

inline std::array<ReceiverBounds, 3> exact_bounds(const SignalDistribution& d) {
  std::array<ReceiverBounds, 3> t;
  for (int k = 0; k < 3; ++k) {
    auto rt = d.receiver_terms(k);
    // The constraint pairing R_a with the min conditions on the other cross
    // signal X_bk, and vice versa.
    t[static_cast<size_t>(k)] = {rt.hx_direct, rt.hy_given_b, rt.hy_given_a, rt.hy,
                                 rt.hx_a,      rt.hx_b,       rt.hs};
  }
  return t;
}

// Region achieved by jointly decoding the intended message and the combined
// interference at each receiver, at one product input pmf.
inline RateRegion id_region_at(const ChannelSpec& spec, const ProductInput& input,
                               bool materialize_pieces = false) {
  SignalDistribution d(spec, input);
  return region_from_constraints(interference_decoding_constraints(exact_bounds(d)),
                                 materialize_pieces);
}

// Region achieved by treating interference as noise: an axis-aligned box
// with R_k <= H(Y_k) - H(S_k) (= I(X_k; Y_k) since the network is
// deterministic and inputs are independent of the interference).
inline RateRegion tin_region_at(const ChannelSpec& spec, const ProductInput& input) {
  SignalDistribution d(spec, input);
  std::vector<MinConstraint> cons;
  for (int k = 0; k < 3; ++k) {
    auto rt = d.receiver_terms(k);
    cons.push_back({k, {{{0, 0, 0}, 0.0}}, rt.hy - rt.hs});
  }
  return region_from_constraints(std::move(cons));
}

// Capacity-shaped region valid under strong interference with invertible
// combining: per-rate, pairwise and sum bounds. Refuses (without override)
// when the structural/sampled checks fail.
inline RateRegion strong_capacity_at(const ChannelSpec& spec, const ProductInput& input,
                                     bool override_failed_checks = false) {
  if (!override_failed_checks) {
    if (check_strong_interference(spec).verdict == Verdict::failed)
      throw validation_error("strong-interference condition failed; pass override to force");
    if (check_invertible_h(spec).verdict == Verdict::failed)
      throw validation_error("invertible-combining condition failed; pass override to force");
  }
  SignalDistribution d(spec, input);
  std::array<SignalDistribution::ReceiverTerms, 3> rt;
  for (int k = 0; k < 3; ++k) rt[static_cast<size_t>(k)] = d.receiver_terms(k);

  std::vector<MinConstraint> cons;
  auto e = [](int i) {
    Rate r{0.0, 0.0, 0.0};
    r[static_cast<size_t>(i)] = 1.0;
    return r;
  };
  for (int k = 0; k < 3; ++k)
    cons.push_back({k, {{{0, 0, 0}, 0.0}}, rt[static_cast<size_t>(k)].hx_direct});
  // H(Y_i | X_mi) for the cross sender m not in the pair {i, j}.
  auto hy_cond = [&rt](int i, int m) {
    return m == cross_a(i) ? rt[static_cast<size_t>(i)].hy_given_a
                           : rt[static_cast<size_t>(i)].hy_given_b;
  };
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      int m = 3 - i - j;
      cons.push_back({i, {{e(j), 0.0}}, std::min(hy_cond(i, m), hy_cond(j, m))});
    }
  double hy_min = std::min({rt[0].hy, rt[1].hy, rt[2].hy});
  Rate e12 = e(1);
  e12[2] = 1.0;
  cons.push_back({0, {{e12, 0.0}}, hy_min});
  return region_from_constraints(std::move(cons));
}

// Two-sender specialization: the third sender must be silent (singleton
// alphabet). Constraints follow the two-user reduction directly; the corner
// machinery is shared, so vertex sets are comparable with the general
// engine's output on the embedded network.
inline RateRegion two_user_id_region_at(const ChannelSpec& spec, const ProductInput& input) {
  if (spec.nx[2] != 1)
    throw usage_error("two_user_id_region_at: requires a singleton third sender");
  SignalDistribution d(spec, input);
  double hx11 = d.entropy_of({VarRef::Xlk(0, 0)});
  double hx22 = d.entropy_of({VarRef::Xlk(1, 1)});
  double hs1 = d.entropy_of({VarRef::S(0)});
  double hs2 = d.entropy_of({VarRef::S(1)});
  double hy1 = d.entropy_of({VarRef::Y(0)});
  double hy2 = d.entropy_of({VarRef::Y(1)});

  std::vector<MinConstraint> cons;
  cons.push_back({0, {{{0, 0, 0}, 0.0}}, hx11});
  cons.push_back({1, {{{0, 0, 0}, 0.0}}, hx22});
  cons.push_back({0, {{{{0.0, 1.0, 0.0}}, 0.0}, {{0, 0, 0}, hs1}}, hy1});
  cons.push_back({1, {{{{1.0, 0.0, 0.0}}, 0.0}, {{0, 0, 0}, hs2}}, hy2});
  cons.push_back({2, {{{0, 0, 0}, 0.0}}, 0.0});
  return region_from_constraints(std::move(cons));
}

struct WeightedMax {
  bool bounded = true;
  double value = 0.0;
  Rate argmax{0.0, 0.0, 0.0};
};

inline const std::vector<Rate>& corner_points(const RateRegion& reg) { return reg.corners; }

// Maximum of w . r over the region; attained at a corner since the objective
// is linear over a finite union of polytopes. Ties break to the
// lexicographically smallest corner.
inline WeightedMax max_weighted_sum(const RateRegion& reg, const Rate& w) {
  WeightedMax res;
  if (reg.form == RateRegion::Form::constraints) {
    for (int i = 0; i < 3; ++i) {
      if (w[static_cast<size_t>(i)] <= 0.0) continue;
      bool bounded = false;
      for (const MinConstraint& c : reg.cons) {
        if (c.base == i) bounded = true;
        bool all = !c.alts.empty();
        for (const MinAlternative& alt : c.alts) all = all && alt.coeff[static_cast<size_t>(i)] > 0.0;
        bounded = bounded || all;
      }
      if (!bounded) {
        res.bounded = false;
        return res;
      }
    }
  }
  bool first = true;
  for (const Rate& r : reg.corners) {
    double v = dot(w, r);
    if (first || v > res.value + 1e-12 ||
        (std::abs(v - res.value) <= 1e-12 && lex_less(r, res.argmax))) {
      res.value = v;
      res.argmax = r;
      first = false;
    }
  }
  return res;
}

}  // namespace dic
