#pragma once

#include "dic/region.hpp"

namespace dic {

namespace detail {

// Keep only Pareto-maximal points. Valid here because every region is
// downward closed: a dominated point can never generate anything its
// dominator does not already cover. Sweep over descending R1 with a 2D
// staircase of the (R2, R3) front keeps this O(m log m).
inline std::vector<Rate> pareto_maximal(std::vector<Rate> pts) {
  std::sort(pts.begin(), pts.end(), [](const Rate& a, const Rate& b) {
    return a > b;  // descending lexicographic
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const Rate& a, const Rate& b) { return rate_key(a) == rate_key(b); }),
            pts.end());
  std::vector<Rate> kept;
  std::map<double, double> front;  // R2 -> R3 of the current maximal front
  for (const Rate& p : pts) {
    auto it = front.lower_bound(p[1]);  // smallest front R2 >= p's R2
    if (it != front.end() && it->second >= p[2]) continue;  // dominated
    kept.push_back(p);
    while (it != front.begin()) {
      auto prev = std::prev(it);
      if (prev->second > p[2]) break;
      it = front.erase(prev);
    }
    front[p[1]] = p[2];
  }
  std::sort(kept.begin(), kept.end(), lex_less);
  return kept;
}

inline size_t argmax_dir(const std::vector<Rate>& pts, const Rate& w) {
  size_t best = 0;
  double bv = dot(w, pts[0]);
  for (size_t i = 1; i < pts.size(); ++i) {
    double v = dot(w, pts[i]);
    if (v > bv + 1e-12 || (std::abs(v - bv) <= 1e-12 && lex_less(pts[i], pts[best]))) {
      bv = v;
      best = i;
    }
  }
  return best;
}

}  // namespace detail

// Minimal generating set of the downward-closed convex hull of `pts`:
// Pareto-maximal points that are extreme in the hull of the maximal set.
// Found by Clarkson's scheme: grow a candidate basis from directional
// argmaxes, adding the argmax along each separating direction the membership
// test returns.
inline std::vector<Rate> dc_hull_corners(std::vector<Rate> pts) {
  if (pts.empty()) return {};
  std::sort(pts.begin(), pts.end(), lex_less);
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const Rate& a, const Rate& b) { return rate_key(a) == rate_key(b); }),
            pts.end());
  pts = detail::pareto_maximal(std::move(pts));
  std::sort(pts.begin(), pts.end(), lex_less);
  if (pts.size() <= 2) return pts;

  std::vector<Rate> basis;
  std::set<std::array<long long, 3>> in_basis;
  auto add = [&](size_t idx) {
    auto key = rate_key(pts[idx]);
    if (in_basis.insert(key).second) {
      basis.push_back(pts[idx]);
      return true;
    }
    return false;
  };
  for (const Rate w : {Rate{1, 0, 0}, Rate{0, 1, 0}, Rate{0, 0, 1}, Rate{1, 1, 1}})
    add(detail::argmax_dir(pts, w));

  std::vector<Rate> out;
  for (const Rate& p : pts) {
    Rate sep{0, 0, 0};
    size_t guard = 0;
    while (!in_dc_hull(basis, p, 1e-9, &sep)) {
      double norm = sep[0] + sep[1] + sep[2];
      bool progressed = norm > 1e-12 && add(detail::argmax_dir(pts, sep));
      if (!progressed || ++guard > pts.size() + 8) {
        // Stalled separation: keep p itself; extra basis points are pruned
        // by the extremeness pass below.
        if (in_basis.insert(rate_key(p)).second) basis.push_back(p);
        break;
      }
    }
  }
  // The basis may contain interior points picked up along the way; keep only
  // points extreme relative to the others.
  for (const Rate& p : basis) {
    std::vector<Rate> rest;
    for (const Rate& q : basis)
      if (rate_key(q) != rate_key(p)) rest.push_back(q);
    if (rest.empty() || !in_dc_hull(rest, p, 1e-9)) out.push_back(p);
  }
  std::sort(out.begin(), out.end(), lex_less);
  return out;
}

// Downward-closed convex hull of a union of corner sets, as a hull-form
// region whose corner list is the minimal generating set.
inline RateRegion hull_union(const std::vector<std::vector<Rate>>& corner_sets) {
  std::vector<Rate> all;
  for (const auto& cs : corner_sets) all.insert(all.end(), cs.begin(), cs.end());
  RateRegion reg;
  reg.form = RateRegion::Form::hull;
  reg.corners = dc_hull_corners(std::move(all));
  return reg;
}

struct InclusionResult {
  bool included = true;
  std::vector<Rate> witnesses;  // points of A outside B
};

// Test A subseteq B by probing B with A's corners plus n_samples random
// points of A (corner mixtures scaled toward the interior); exact when both
// regions are downward closed and convex (corners suffice), a randomized
// check otherwise.
inline InclusionResult inclusion_check(const RateRegion& a, const RateRegion& b,
                                       int n_samples = 256, std::uint64_t seed = 0,
                                       double tol = 1e-9, size_t witness_cap = 8) {
  InclusionResult res;
  auto check = [&](const Rate& p) {
    if (!a.contains(p, tol)) return;  // mixtures can exit a nonconvex A
    if (!b.contains(p, tol)) {
      res.included = false;
      if (res.witnesses.size() < witness_cap) res.witnesses.push_back(p);
    }
  };
  const std::vector<Rate>& c = a.corners;
  for (const Rate& r : c) check(r);
  if (c.empty()) return res;
  std::mt19937_64 gen(split_seed(seed, 0x1c1));
  for (int s = 0; s < n_samples; ++s) {
    const Rate& x = c[gen() % c.size()];
    const Rate& y = c[gen() % c.size()];
    double m = uniform01(gen), shrink = std::pow(uniform01(gen), 0.25);
    Rate p;
    for (int i = 0; i < 3; ++i) p[i] = shrink * (m * x[i] + (1.0 - m) * y[i]);
    check(p);
  }
  return res;
}

struct SlicePoint {
  double u, v;
  bool inside;
};

struct SliceResult {
  Rate origin{}, d1{}, d2{};         // sampled plane {origin + u d1 + v d2}
  std::vector<SlicePoint> grid;      // row-major scan, v outer, u inner
  std::vector<std::array<double, 2>> boundary;  // 2d hull of inside points

  Rate lift(const std::array<double, 2>& uv) const {
    Rate r;
    for (int i = 0; i < 3; ++i) r[i] = origin[i] + uv[0] * d1[i] + uv[1] * d2[i];
    return r;
  }
};

// Sample region membership on the plane {origin + u d1 + v d2} over
// [0,umax]x[0,vmax] and trace the planar hull of the inside samples.
inline SliceResult slice(const RateRegion& reg, const Rate& origin, const Rate& d1,
                         const Rate& d2, double umax, double vmax, int steps) {
  SliceResult out;
  out.origin = origin;
  out.d1 = d1;
  out.d2 = d2;
  std::vector<std::array<double, 2>> inside;
  for (int iv = 0; iv <= steps; ++iv)
    for (int iu = 0; iu <= steps; ++iu) {
      double u = umax * iu / steps, v = vmax * iv / steps;
      Rate p{origin[0] + u * d1[0] + v * d2[0], origin[1] + u * d1[1] + v * d2[1],
             origin[2] + u * d1[2] + v * d2[2]};
      bool in = reg.contains(p);
      out.grid.push_back({u, v, in});
      if (in) inside.push_back({u, v});
    }
  // Andrew monotone chain.
  std::sort(inside.begin(), inside.end());
  inside.erase(std::unique(inside.begin(), inside.end()), inside.end());
  if (inside.size() < 3) {
    out.boundary = inside;
    return out;
  }
  auto cross = [](const std::array<double, 2>& o, const std::array<double, 2>& a,
                  const std::array<double, 2>& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
  };
  std::vector<std::array<double, 2>> h(2 * inside.size());
  size_t k = 0;
  for (const auto& p : inside) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], p) <= 1e-15) --k;
    h[k++] = p;
  }
  size_t lower = k + 1;
  for (auto it = inside.rbegin() + 1; it != inside.rend(); ++it) {
    while (k >= lower && cross(h[k - 2], h[k - 1], *it) <= 1e-15) --k;
    h[k++] = *it;
  }
  h.resize(k - 1);
  out.boundary = std::move(h);
  return out;
}

}  // namespace dic
