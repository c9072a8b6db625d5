#pragma once

#include <thread>

#include "dic/hull.hpp"
#include "dic/noisy.hpp"

namespace dic {

enum class Scheme { id, tin, strong, id_noisy, tin_noisy, twodic_id };

inline const char* scheme_name(Scheme s) {
  switch (s) {
    case Scheme::id: return "id";
    case Scheme::tin: return "tin";
    case Scheme::strong: return "strong";
    case Scheme::id_noisy: return "id-noisy";
    case Scheme::tin_noisy: return "tin-noisy";
    default: return "2dic-id";
  }
}

inline Scheme parse_scheme(const std::string& s) {
  for (Scheme v : {Scheme::id, Scheme::tin, Scheme::strong, Scheme::id_noisy, Scheme::tin_noisy,
                   Scheme::twodic_id})
    if (s == scheme_name(v)) return v;
  throw usage_error("unknown scheme: " + s);
}

struct SweepConfig {
  Scheme scheme = Scheme::id;
  int step_den = 6;      // grid step 1/M per sender simplex
  int rounds = 2;        // local refinement rounds
  int topk = 5;          // corners refined per round
  long long cap = 1000000;  // max pmf combinations evaluated
  Rate weights{1.0, 1.0, 1.0};
};

using PmfCombo = std::array<GridPmf, 3>;

struct CornerRecord {
  Rate r;
  std::uint32_t combo = 0;  // index into AggregateRegion::combos
};

// Union of per-pmf regions over a sweep, kept as the Pareto-maximal corners
// (the union of downward-closed regions is exactly the downward closure of
// these) plus the time-sharing hull across pmfs.
struct AggregateRegion {
  Scheme scheme = Scheme::id;
  std::vector<PmfCombo> combos;       // every evaluated pmf combination
  std::vector<CornerRecord> corners;  // lex sorted; maximal within their own pmf's region
  RateRegion hull;                    // downward-closed convex hull, minimal corners
  WeightedMax best;                   // over raw corners at the sweep weights
  std::size_t evaluated = 0;

  ProductInput input_at(std::uint32_t combo) const {
    const PmfCombo& c = combos[combo];
    return ProductInput{{c[0].to_pmf(), c[1].to_pmf(), c[2].to_pmf()}};
  }
};

namespace detail {

struct ComboKey {
  std::array<std::vector<int>, 3> k;
  bool operator<(const ComboKey& o) const { return k < o.k; }
};

inline ComboKey combo_key(const PmfCombo& c) {
  ComboKey key;
  for (int l = 0; l < 3; ++l) {
    GridPmf g = c[static_cast<size_t>(l)].normalized();
    key.k[static_cast<size_t>(l)].push_back(g.den);
    for (int v : g.num) key.k[static_cast<size_t>(l)].push_back(v);
  }
  return key;
}

struct SchemeRunner {
  const ChannelSpec* core;
  const std::array<ObservationChannel, 3>* obs;
  Scheme scheme;

  RateRegion operator()(const ProductInput& in) const {
    switch (scheme) {
      case Scheme::id: return id_region_at(*core, in);
      case Scheme::tin: return tin_region_at(*core, in);
      case Scheme::strong: return strong_capacity_at(*core, in, true);  // prechecked
      case Scheme::id_noisy: return id_region_noisy_at(*core, *obs, in);
      case Scheme::tin_noisy: return tin_region_noisy_at(*core, *obs, in);
      default: return two_user_id_region_at(*core, in);
    }
  }
};

}  // namespace detail

// Grid sweep with cumulative top-K corner refinement. Deterministic: combos
// are evaluated in lexicographic order, corners keep the lowest-index
// provenance, and all tie-breaks are lexicographic.
inline AggregateRegion sweep(const ChannelSpec& core, const std::array<ObservationChannel, 3>* obs,
                             const SweepConfig& cfg) {
  bool needs_obs = cfg.scheme == Scheme::id_noisy || cfg.scheme == Scheme::tin_noisy;
  if (needs_obs && obs == nullptr)
    throw usage_error("scheme " + std::string(scheme_name(cfg.scheme)) +
                      " needs observation channels");
  if (cfg.scheme == Scheme::twodic_id && core.nx[2] != 1)
    throw usage_error("scheme 2dic-id needs a singleton third sender");
  if (cfg.scheme == Scheme::strong) {
    if (check_strong_interference(core).verdict == Verdict::failed)
      throw validation_error("strong-interference condition failed for this channel");
    if (check_invertible_h(core).verdict == Verdict::failed)
      throw validation_error("invertible-combining condition failed for this channel");
  }
  if (cfg.step_den < 1 || cfg.rounds < 0 || cfg.topk < 1) throw usage_error("sweep: bad config");
  detail::SchemeRunner run{&core, obs, cfg.scheme};

  AggregateRegion agg;
  agg.scheme = cfg.scheme;
  std::set<detail::ComboKey> seen;
  std::map<std::array<long long, 3>, CornerRecord> corner_map;

  // Evaluate a batch of pmf combinations (already deduplicated), collecting
  // the Pareto-maximal corners of each region.
  auto evaluate = [&](const std::vector<PmfCombo>& batch) {
    if (static_cast<long long>(agg.evaluated + batch.size()) > cfg.cap)
      throw resource_error("sweep: " + std::to_string(agg.evaluated + batch.size()) +
                           " pmf combinations exceed the cap of " + std::to_string(cfg.cap));
    std::uint32_t base_idx = static_cast<std::uint32_t>(agg.combos.size());
    agg.combos.insert(agg.combos.end(), batch.begin(), batch.end());
    agg.evaluated += batch.size();

    std::vector<std::vector<Rate>> maximal(batch.size());
    auto work = [&](size_t lo, size_t hi) {
      for (size_t i = lo; i < hi; ++i) {
        ProductInput in{{batch[i][0].to_pmf(), batch[i][1].to_pmf(), batch[i][2].to_pmf()}};
        maximal[i] = detail::pareto_maximal(run(in).corners);
      }
    };
    size_t threads = std::min<size_t>(parallel_width(), batch.size());
    if (threads <= 1) {
      work(0, batch.size());
    } else {
      std::vector<std::thread> pool;
      size_t chunk = (batch.size() + threads - 1) / threads;
      for (size_t t = 0; t < threads; ++t) {
        size_t lo = t * chunk, hi = std::min(batch.size(), lo + chunk);
        if (lo < hi) pool.emplace_back(work, lo, hi);
      }
      for (auto& th : pool) th.join();
    }
    for (size_t i = 0; i < batch.size(); ++i)
      for (const Rate& r : maximal[i])
        corner_map.try_emplace(rate_key(r),
                               CornerRecord{r, base_idx + static_cast<std::uint32_t>(i)});
  };

  // Base grid: Cartesian product of per-sender simplex grids.
  {
    std::array<std::vector<GridPmf>, 3> grids;
    double total = 1.0;
    for (int l = 0; l < 3; ++l) {
      grids[static_cast<size_t>(l)] = simplex_grid(core.nx[l], cfg.step_den);
      total *= static_cast<double>(grids[static_cast<size_t>(l)].size());
    }
    if (total > static_cast<double>(cfg.cap))
      throw resource_error("sweep: base grid needs " + fmt_fixed(total, 0) +
                           " pmf combinations, cap is " + std::to_string(cfg.cap));
    std::vector<PmfCombo> batch;
    batch.reserve(static_cast<size_t>(total));
    for (const GridPmf& g1 : grids[0])
      for (const GridPmf& g2 : grids[1])
        for (const GridPmf& g3 : grids[2]) {
          PmfCombo c{g1, g2, g3};
          if (seen.insert(detail::combo_key(c)).second) batch.push_back(std::move(c));
        }
    evaluate(batch);
  }

  // Refinement rounds: halve the step around the current top-K corners'
  // provenance pmfs, radius one parent step.
  auto topk_records = [&]() {
    std::vector<CornerRecord> top;
    for (const auto& [key, rec] : corner_map) {
      (void)key;
      top.push_back(rec);
    }
    std::sort(top.begin(), top.end(), [&](const CornerRecord& x, const CornerRecord& y) {
      double wx = dot(cfg.weights, x.r), wy = dot(cfg.weights, y.r);
      if (std::abs(wx - wy) > 1e-12) return wx > wy;
      if (rate_key(x.r) != rate_key(y.r)) return lex_less(x.r, y.r);
      return x.combo < y.combo;
    });
    if (top.size() > static_cast<size_t>(cfg.topk)) top.resize(static_cast<size_t>(cfg.topk));
    return top;
  };

  int parent_den = cfg.step_den;
  for (int round = 1; round <= cfg.rounds; ++round) {
    int fine_den = parent_den * 2;
    double radius = 1.0 / parent_den;
    std::vector<PmfCombo> batch;
    for (const CornerRecord& rec : topk_records()) {
      const PmfCombo& parent = agg.combos[rec.combo];
      std::array<std::vector<GridPmf>, 3> nb;
      for (int l = 0; l < 3; ++l)
        nb[static_cast<size_t>(l)] =
            refine_around_grid(parent[static_cast<size_t>(l)].to_pmf(), radius, fine_den);
      for (const GridPmf& g1 : nb[0])
        for (const GridPmf& g2 : nb[1])
          for (const GridPmf& g3 : nb[2]) {
            PmfCombo c{g1, g2, g3};
            if (seen.insert(detail::combo_key(c)).second) batch.push_back(std::move(c));
          }
    }
    evaluate(batch);
    parent_den = fine_den;
  }

  agg.corners.reserve(corner_map.size());
  for (const auto& [key, rec] : corner_map) {
    (void)key;
    agg.corners.push_back(rec);
  }
  std::sort(agg.corners.begin(), agg.corners.end(),
            [](const CornerRecord& x, const CornerRecord& y) { return lex_less(x.r, y.r); });

  std::vector<Rate> pts;
  pts.reserve(agg.corners.size());
  for (const auto& rec : agg.corners) pts.push_back(rec.r);
  agg.hull.form = RateRegion::Form::hull;
  agg.hull.corners = dc_hull_corners(pts);

  agg.best.bounded = true;
  bool first = true;
  for (const auto& rec : agg.corners) {
    double v = dot(cfg.weights, rec.r);
    if (first || v > agg.best.value + 1e-12 ||
        (std::abs(v - agg.best.value) <= 1e-12 && lex_less(rec.r, agg.best.argmax))) {
      agg.best.value = v;
      agg.best.argmax = rec.r;
      first = false;
    }
  }
  return agg;
}

struct CompareResult {
  bool a_in_b = true, b_in_a = true;
  std::vector<Rate> witnesses_a_not_b, witnesses_b_not_a;
};

// Bidirectional inclusion between aggregates: raw corners of one side (all
// of them, plus N random mixtures scaled into the union) probed against the
// other side's time-sharing hull.
inline CompareResult compare(const AggregateRegion& a, const AggregateRegion& b, int n_samples = 0,
                             std::uint64_t seed = 0, double tol = 1e-9, size_t witness_cap = 16) {
  CompareResult res;
  auto probe = [&](const AggregateRegion& from, const RateRegion& into, bool& ok,
                   std::vector<Rate>& wit, std::uint64_t stream) {
    auto check = [&](const Rate& r) {
      if (!into.contains(r, tol)) {
        ok = false;
        if (wit.size() < witness_cap) wit.push_back(r);
      }
    };
    for (const auto& rec : from.corners) check(rec.r);
    if (n_samples > 0 && !from.corners.empty()) {
      std::mt19937_64 gen(split_seed(seed, stream));
      for (int s = 0; s < n_samples; ++s) {
        const Rate& c = from.corners[gen() % from.corners.size()].r;
        double shrink = uniform01(gen);
        check({shrink * c[0], shrink * c[1], shrink * c[2]});  // inside by closure
      }
    }
  };
  probe(a, b.hull, res.a_in_b, res.witnesses_a_not_b, 1);
  probe(b, a.hull, res.b_in_a, res.witnesses_b_not_a, 2);
  return res;
}

}  // namespace dic
