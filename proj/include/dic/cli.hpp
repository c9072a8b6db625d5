#pragma once

#include <cctype>
#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "dic/specfile.hpp"
#include "dic/svg.hpp"
#include "dic/sweep.hpp"

namespace dic {
namespace cliapp {

// Exit codes: 0 ok, 1 validation/assertion failure, 2 usage error,
// 3 resource guard.
inline constexpr int exit_ok = 0;
inline constexpr int exit_validation = 1;
inline constexpr int exit_usage = 2;
inline constexpr int exit_resource = 3;

inline int parse_unit_fraction(const std::string& s) {
  size_t slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      int den = std::stoi(s);
      if (den < 1) throw usage_error("step must be a unit fraction 1/M, got " + s);
      return den;
    }
    int num = std::stoi(s.substr(0, slash));
    int den = std::stoi(s.substr(slash + 1));
    if (num != 1 || den < 1) throw usage_error("step must be a unit fraction 1/M, got " + s);
    return den;
  } catch (const usage_error&) {
    throw;
  } catch (const std::exception&) {
    throw usage_error("cannot parse fraction: " + s);
  }
}

inline double parse_number(const std::string& s) {
  size_t slash = s.find('/');
  try {
    if (slash == std::string::npos) return std::stod(s);
    return std::stod(s.substr(0, slash)) / std::stod(s.substr(slash + 1));
  } catch (const std::exception&) {
    throw usage_error("cannot parse number: " + s);
  }
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

// Pmf argument: "uniform", or per-sender value lists separated by ';' with
// entries like 1/2 or 0.25. One list is replicated to all three senders.
inline ProductInput parse_pmf_arg(const std::string& arg, const ChannelSpec& spec) {
  ProductInput in{{Pmf::uniform(spec.nx[0]), Pmf::uniform(spec.nx[1]), Pmf::uniform(spec.nx[2])}};
  if (arg.empty() || arg == "uniform") return in;
  std::vector<std::string> groups = split(arg, ';');
  if (groups.size() == 1) groups = {groups[0], groups[0], groups[0]};
  if (groups.size() != 3)
    throw usage_error("pmf: expected 1 or 3 ';'-separated lists, got " +
                      std::to_string(groups.size()));
  for (int l = 0; l < 3; ++l) {
    std::vector<std::string> vals = split(groups[static_cast<size_t>(l)], ',');
    if (static_cast<int>(vals.size()) != spec.nx[l])
      throw usage_error("pmf for sender " + std::to_string(l + 1) + ": expected " +
                        std::to_string(spec.nx[l]) + " entries");
    std::vector<double> p;
    for (const std::string& v : vals) p.push_back(parse_number(v));
    in.pmf[static_cast<size_t>(l)] = Pmf(std::move(p));  // validates
  }
  return in;
}

inline Rate parse_rate_arg(const std::string& arg, const char* what) {
  std::vector<std::string> vals = split(arg, ',');
  if (vals.size() != 3) throw usage_error(std::string(what) + ": expected three comma-separated values");
  return {parse_number(vals[0]), parse_number(vals[1]), parse_number(vals[2])};
}

// summary.txt: fixed field order, key=value lines, echoed to stdout.
struct Summary {
  std::vector<std::pair<std::string, std::string>> fields;

  void add(const std::string& key, const std::string& value) { fields.emplace_back(key, value); }
  void add(const std::string& key, double v, int digits = 9) { add(key, fmt_fixed(v, digits)); }
  void add(const std::string& key, long long v) { add(key, std::to_string(v)); }
  void add_rate(const std::string& key, const Rate& r, int digits = 9) {
    add(key, fmt_fixed(r[0], digits) + "," + fmt_fixed(r[1], digits) + "," +
                 fmt_fixed(r[2], digits));
  }

  void write(const std::string& path) const {
    auto out = detail::open_out(path);
    for (const auto& [k, v] : fields) out << k << "=" << v << "\n";
  }
  void print() const {
    for (const auto& [k, v] : fields) std::cout << k << "=" << v << "\n";
  }
};

inline std::string out_path(const std::string& dir, const std::string& file) {
  std::filesystem::create_directories(dir);
  return (std::filesystem::path(dir) / file).string();
}

struct Plane {
  Rate origin{0, 0, 0}, d1{}, d2{};
  std::string xlabel, ylabel;
};

inline Plane plane_by_name(const std::string& name) {
  double s = 1.0 / std::sqrt(2.0);
  if (name == "r2-45")
    return {{0, 0, 0}, {s, 0, s}, {0, 1, 0}, "distance along the R1=R3 diagonal", "R2 (bits)"};
  if (name == "r1-r2") return {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, "R1 (bits)", "R2 (bits)"};
  throw usage_error("unknown plane (use r2-45 or r1-r2): " + name);
}

inline SliceResult slice_region(const RateRegion& reg, const Plane& pl, int res) {
  double umax = 0.1, vmax = 0.1;
  double n1 = dot(pl.d1, pl.d1), n2 = dot(pl.d2, pl.d2);
  for (const Rate& c : reg.corners) {
    umax = std::max(umax, dot(c, pl.d1) / n1);
    vmax = std::max(vmax, dot(c, pl.d2) / n2);
  }
  return slice(reg, pl.origin, pl.d1, pl.d2, 1.05 * umax, 1.05 * vmax, res);
}

// Region construction shared by the region/slice commands.
inline RateRegion build_region(const LoadedSpec& ls, Scheme scheme, const ProductInput& in,
                               bool pieces) {
  switch (scheme) {
    case Scheme::id: return id_region_at(ls.core, in, pieces);
    case Scheme::tin: return tin_region_at(ls.core, in);
    case Scheme::strong: return strong_capacity_at(ls.core, in);
    case Scheme::id_noisy: return id_region_noisy_at(ls.core, ls.obs, in, pieces);
    case Scheme::tin_noisy: return tin_region_noisy_at(ls.core, ls.obs, in);
    default: return two_user_id_region_at(ls.core, in);
  }
}

inline AggregateRegion run_sweep(const LoadedSpec& ls, const SweepConfig& cfg) {
  bool noisy = cfg.scheme == Scheme::id_noisy || cfg.scheme == Scheme::tin_noisy;
  return sweep(ls.core, noisy ? &ls.obs : nullptr, cfg);
}

inline void export_aggregate(const AggregateRegion& agg, const std::string& dir,
                             const std::string& prefix) {
  std::vector<Rate> pts;
  pts.reserve(agg.corners.size());
  for (const CornerRecord& rec : agg.corners) pts.push_back(rec.r);
  write_corners_csv(out_path(dir, prefix + "corners.csv"), pts);
  write_corners_csv(out_path(dir, prefix + "hull.csv"), agg.hull.corners);
  write_provenance_csv(out_path(dir, prefix + "provenance.csv"), agg);
}

// Corners within `band` of the best weighted sum, thinned to representatives
// at pairwise L-infinity distance >= sep; deterministic greedy in lex order.
inline std::vector<Rate> near_max_representatives(const AggregateRegion& agg, const Rate& w,
                                                  double band, double sep) {
  std::vector<Rate> reps;
  for (const CornerRecord& rec : agg.corners) {
    if (dot(w, rec.r) < agg.best.value - band) continue;
    bool far = true;
    for (const Rate& q : reps)
      if (linf_dist(rec.r, q) < sep) {
        far = false;
        break;
      }
    if (far) reps.push_back(rec.r);
  }
  return reps;
}

// ---- subcommand bodies ----

struct CommonOpts {
  std::string spec, pmf = "uniform", out = "out", scheme = "id";
  std::uint64_t seed = 0;
};

inline int cmd_validate(const std::string& specArg, int nsamples, std::uint64_t seed) {
  LoadedSpec ls = resolve_spec(specArg);
  ValidationReport rep = full_report(ls.core, nsamples, seed);
  std::cout << "spec: " << ls.core.name << "\n";
  for (const ValidationCheck& c : rep.checks)
    std::cout << "  check " << c.name << ": " << (c.pass ? "pass" : "FAIL")
              << (c.detail.empty() ? "" : "  (" + c.detail + ")") << "\n";
  for (const ConditionReport& c : rep.conditions) {
    std::cout << "  condition " << c.name << ": " << verdict_name(c.verdict)
              << (c.detail.empty() ? "" : "  (" + c.detail + ")") << "\n";
  }
  bool ok = rep.pass();
  std::cout << (ok ? "valid" : "invalid") << "\n";
  return ok ? exit_ok : exit_validation;
}

inline int cmd_dist(const std::string& specArg, const std::string& pmfArg,
                    const std::string& outFile) {
  LoadedSpec ls = resolve_spec(specArg);
  ProductInput in = parse_pmf_arg(pmfArg, ls.core);
  SignalDistribution d(ls.core, in);
  std::cout << "spec: " << ls.core.name << "  cells: " << d.cells().size() << "\n";
  std::cout << "receiver  H(Xkk)   H(Xak)   H(Xbk)   H(Sk)    H(Yk)    H(Yk|Xak) H(Yk|Xbk)\n";
  for (int k = 0; k < 3; ++k) {
    auto t = d.receiver_terms(k);
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%5d     %8.6f %8.6f %8.6f %8.6f %8.6f %8.6f  %8.6f\n", k + 1,
                  t.hx_direct, t.hx_a, t.hx_b, t.hs, t.hy, t.hy_given_a, t.hy_given_b);
    std::cout << buf;
  }
  if (!outFile.empty()) {
    write_dist_csv(outFile, d);
    std::cout << "wrote " << outFile << "\n";
  }
  return exit_ok;
}

inline int cmd_region(const CommonOpts& o, int receiver, double box) {
  LoadedSpec ls = resolve_spec(o.spec);
  Scheme scheme = parse_scheme(o.scheme);
  ProductInput in = parse_pmf_arg(o.pmf, ls.core);
  RateRegion reg;
  if (receiver > 0) {
    // Fig.-2-style single-receiver picture: that receiver's constraints plus
    // a diagnostic box cap (the lone region is unbounded in the cross rates).
    if (scheme != Scheme::id) throw usage_error("--receiver only applies to scheme id");
    SignalDistribution d(ls.core, in);
    std::vector<MinConstraint> cons;
    for (MinConstraint& c : interference_decoding_constraints(exact_bounds(d)))
      if (c.base == receiver - 1) cons.push_back(std::move(c));
    for (int m = 0; m < 3; ++m) {
      double cap = box > 0 ? box : std::log2(static_cast<double>(ls.core.nx[m])) + 1.0;
      cons.push_back({m, {{{0, 0, 0}, 0.0}}, cap});
    }
    reg = region_from_constraints(std::move(cons), true);
  } else {
    reg = build_region(ls, scheme, in, true);
  }
  write_corners_csv(out_path(o.out, "corners.csv"), reg.corners);
  write_pieces_txt(out_path(o.out, "pieces.txt"), reg);
  WeightedMax wm = max_weighted_sum(reg, {1, 1, 1});
  std::cout << "scheme " << scheme_name(scheme) << " on " << ls.core.name << ": "
            << reg.corners.size() << " corners, " << reg.pieces.size() << " pieces, max sum "
            << fmt_fixed(wm.value, 6) << " at " << fmt_fixed(wm.argmax[0], 6) << ","
            << fmt_fixed(wm.argmax[1], 6) << "," << fmt_fixed(wm.argmax[2], 6) << "\n";
  std::cout << "wrote " << o.out << "/corners.csv, pieces.txt\n";
  return exit_ok;
}

inline int cmd_sweep(const CommonOpts& o, const std::string& step, int rounds, int topk,
                     long long cap, const std::string& weights) {
  LoadedSpec ls = resolve_spec(o.spec);
  SweepConfig cfg;
  cfg.scheme = parse_scheme(o.scheme);
  cfg.step_den = parse_unit_fraction(step);
  cfg.rounds = rounds;
  cfg.topk = topk;
  cfg.cap = cap;
  cfg.weights = parse_rate_arg(weights, "--weights");
  AggregateRegion agg = run_sweep(ls, cfg);
  export_aggregate(agg, o.out, "");

  Plane pl = plane_by_name(ls.core.nx[2] == 1 ? "r1-r2" : "r2-45");
  SliceResult sl = slice_region(agg.hull, pl, 160);
  write_slice_csv(out_path(o.out, "slice.csv"), sl);
  write_slice_svg(out_path(o.out, "slice.svg"),
                  std::string(scheme_name(cfg.scheme)) + " hull slice: " + ls.core.name, pl.xlabel,
                  pl.ylabel, {{scheme_name(cfg.scheme), "#1f77b4", true, &sl}});

  Summary s;
  s.add("command", std::string("sweep"));
  s.add("spec", ls.core.name);
  s.add("scheme", std::string(scheme_name(cfg.scheme)));
  s.add("step", "1/" + std::to_string(cfg.step_den));
  s.add("rounds", static_cast<long long>(cfg.rounds));
  s.add("topk", static_cast<long long>(cfg.topk));
  s.add("evaluated", static_cast<long long>(agg.evaluated));
  s.add("corners", static_cast<long long>(agg.corners.size()));
  s.add("hull_corners", static_cast<long long>(agg.hull.corners.size()));
  s.add("best_sum", agg.best.value);
  s.add_rate("best_argmax", agg.best.argmax);
  s.write(out_path(o.out, "summary.txt"));
  s.print();
  return exit_ok;
}

inline int cmd_compare(const std::string& fileA, const std::string& fileB, int samples,
                       std::uint64_t seed) {
  RateRegion a = hull_union({read_corners_csv(fileA)});
  RateRegion b = hull_union({read_corners_csv(fileB)});
  InclusionResult ab = inclusion_check(a, b, samples, seed);
  InclusionResult ba = inclusion_check(b, a, samples, split_seed(seed, 0x5a));
  auto report = [](const std::string& label, const InclusionResult& r) {
    std::cout << label << ": " << (r.included ? "yes" : "no") << "\n";
    for (const Rate& w : r.witnesses)
      std::cout << "  witness " << fmt_fixed(w[0], 6) << "," << fmt_fixed(w[1], 6) << ","
                << fmt_fixed(w[2], 6) << "\n";
  };
  report("A included in B", ab);
  report("B included in A", ba);
  return exit_ok;
}

inline int cmd_slice(const CommonOpts& o, const std::string& planeName, int res) {
  LoadedSpec ls = resolve_spec(o.spec);
  Scheme scheme = parse_scheme(o.scheme);
  ProductInput in = parse_pmf_arg(o.pmf, ls.core);
  RateRegion reg = build_region(ls, scheme, in, false);
  Plane pl = plane_by_name(planeName);
  SliceResult sl = slice_region(reg, pl, res);
  write_slice_csv(out_path(o.out, "slice.csv"), sl);
  write_slice_svg(out_path(o.out, "slice.svg"),
                  std::string(scheme_name(scheme)) + " slice: " + ls.core.name, pl.xlabel,
                  pl.ylabel, {{scheme_name(scheme), "#1f77b4", true, &sl}});
  std::cout << "slice polygon: " << sl.boundary.size() << " vertices\n";
  std::cout << "wrote " << o.out << "/slice.csv, slice.svg\n";
  return exit_ok;
}

inline int cmd_satlab(const std::string& macName, const std::string& p1, const std::string& p2,
                      int n, int trials, std::uint64_t seed, double r1, double r2,
                      const std::string& grid, const std::string& out) {
  MacExperiment base;
  base.mac = builtin_mac(macName);
  if (!p1.empty()) {
    std::vector<double> v;
    for (const std::string& s : split(p1, ',')) v.push_back(parse_number(s));
    base.p1 = Pmf(std::move(v));
  }
  if (!p2.empty()) {
    std::vector<double> v;
    for (const std::string& s : split(p2, ',')) v.push_back(parse_number(s));
    base.p2 = Pmf(std::move(v));
  }
  base.n = n;
  base.trials = trials;
  base.seed = seed;

  if (r1 >= 0 && r2 >= 0) {
    base.R1 = r1;
    base.R2 = r2;
    double pred = predicted_exponent(base);
    ExponentEstimate est = empirical_exponent(base);
    std::cout << "R1=" << fmt_fixed(r1, 4) << " R2=" << fmt_fixed(r2, 4)
              << " predicted=" << fmt_fixed(pred, 6) << " empirical=" << fmt_fixed(est.exponent, 6)
              << " stddev=" << fmt_fixed(est.stddev, 6)
              << " deviation=" << fmt_fixed(std::abs(est.exponent - pred), 6) << "\n";
    return exit_ok;
  }

  std::vector<std::string> gp = split(grid, ',');
  if (gp.size() != 2) throw usage_error("--grid expects step,max");
  double step = parse_number(gp[0]), rmax = parse_number(gp[1]);
  std::vector<ExponentRow> rows = sweep_exponent_map(base, step, rmax);
  double maxdev = 0.0;
  for (const ExponentRow& row : rows)
    maxdev = std::max(maxdev, std::abs(row.empirical - row.predicted));
  write_satlab_csv(out_path(out, "exponents.csv"), rows);
  write_satlab_svg(out_path(out, "exponents.svg"),
                   "sequence-count exponent, " + macName + " MAC, n=" + std::to_string(n), rows);
  std::cout << "cells=" << rows.size() << " max |empirical - predicted| = " << fmt_fixed(maxdev, 6)
            << "\n";
  std::cout << "wrote " << out << "/exponents.csv, exponents.svg\n";
  return exit_ok;
}

// ---- presets: pinned configurations reproducing the headline figures ----

inline int preset_fig4(const std::string& out, std::uint64_t seed) {
  LoadedSpec ls = resolve_spec("additive3dic");
  SweepConfig cfg;
  cfg.step_den = 6;
  cfg.rounds = 2;
  cfg.topk = 5;

  cfg.scheme = Scheme::tin;
  AggregateRegion tin = run_sweep(ls, cfg);
  export_aggregate(tin, out, "tin_");
  cfg.scheme = Scheme::id;
  AggregateRegion id = run_sweep(ls, cfg);
  export_aggregate(id, out, "id_");

  Plane pl = plane_by_name("r2-45");
  SliceResult slTin = slice_region(tin.hull, pl, 160);
  SliceResult slId = slice_region(id.hull, pl, 160);
  write_slice_csv(out_path(out, "tin_slice.csv"), slTin);
  write_slice_csv(out_path(out, "id_slice.csv"), slId);
  write_slice_svg(out_path(out, "slice.svg"), "additive network: hull slices through the R2/45-degree plane",
                  pl.xlabel, pl.ylabel,
                  {{"treating interference as noise", "#1f77b4", true, &slTin},
                   {"interference decoding", "#d62728", false, &slId}});

  CompareResult cr = compare(tin, id, 500, seed);
  std::vector<Rate> reps = near_max_representatives(id, {1, 1, 1}, 0.01, 0.05);
  std::string replist;
  for (size_t i = 0; i < reps.size() && i < 8; ++i) {
    if (i) replist += ";";
    replist += fmt_fixed(reps[i][0], 6) + "," + fmt_fixed(reps[i][1], 6) + "," +
               fmt_fixed(reps[i][2], 6);
  }

  Summary s;
  s.add("preset", std::string("fig4"));
  s.add("spec", std::string("additive3dic"));
  s.add("step", std::string("1/6"));
  s.add("rounds", 2ll);
  s.add("topk", 5ll);
  s.add("tin_sum", tin.best.value, 2);
  s.add("tin_sum_exact", tin.best.value);
  s.add_rate("tin_argmax", tin.best.argmax);
  s.add("id_sum", id.best.value, 2);
  s.add("id_sum_exact", id.best.value);
  s.add_rate("id_argmax", id.best.argmax);
  s.add("id_near_max_corners", static_cast<long long>(reps.size()));
  s.add("id_near_max_list", replist);
  s.add("tin_in_id", std::string(cr.a_in_b ? "yes" : "no"));
  s.add("id_in_tin", std::string(cr.b_in_a ? "yes" : "no"));
  if (!cr.witnesses_b_not_a.empty()) s.add_rate("witness_id_not_tin", cr.witnesses_b_not_a[0], 6);
  s.add("evaluated_tin", static_cast<long long>(tin.evaluated));
  s.add("evaluated_id", static_cast<long long>(id.evaluated));
  s.write(out_path(out, "summary.txt"));
  s.print();
  return exit_ok;
}

inline int preset_fig6(const std::string& out, std::uint64_t seed) {
  LoadedSpec ls = resolve_spec("gaussian-bpsk");
  SweepConfig cfg;
  cfg.step_den = 40;
  cfg.rounds = 1;
  cfg.topk = 3;

  cfg.scheme = Scheme::tin_noisy;
  AggregateRegion tin = run_sweep(ls, cfg);
  export_aggregate(tin, out, "tin_");
  cfg.scheme = Scheme::id_noisy;
  AggregateRegion id = run_sweep(ls, cfg);
  export_aggregate(id, out, "id_");

  Plane pl = plane_by_name("r2-45");
  SliceResult slTin = slice_region(tin.hull, pl, 160);
  SliceResult slId = slice_region(id.hull, pl, 160);
  write_slice_csv(out_path(out, "tin_slice.csv"), slTin);
  write_slice_csv(out_path(out, "id_slice.csv"), slId);
  write_slice_svg(out_path(out, "slice.svg"),
                  "BPSK network, noisy observations: hull slices (R2/45-degree plane)", pl.xlabel,
                  pl.ylabel,
                  {{"treating interference as noise", "#1f77b4", true, &slTin},
                   {"interference decoding", "#d62728", false, &slId}});

  CompareResult cr = compare(tin, id, 500, seed);

  Summary s;
  s.add("preset", std::string("fig6"));
  s.add("spec", std::string("gaussian-bpsk"));
  s.add("step", std::string("1/40"));
  s.add("rounds", 1ll);
  s.add("topk", 3ll);
  s.add("tin_sum", tin.best.value, 2);
  s.add("tin_sum_exact", tin.best.value);
  s.add_rate("tin_argmax", tin.best.argmax);
  s.add("id_sum", id.best.value, 2);
  s.add("id_sum_exact", id.best.value);
  s.add_rate("id_argmax", id.best.argmax);
  s.add("tin_in_id", std::string(cr.a_in_b ? "yes" : "no"));
  s.add("id_in_tin", std::string(cr.b_in_a ? "yes" : "no"));
  s.add("witnesses_tin_not_id", static_cast<long long>(cr.witnesses_a_not_b.size()));
  s.add("witnesses_id_not_tin", static_cast<long long>(cr.witnesses_b_not_a.size()));
  if (!cr.witnesses_a_not_b.empty()) s.add_rate("witness_tin_not_id", cr.witnesses_a_not_b[0], 6);
  if (!cr.witnesses_b_not_a.empty()) s.add_rate("witness_id_not_tin", cr.witnesses_b_not_a[0], 6);
  s.add("evaluated_tin", static_cast<long long>(tin.evaluated));
  s.add("evaluated_id", static_cast<long long>(id.evaluated));
  s.write(out_path(out, "summary.txt"));
  s.print();
  return exit_ok;
}

inline int preset_fig7b(const std::string& out, std::uint64_t seed) {
  LoadedSpec ls = resolve_spec("blackwell2dic");
  SweepConfig cfg;
  cfg.step_den = 6;
  cfg.rounds = 2;
  cfg.topk = 5;

  cfg.scheme = Scheme::twodic_id;
  AggregateRegion id = run_sweep(ls, cfg);
  export_aggregate(id, out, "id_");
  cfg.scheme = Scheme::tin;
  AggregateRegion tin = run_sweep(ls, cfg);
  export_aggregate(tin, out, "tin_");

  Plane pl = plane_by_name("r1-r2");
  SliceResult slTin = slice_region(tin.hull, pl, 200);
  SliceResult slId = slice_region(id.hull, pl, 200);
  write_slice_csv(out_path(out, "tin_slice.csv"), slTin);
  write_slice_csv(out_path(out, "id_slice.csv"), slId);
  write_slice_svg(out_path(out, "slice.svg"), "two-sender network: inner bounds in the R1-R2 plane",
                  pl.xlabel, pl.ylabel,
                  {{"treating interference as noise", "#1f77b4", true, &slTin},
                   {"interference decoding", "#d62728", false, &slId}});

  CompareResult cr = compare(tin, id, 500, seed);

  Summary s;
  s.add("preset", std::string("fig7b"));
  s.add("spec", std::string("blackwell2dic"));
  s.add("step", std::string("1/6"));
  s.add("rounds", 2ll);
  s.add("topk", 5ll);
  s.add("id_sum", id.best.value, 2);
  s.add("id_sum_exact", id.best.value);
  s.add_rate("id_argmax", id.best.argmax);
  s.add("tin_sum", tin.best.value, 2);
  s.add("tin_sum_exact", tin.best.value);
  s.add("tin_in_id", std::string(cr.a_in_b ? "yes" : "no"));
  s.add("id_in_tin", std::string(cr.b_in_a ? "yes" : "no"));
  s.add("evaluated_id", static_cast<long long>(id.evaluated));
  s.add("evaluated_tin", static_cast<long long>(tin.evaluated));
  s.write(out_path(out, "summary.txt"));
  s.print();
  return exit_ok;
}

inline int preset_fig5(const std::string& out, std::uint64_t seed) {
  MacExperiment base;
  base.mac = builtin_mac("adder");
  base.n = 14;
  base.trials = 20;
  base.seed = seed;

  std::vector<ExponentRow> rows = sweep_exponent_map(base, 0.25, 2.0);
  double maxdev = 0.0;
  for (const ExponentRow& row : rows)
    maxdev = std::max(maxdev, std::abs(row.empirical - row.predicted));

  // spot pairs at the figure's landmark rate points, appended after the grid
  const std::array<std::pair<double, double>, 4> spots{
      {{0.5, 0.5}, {2.0, 2.0}, {0.2, 2.0}, {2.0, 0.2}}};
  std::array<double, 4> spotdev{};
  for (size_t i = 0; i < spots.size(); ++i) {
    MacExperiment e = base;
    e.R1 = spots[i].first;
    e.R2 = spots[i].second;
    double pred = predicted_exponent(e);
    ExponentEstimate est = empirical_exponent(e);
    spotdev[i] = std::abs(est.exponent - pred);
    rows.push_back({e.R1, e.R2, pred, est.exponent, est.stddev});
  }
  write_satlab_csv(out_path(out, "exponents.csv"), rows);
  write_satlab_svg(out_path(out, "exponents.svg"), "sequence-count exponent, adder MAC, n=14",
                   rows);

  Summary s;
  s.add("preset", std::string("fig5"));
  s.add("mac", std::string("adder"));
  s.add("n", 14ll);
  s.add("trials", 20ll);
  s.add("seed", static_cast<long long>(seed));
  s.add("grid_cells", static_cast<long long>(rows.size() - spots.size()));
  s.add("max_abs_dev", maxdev, 6);
  s.add("dev_at_0.50_0.50", spotdev[0], 6);
  s.add("dev_at_2.00_2.00", spotdev[1], 6);
  s.add("dev_at_0.20_2.00", spotdev[2], 6);
  s.add("dev_at_2.00_0.20", spotdev[3], 6);
  s.write(out_path(out, "summary.txt"));
  s.print();
  return exit_ok;
}

inline int cmd_preset(const std::string& name, std::string out, std::uint64_t seed) {
  if (out.empty()) out = "out/" + name;
  if (name == "fig4") return preset_fig4(out, seed);
  if (name == "fig6") return preset_fig6(out, seed);
  if (name == "fig7b") return preset_fig7b(out, seed);
  if (name == "fig5") return preset_fig5(out, seed);
  throw usage_error("unknown preset (use fig4, fig6, fig7b, fig5): " + name);
}

}  // namespace cliapp

// Entry point shared by the binary and the tests; args excludes argv[0].
inline int dic_main(const std::vector<std::string>& args) {
  CLI::App app{"rate-region toolkit for three-user deterministic interference networks"};
  app.require_subcommand(1);

  std::string spec, pmf = "uniform", out = "out", scheme = "id", step = "1/6";
  std::string weights = "1,1,1", plane = "r2-45", grid = "0.25,2.0";
  std::string fileA, fileB, distOut, macName = "adder", p1, p2, presetName, presetOut;
  std::uint64_t seed = 0;
  int rounds = 2, topk = 5, samples = 256, res = 120, nsamples = 200, receiver = 0;
  int n = 14, trials = 20;
  long long cap = 1000000;
  double r1 = -1, r2 = -1, box = 0;

  auto* v = app.add_subcommand("validate", "check the structural and sampled spec conditions");
  v->add_option("spec", spec, "spec file or builtin name")->required();
  v->add_option("--samples", nsamples, "pmf samples for the sampled conditions");
  v->add_option("--seed", seed, "rng seed");

  auto* d = app.add_subcommand("dist", "print per-receiver entropies at a pmf");
  d->add_option("spec", spec, "spec file or builtin name")->required();
  d->add_option("pmf", pmf, "pmf triple, e.g. '1/2,0,1/2' or 'uniform'");
  d->add_option("--out", distOut, "write the joint signal table as CSV");

  auto* r = app.add_subcommand("region", "construct one rate region at a pmf");
  r->add_option("--spec", spec, "spec file or builtin name")->required();
  r->add_option("--pmf", pmf, "pmf triple");
  r->add_option("--scheme", scheme, "id|tin|strong|id-noisy|tin-noisy|2dic-id");
  r->add_option("--receiver", receiver, "diagnostic: single receiver's region (1-3), boxed");
  r->add_option("--box", box, "box cap for --receiver (default log2|X|+1)");
  r->add_option("--out", out, "output directory");

  auto* sw = app.add_subcommand("sweep", "grid sweep over input pmfs, aggregate and hull");
  sw->add_option("--spec", spec, "spec file or builtin name")->required();
  sw->add_option("--scheme", scheme, "id|tin|strong|id-noisy|tin-noisy|2dic-id");
  sw->add_option("--step", step, "grid step as a unit fraction, e.g. 1/6");
  sw->add_option("--rounds", rounds, "refinement rounds");
  sw->add_option("--topk", topk, "corners refined per round");
  sw->add_option("--cap", cap, "max pmf combinations");
  sw->add_option("--weights", weights, "weighted-sum direction");
  sw->add_option("--out", out, "output directory");

  auto* cp = app.add_subcommand("compare", "bidirectional inclusion of two corner CSV files");
  cp->add_option("A", fileA, "first corners.csv")->required();
  cp->add_option("B", fileB, "second corners.csv")->required();
  cp->add_option("--samples", samples, "random probes per direction");
  cp->add_option("--seed", seed, "rng seed");

  auto* sl = app.add_subcommand("slice", "planar slice of one region");
  sl->add_option("--spec", spec, "spec file or builtin name")->required();
  sl->add_option("--pmf", pmf, "pmf triple");
  sl->add_option("--scheme", scheme, "id|tin|strong|id-noisy|tin-noisy|2dic-id");
  sl->add_option("--plane", plane, "r2-45 or r1-r2");
  sl->add_option("--res", res, "membership grid resolution");
  sl->add_option("--out", out, "output directory");

  auto* st = app.add_subcommand("satlab", "sequence-count saturation experiments");
  st->add_option("--mac", macName, "builtin MAC name (adder)");
  st->add_option("--p1", p1, "component pmf of sender 1");
  st->add_option("--p2", p2, "component pmf of sender 2");
  st->add_option("--n", n, "blocklength");
  st->add_option("--trials", trials, "trial count");
  st->add_option("--seed", seed, "rng seed");
  st->add_option("--r1", r1, "single-pair mode: rate 1");
  st->add_option("--r2", r2, "single-pair mode: rate 2");
  st->add_option("--grid", grid, "grid mode: step,max");
  st->add_option("--out", out, "output directory");

  auto* pr = app.add_subcommand("preset", "pinned figure-reproduction runs");
  pr->add_option("name", presetName, "fig4|fig6|fig7b|fig5")->required();
  pr->add_option("--out", presetOut, "output directory (default out/<name>)");
  pr->add_option("--seed", seed, "rng seed");

  std::vector<const char*> argv;
  argv.push_back("dic");
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? cliapp::exit_ok : cliapp::exit_usage;
  }

  try {
    if (app.got_subcommand(v)) return cliapp::cmd_validate(spec, nsamples, seed);
    if (app.got_subcommand(d)) return cliapp::cmd_dist(spec, pmf, distOut);
    if (app.got_subcommand(r))
      return cliapp::cmd_region({spec, pmf, out, scheme, seed}, receiver, box);
    if (app.got_subcommand(sw))
      return cliapp::cmd_sweep({spec, pmf, out, scheme, seed}, step, rounds, topk, cap, weights);
    if (app.got_subcommand(cp)) return cliapp::cmd_compare(fileA, fileB, samples, seed);
    if (app.got_subcommand(sl)) return cliapp::cmd_slice({spec, pmf, out, scheme, seed}, plane, res);
    if (app.got_subcommand(st))
      return cliapp::cmd_satlab(macName, p1, p2, n, trials, seed, r1, r2, grid, out);
    if (app.got_subcommand(pr)) return cliapp::cmd_preset(presetName, presetOut, seed);
    return cliapp::exit_usage;
  } catch (const usage_error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return cliapp::exit_usage;
  } catch (const resource_error& e) {
    std::cerr << "resource guard: " << e.what() << "\n";
    return cliapp::exit_resource;
  } catch (const accuracy_error& e) {
    std::cerr << "accuracy: " << e.what() << "\n";
    return cliapp::exit_validation;
  } catch (const validation_error& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return cliapp::exit_validation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cliapp::exit_validation;
  }
}

}  // namespace dic
