#pragma once

#include <fstream>
#include <sstream>

#include "dic/satlab.hpp"
#include "dic/sweep.hpp"

namespace dic {

namespace detail {

inline std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw usage_error("cannot write " + path);
  return out;
}

}  // namespace detail

// All CSV output is one fixed header line plus %.9f fields, LF endings, so
// reruns are byte-identical.
inline void write_corners_csv(const std::string& path, const std::vector<Rate>& pts) {
  auto out = detail::open_out(path);
  out << "R1,R2,R3\n";
  for (const Rate& r : pts)
    out << fmt_fixed(r[0]) << "," << fmt_fixed(r[1]) << "," << fmt_fixed(r[2]) << "\n";
}

inline std::vector<Rate> read_corners_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw usage_error("cannot read " + path);
  std::string line;
  if (!std::getline(in, line) || line.rfind("R1,R2,R3", 0) != 0)
    throw validation_error(path + ": expected header R1,R2,R3");
  std::vector<Rate> pts;
  size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ss(line);
    Rate r{};
    char comma = 0;
    if (!(ss >> r[0] >> comma >> r[1] >> comma >> r[2]))
      throw validation_error(path + ":" + std::to_string(lineno) + ": bad rate row");
    pts.push_back(r);
  }
  return pts;
}

// Sweep provenance: each maximal corner with the pmf combination that
// produced it, pmf columns flattened per sender.
inline void write_provenance_csv(const std::string& path, const AggregateRegion& agg) {
  auto out = detail::open_out(path);
  out << "R1,R2,R3,combo";
  if (!agg.combos.empty())
    for (int l = 0; l < 3; ++l)
      for (size_t i = 0; i < agg.combos[0][static_cast<size_t>(l)].num.size(); ++i)
        out << ",p" << l + 1 << "_" << i + 1;
  out << "\n";
  for (const CornerRecord& rec : agg.corners) {
    out << fmt_fixed(rec.r[0]) << "," << fmt_fixed(rec.r[1]) << "," << fmt_fixed(rec.r[2]) << ","
        << rec.combo;
    ProductInput in = agg.input_at(rec.combo);
    for (int l = 0; l < 3; ++l)
      for (int i = 0; i < in.pmf[l].size(); ++i) out << "," << fmt_fixed(in.pmf[l][i]);
    out << "\n";
  }
}

inline void write_slice_csv(const std::string& path, const SliceResult& slice) {
  auto out = detail::open_out(path);
  out << "u,v,R1,R2,R3\n";
  for (const auto& uv : slice.boundary) {
    Rate r = slice.lift(uv);
    out << fmt_fixed(uv[0]) << "," << fmt_fixed(uv[1]) << "," << fmt_fixed(r[0]) << ","
        << fmt_fixed(r[1]) << "," << fmt_fixed(r[2]) << "\n";
  }
}

inline void write_satlab_csv(const std::string& path, const std::vector<ExponentRow>& rows) {
  auto out = detail::open_out(path);
  out << "R1,R2,predicted,empirical,stddev\n";
  for (const ExponentRow& row : rows)
    out << fmt_fixed(row.r1) << "," << fmt_fixed(row.r2) << "," << fmt_fixed(row.predicted) << ","
        << fmt_fixed(row.empirical) << "," << fmt_fixed(row.stddev) << "\n";
}

// Pieces as half-space lists, one line per inequality, for debugging and
// external plotting.
inline void write_pieces_txt(const std::string& path, const RateRegion& reg) {
  auto out = detail::open_out(path);
  if (reg.form == RateRegion::Form::hull) {
    out << "# hull form: " << reg.corners.size() << " corner points, no piece list\n";
    return;
  }
  out << "# union of " << reg.pieces.size() << " convex pieces; rows are a1 a2 a3 b"
      << " meaning a1*R1 + a2*R2 + a3*R3 <= b\n";
  for (size_t i = 0; i < reg.pieces.size(); ++i) {
    out << "piece " << i + 1 << "\n";
    for (const HalfSpace& face : reg.pieces[i].hs)
      out << "  " << fmt_fixed(face.a[0]) << " " << fmt_fixed(face.a[1]) << " "
          << fmt_fixed(face.a[2]) << " " << fmt_fixed(face.b) << "\n";
  }
}

// Signal-distribution cells for `dist --out`.
inline void write_dist_csv(const std::string& path, const SignalDistribution& dist) {
  auto out = detail::open_out(path);
  out << "p,x1,x2,x3,s1,s2,s3,y1,y2,y3\n";
  for (const auto& cell : dist.cells()) {
    out << fmt_fixed(cell.p, 12);
    for (int l = 0; l < 3; ++l) out << "," << cell.x[l];
    for (int k = 0; k < 3; ++k) out << "," << cell.sig.s[k];
    for (int k = 0; k < 3; ++k) out << "," << cell.sig.y[k];
    out << "\n";
  }
}

}  // namespace dic
