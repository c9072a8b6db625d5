#pragma once

#include "dic/csvio.hpp"

namespace dic {

// Plot output is decoration for visual comparison only; tests parse CSV,
// never SVG.
struct SliceLayer {
  std::string label;
  std::string color;
  bool filled = false;
  const SliceResult* slice = nullptr;
};

namespace detail {

inline std::string svg_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

}  // namespace detail

inline void write_slice_svg(const std::string& path, const std::string& title,
                            const std::string& xlabel, const std::string& ylabel,
                            const std::vector<SliceLayer>& layers) {
  double umax = 1e-9, vmax = 1e-9;
  for (const SliceLayer& lay : layers)
    for (const auto& uv : lay.slice->boundary) {
      umax = std::max(umax, uv[0]);
      vmax = std::max(vmax, uv[1]);
    }
  umax *= 1.08;
  vmax *= 1.08;
  const double w = 560, h = 480, ml = 64, mb = 48, mt = 40, mr = 24;
  auto px = [&](double u) { return ml + (w - ml - mr) * u / umax; };
  auto py = [&](double v) { return h - mb - (h - mb - mt) * v / vmax; };

  auto out = detail::open_out(path);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
      << "\" viewBox=\"0 0 " << w << " " << h << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << w / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" << title
      << "</text>\n";
  // axes with ticks every half unit
  out << "<line x1=\"" << ml << "\" y1=\"" << py(0) << "\" x2=\"" << w - mr << "\" y2=\"" << py(0)
      << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << ml << "\" y1=\"" << py(0) << "\" x2=\"" << ml << "\" y2=\"" << mt
      << "\" stroke=\"black\"/>\n";
  for (double t = 0.0; t <= umax + 1e-12; t += 0.5) {
    out << "<line x1=\"" << px(t) << "\" y1=\"" << py(0) << "\" x2=\"" << px(t) << "\" y2=\""
        << py(0) + 4 << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << px(t) << "\" y=\"" << py(0) + 18
        << "\" text-anchor=\"middle\" font-size=\"11\">" << detail::svg_num(t) << "</text>\n";
  }
  for (double t = 0.0; t <= vmax + 1e-12; t += 0.5) {
    out << "<line x1=\"" << ml - 4 << "\" y1=\"" << py(t) << "\" x2=\"" << ml << "\" y2=\""
        << py(t) << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << ml - 8 << "\" y=\"" << py(t) + 4
        << "\" text-anchor=\"end\" font-size=\"11\">" << detail::svg_num(t) << "</text>\n";
  }
  out << "<text x=\"" << (ml + w - mr) / 2 << "\" y=\"" << h - 10
      << "\" text-anchor=\"middle\" font-size=\"13\">" << xlabel << "</text>\n";
  out << "<text x=\"16\" y=\"" << (mt + h - mb) / 2 << "\" text-anchor=\"middle\" font-size=\"13\""
      << " transform=\"rotate(-90 16 " << (mt + h - mb) / 2 << ")\">" << ylabel << "</text>\n";

  double ly = mt + 10;
  for (const SliceLayer& lay : layers) {
    if (lay.slice->boundary.empty()) continue;
    out << "<polygon points=\"";
    for (const auto& uv : lay.slice->boundary)
      out << detail::svg_num(px(uv[0])) << "," << detail::svg_num(py(uv[1])) << " ";
    out << "\" stroke=\"" << lay.color << "\" stroke-width=\"2\" fill=\"" << lay.color
        << "\" fill-opacity=\"" << (lay.filled ? "0.45" : "0") << "\""
        << (lay.filled ? "" : " stroke-dasharray=\"7 4\"") << "/>\n";
    out << "<text x=\"" << w - mr - 8 << "\" y=\"" << ly << "\" text-anchor=\"end\""
        << " font-size=\"12\" fill=\"" << lay.color << "\">" << lay.label << "</text>\n";
    ly += 16;
  }
  out << "</svg>\n";
}

// Exponent-map picture: one cell per rate pair, shaded by the empirical
// exponent, annotated with its value.
inline void write_satlab_svg(const std::string& path, const std::string& title,
                             const std::vector<ExponentRow>& rows) {
  std::vector<double> r1s, r2s;
  double emax = 1e-9;
  for (const ExponentRow& row : rows) {
    r1s.push_back(row.r1);
    r2s.push_back(row.r2);
    emax = std::max(emax, row.empirical);
  }
  auto uniq = [](std::vector<double>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  };
  uniq(r1s);
  uniq(r2s);
  const double cell = 52, ml = 64, mt = 44;
  double w = ml + cell * static_cast<double>(r1s.size()) + 24;
  double h = mt + cell * static_cast<double>(r2s.size()) + 52;
  auto col = [&](double r) { return std::lower_bound(r1s.begin(), r1s.end(), r) - r1s.begin(); };
  auto rowi = [&](double r) { return std::lower_bound(r2s.begin(), r2s.end(), r) - r2s.begin(); };

  auto out = detail::open_out(path);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
      << "\" viewBox=\"0 0 " << w << " " << h << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << w / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" << title
      << "</text>\n";
  for (const ExponentRow& r : rows) {
    double x = ml + cell * static_cast<double>(col(r.r1));
    double y = mt + cell * static_cast<double>(static_cast<long>(r2s.size()) - 1 - rowi(r.r2));
    int shade = 255 - static_cast<int>(170.0 * r.empirical / emax);
    out << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << cell << "\" height=\"" << cell
        << "\" fill=\"rgb(" << shade << "," << shade << ",255)\" stroke=\"#ccc\"/>\n";
    out << "<text x=\"" << x + cell / 2 << "\" y=\"" << y + cell / 2
        << "\" text-anchor=\"middle\" font-size=\"11\">" << detail::svg_num(r.empirical)
        << "</text>\n";
    out << "<text x=\"" << x + cell / 2 << "\" y=\"" << y + cell / 2 + 13
        << "\" text-anchor=\"middle\" font-size=\"9\" fill=\"#666\">" << detail::svg_num(r.predicted)
        << "</text>\n";
  }
  for (size_t i = 0; i < r1s.size(); ++i)
    out << "<text x=\"" << ml + cell * static_cast<double>(i) + cell / 2 << "\" y=\""
        << mt + cell * static_cast<double>(r2s.size()) + 16
        << "\" text-anchor=\"middle\" font-size=\"10\">" << detail::svg_num(r1s[i]) << "</text>\n";
  for (size_t i = 0; i < r2s.size(); ++i)
    out << "<text x=\"" << ml - 6 << "\" y=\""
        << mt + cell * static_cast<double>(r2s.size() - 1 - i) + cell / 2 + 4
        << "\" text-anchor=\"end\" font-size=\"10\">" << detail::svg_num(r2s[i]) << "</text>\n";
  out << "<text x=\"" << ml + cell * static_cast<double>(r1s.size()) / 2 << "\" y=\"" << h - 10
      << "\" text-anchor=\"middle\" font-size=\"13\">R1 (bits)</text>\n";
  out << "<text x=\"18\" y=\"" << mt + cell * static_cast<double>(r2s.size()) / 2
      << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 18 "
      << mt + cell * static_cast<double>(r2s.size()) / 2 << ")\">R2 (bits)</text>\n";
  out << "</svg>\n";
}

}  // namespace dic
