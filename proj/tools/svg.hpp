#pragma once

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

namespace lpmink::svg {

struct Curve {
  std::vector<double> x, y;
  std::string color = "#1f77b4";
  std::string label;
};

struct HLine {
  double y = 0.0;
  std::string label;
};

// Fixed 800x500 canvas, no external plotting dependency.
inline std::string render(const std::vector<Curve>& curves, const std::vector<HLine>& hlines,
                          const std::string& title) {
  const int W = 800, H = 500, ml = 70, mr = 20, mt = 40, mb = 45;
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const auto& c : curves)
    for (size_t i = 0; i < c.x.size(); ++i) {
      xmin = std::min(xmin, c.x[i]);
      xmax = std::max(xmax, c.x[i]);
      ymin = std::min(ymin, c.y[i]);
      ymax = std::max(ymax, c.y[i]);
    }
  for (const auto& h : hlines) {
    ymin = std::min(ymin, h.y);
    ymax = std::max(ymax, h.y);
  }
  if (!(xmax > xmin)) xmax = xmin + 1.0;
  if (!(ymax > ymin)) ymax = ymin + 1.0;
  const double ypad = 0.05 * (ymax - ymin);
  ymin -= ypad;
  ymax += ypad;
  auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (W - ml - mr); };
  auto py = [&](double y) { return H - mb - (y - ymin) / (ymax - ymin) * (H - mt - mb); };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
      << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
  out << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
  out << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" << title
      << "</text>\n";
  // axes
  out << "<line x1=\"" << ml << "\" y1=\"" << H - mb << "\" x2=\"" << W - mr << "\" y2=\""
      << H - mb << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << H - mb
      << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 5; ++i) {
    const double x = xmin + (xmax - xmin) * i / 5;
    const double y = ymin + (ymax - ymin) * i / 5;
    out << "<text x=\"" << px(x) << "\" y=\"" << H - mb + 18
        << "\" text-anchor=\"middle\" font-size=\"11\">" << x << "</text>\n";
    out << "<text x=\"" << ml - 8 << "\" y=\"" << py(y) + 4
        << "\" text-anchor=\"end\" font-size=\"11\">" << y << "</text>\n";
  }
  for (const auto& h : hlines) {
    out << "<line x1=\"" << ml << "\" y1=\"" << py(h.y) << "\" x2=\"" << W - mr << "\" y2=\""
        << py(h.y) << "\" stroke=\"#999\" stroke-dasharray=\"6 4\"/>\n";
    if (!h.label.empty())
      out << "<text x=\"" << W - mr - 4 << "\" y=\"" << py(h.y) - 4
          << "\" text-anchor=\"end\" font-size=\"11\" fill=\"#666\">" << h.label << "</text>\n";
  }
  int li = 0;
  for (const auto& c : curves) {
    out << "<polyline fill=\"none\" stroke=\"" << c.color << "\" stroke-width=\"1.5\" points=\"";
    for (size_t i = 0; i < c.x.size(); ++i) out << px(c.x[i]) << ',' << py(c.y[i]) << ' ';
    out << "\"/>\n";
    if (!c.label.empty()) {
      out << "<text x=\"" << ml + 10 << "\" y=\"" << mt + 16 * (li + 1) << "\" font-size=\"12\" fill=\""
          << c.color << "\">" << c.label << "</text>\n";
      ++li;
    }
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace lpmink::svg
