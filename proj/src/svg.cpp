#include "diracgap/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "diracgap/csv.hpp"

namespace diracgap {

namespace {

constexpr double kW = 640, kH = 420;
constexpr double kL = 70, kR = 20, kT = 30, kB = 50;  // margins

std::string fmt(double v) { return format_double(v); }

}  // namespace

void emit_plot(const std::vector<PlotSeries>& series, PlotKind kind, const std::string& path,
               const std::string& params_comment) {
  if (series.empty()) throw std::invalid_argument("emit_plot: empty series list");
  for (const auto& s : series) {
    if (s.x.empty() || s.x.size() != s.y.size())
      throw std::invalid_argument("emit_plot: empty or mismatched table");
  }

  double xmin = series[0].x[0], xmax = xmin, ymin = series[0].y[0], ymax = ymin;
  for (const auto& s : series) {
    for (double v : s.x) {
      xmin = std::min(xmin, v);
      xmax = std::max(xmax, v);
    }
    for (double v : s.y) {
      ymin = std::min(ymin, v);
      ymax = std::max(ymax, v);
    }
  }
  if (xmax == xmin) xmax = xmin + 1.0;
  if (ymax == ymin) ymax = ymin + 1.0;
  double ypad = 0.05 * (ymax - ymin);
  ymin -= ypad;
  ymax += ypad;

  auto X = [&](double x) { return kL + (x - xmin) / (xmax - xmin) * (kW - kL - kR); };
  auto Y = [&](double y) { return kH - kB - (y - ymin) / (ymax - ymin) * (kH - kT - kB); };

  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH
      << "\" viewBox=\"0 0 " << kW << " " << kH << "\">\n";
  out << "<!-- params: " << params_comment << " -->\n";
  out << "<rect x=\"0\" y=\"0\" width=\"" << kW << "\" height=\"" << kH
      << "\" fill=\"white\"/>\n";
  // axes
  out << "<line x1=\"" << kL << "\" y1=\"" << kH - kB << "\" x2=\"" << kW - kR << "\" y2=\""
      << kH - kB << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << kL << "\" y1=\"" << kT << "\" x2=\"" << kL << "\" y2=\"" << kH - kB
      << "\" stroke=\"black\"/>\n";
  // tick labels at the corners of the data range
  out << "<text x=\"" << kL << "\" y=\"" << kH - kB + 18 << "\" font-size=\"11\">" << fmt(xmin)
      << "</text>\n";
  out << "<text x=\"" << kW - kR - 40 << "\" y=\"" << kH - kB + 18 << "\" font-size=\"11\">"
      << fmt(xmax) << "</text>\n";
  out << "<text x=\"4\" y=\"" << Y(ymin) << "\" font-size=\"11\">" << fmt(ymin) << "</text>\n";
  out << "<text x=\"4\" y=\"" << Y(ymax) << "\" font-size=\"11\">" << fmt(ymax) << "</text>\n";

  const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};
  for (std::size_t si = 0; si < series.size(); ++si) {
    const auto& s = series[si];
    const char* color = colors[si % 4];
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (i) out << " ";
      out << fmt(X(s.x[i])) << "," << fmt(Y(s.y[i]));
    }
    out << "\"/>\n";
    if (kind == PlotKind::Convergence || kind == PlotKind::Sweep) {
      for (std::size_t i = 0; i < s.x.size(); ++i)
        out << "<circle cx=\"" << fmt(X(s.x[i])) << "\" cy=\"" << fmt(Y(s.y[i]))
            << "\" r=\"3\" fill=\"" << color << "\"/>\n";
    }
    out << "<text x=\"" << kL + 10 + 120 * double(si) << "\" y=\"" << kT - 10
        << "\" font-size=\"12\" fill=\"" << color << "\">" << s.name << "</text>\n";
  }
  out << "</svg>\n";
}

}  // namespace diracgap
