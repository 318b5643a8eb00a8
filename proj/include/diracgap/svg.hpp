#pragma once

#include <string>
#include <vector>

namespace diracgap {

struct PlotSeries {
  std::string name;
  std::vector<double> x, y;
};

enum class PlotKind { Convergence, Profile, Sweep };

/// Static SVG plot: axes, tick labels, one polyline per series (markers for
/// convergence tables).  The parameter string is embedded as an XML comment.
/// Byte-identical output for identical inputs; empty input is rejected.
void emit_plot(const std::vector<PlotSeries>& series, PlotKind kind, const std::string& path,
               const std::string& params_comment);

}  // namespace diracgap
