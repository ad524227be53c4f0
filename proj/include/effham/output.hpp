#pragma once

// CSV tables and a small deterministic SVG line-plot writer.

#include <filesystem>
#include <string>
#include <vector>

#include "effham/curve.hpp"
#include "effham/potential.hpp"

namespace effham {

/// 17 significant digits, so values round-trip through text.
std::string format_number(double x);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> row);
  std::string str() const;
};

CsvTable curve_table(const std::vector<EffectiveCurve>& curves);
void write_text(const std::filesystem::path& path, const std::string& text);

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

PlotSeries series_of(const EffectiveCurve& curve);
PlotSeries series_of(const DistributionFunction& cdf, std::string label);

struct PlotLabels {
  std::string title;
  std::string x = "p";
  std::string y = "Hbar";
};

/// One polyline per series with axes, ticks and a legend. Throws precondition_error
/// on an empty series list, io_error when the file cannot be written.
std::string render_svg(const std::vector<PlotSeries>& series, const PlotLabels& labels = {});
void emit_plot(const std::vector<PlotSeries>& series, const std::filesystem::path& path,
               const PlotLabels& labels = {});
void emit_plot(const std::vector<EffectiveCurve>& curves, const std::filesystem::path& path,
               const PlotLabels& labels = {});

}  // namespace effham
