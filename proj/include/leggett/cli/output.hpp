#pragma once

#include <string>
#include <vector>

namespace leggett::cli {

/// 12 significant digits, shortest form, '.' decimal point; empty for NaN.
std::string format_number(double v);

struct CsvTable
{
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Header row, comma separated, LF line endings.
  std::string str() const;
};

struct Series
{
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
};

/// Minimal line chart: axes with end labels, one polyline per series
/// (NaN points skipped) and a legend.
std::string line_chart_svg(const std::string& title, const std::string& x_label, const std::vector<Series>& series);

/// Writes text to path, creating parent directories. Throws std::runtime_error.
void write_file(const std::string& path, const std::string& text);

} // namespace leggett::cli
