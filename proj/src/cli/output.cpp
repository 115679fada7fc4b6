#include "leggett/cli/output.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace leggett::cli {

namespace {

const char* const palette[] = {"#1b9e77", "#d95f02", "#7570b3", "#e7298a"};

std::string escape_xml(const std::string& s)
{
  std::string out;
  for (char c : s) {
    switch (c) {
    case '&':
      out += "&amp;";
      break;
    case '<':
      out += "&lt;";
      break;
    case '>':
      out += "&gt;";
      break;
    case '"':
      out += "&quot;";
      break;
    default:
      out += c;
    }
  }
  return out;
}

std::string coord(double v)
{
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, std::round(v * 100.0) / 100.0, std::chars_format::fixed, 2);
  return std::string(buf, r.ptr);
}

} // namespace

std::string format_number(double v)
{
  if (std::isnan(v))
    return "";
  if (v == 0.0)
    return "0";
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12);
  return std::string(buf, r.ptr);
}

std::string CsvTable::str() const
{
  std::string out;
  auto line = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i)
        out += ',';
      out += cells[i];
    }
    out += '\n';
  };
  line(header);
  for (const auto& r : rows)
    line(r);
  return out;
}

std::string line_chart_svg(const std::string& title, const std::string& x_label, const std::vector<Series>& series)
{
  constexpr double width = 640, height = 400, left = 60, right = 160, top = 40, bottom = 50;
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto& s : series)
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i]))
        continue;
      x0 = std::min(x0, s.x[i]);
      x1 = std::max(x1, s.x[i]);
      y0 = std::min(y0, s.y[i]);
      y1 = std::max(y1, s.y[i]);
    }
  if (!std::isfinite(x0)) {
    x0 = y0 = 0.0;
    x1 = y1 = 1.0;
  }
  if (x1 == x0)
    x1 = x0 + 1.0;
  if (y1 == y0)
    y1 = y0 + 1.0;
  const double pad = 0.05 * (y1 - y0);
  y0 -= pad;
  y1 += pad;

  auto px = [&](double x) { return left + (x - x0) / (x1 - x0) * (width - left - right); };
  auto py = [&](double y) { return height - bottom - (y - y0) / (y1 - y0) * (height - top - bottom); };

  std::ostringstream o;
  o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
    << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">"
    << escape_xml(title) << "</text>\n";
  const std::string axis_x0 = coord(left), axis_x1 = coord(width - right);
  const std::string axis_y0 = coord(height - bottom), axis_y1 = coord(top);
  o << "<line x1=\"" << axis_x0 << "\" y1=\"" << axis_y0 << "\" x2=\"" << axis_x1 << "\" y2=\"" << axis_y0
    << "\" stroke=\"black\"/>\n";
  o << "<line x1=\"" << axis_x0 << "\" y1=\"" << axis_y0 << "\" x2=\"" << axis_x0 << "\" y2=\"" << axis_y1
    << "\" stroke=\"black\"/>\n";
  auto label = [&](double x, double y, const std::string& text, const char* anchor) {
    o << "<text x=\"" << coord(x) << "\" y=\"" << coord(y) << "\" text-anchor=\"" << anchor
      << "\" font-family=\"sans-serif\" font-size=\"11\">" << escape_xml(text) << "</text>\n";
  };
  label(left, height - bottom + 16, format_number(x0), "middle");
  label(width - right, height - bottom + 16, format_number(x1), "middle");
  label(left - 6, height - bottom, format_number(y0), "end");
  label(left - 6, top + 4, format_number(y1), "end");
  label((left + width - right) / 2, height - 12, x_label, "middle");

  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const char* color = palette[k % std::size(palette)];
    o << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    bool first = true;
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i]))
        continue;
      o << (first ? "" : " ") << coord(px(s.x[i])) << ',' << coord(py(s.y[i]));
      first = false;
    }
    o << "\"/>\n";
    const double ly = top + 16.0 * static_cast<double>(k);
    o << "<line x1=\"" << coord(width - right + 10) << "\" y1=\"" << coord(ly) << "\" x2=\""
      << coord(width - right + 30) << "\" y2=\"" << coord(ly) << "\" stroke=\"" << color
      << "\" stroke-width=\"1.5\"/>\n";
    label(width - right + 34, ly + 4, s.name, "start");
  }
  o << "</svg>\n";
  return o.str();
}

void write_file(const std::string& path, const std::string& text)
{
  const std::filesystem::path p(path);
  if (p.has_parent_path())
    std::filesystem::create_directories(p.parent_path());
  std::ofstream f(p, std::ios::binary);
  if (!f)
    throw std::runtime_error("cannot open " + path + " for writing");
  f << text;
  if (!f)
    throw std::runtime_error("cannot write " + path);
}

} // namespace leggett::cli
