#include "geomopt/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "geomopt/harness.hpp"

namespace geomopt {

namespace {

struct Series {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
};

constexpr double kWidth = 720, kHeight = 480;
constexpr double kLeft = 70, kRight = 170, kTop = 40, kBottom = 50;

const char* color(std::size_t i) {
  static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                  "#9467bd", "#8c564b", "#e377c2", "#17becf"};
  return palette[i % 8];
}

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

double parse_field(const std::string& s) {
  if (s.empty()) return std::nan("");
  try {
    return std::stod(s);
  } catch (const std::exception&) {
    return std::nan("");
  }
}

std::string draw(const std::vector<Series>& series, bool log_axes, const std::string& xlabel,
                 const std::string& ylabel, const std::string& title) {
  double xmin = kInfinity, xmax = -kInfinity, ymin = kInfinity, ymax = -kInfinity;
  auto tx = [&](double v) { return log_axes ? std::log10(v) : v; };
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      if (log_axes && (s.x[i] <= 0 || s.y[i] <= 0)) continue;
      xmin = std::min(xmin, tx(s.x[i]));
      xmax = std::max(xmax, tx(s.x[i]));
      ymin = std::min(ymin, tx(s.y[i]));
      ymax = std::max(ymax, tx(s.y[i]));
    }
  }
  if (!std::isfinite(xmin)) {
    xmin = ymin = 0;
    xmax = ymax = 1;
  }
  if (xmax == xmin) xmax = xmin + 1;
  if (ymax == ymin) {
    ymin -= 0.5;
    ymax += 0.5;
  }
  const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
  auto px = [&](double v) { return kLeft + (tx(v) - xmin) / (xmax - xmin) * pw; };
  auto py = [&](double v) { return kTop + ph - (tx(v) - ymin) / (ymax - ymin) * ph; };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
     << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!title.empty()) {
    os << "<text x=\"" << kLeft + pw / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
       << xml_escape(title) << "</text>\n";
  }
  os << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\"" << ph
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double fx = xmin + (xmax - xmin) * k / 4.0, fy = ymin + (ymax - ymin) * k / 4.0;
    const double lx = log_axes ? std::pow(10.0, fx) : fx, ly = log_axes ? std::pow(10.0, fy) : fy;
    const double sx = kLeft + pw * k / 4.0, sy = kTop + ph - ph * k / 4.0;
    os << "<text x=\"" << sx << "\" y=\"" << kTop + ph + 16 << "\" text-anchor=\"middle\">"
       << num(lx) << "</text>\n";
    os << "<text x=\"" << kLeft - 6 << "\" y=\"" << sy + 4 << "\" text-anchor=\"end\">" << num(ly)
       << "</text>\n";
  }
  os << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kHeight - 10
     << "\" text-anchor=\"middle\">" << xml_escape(xlabel) << "</text>\n";
  os << "<text x=\"16\" y=\"" << kTop + ph / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
     << kTop + ph / 2 << ")\">" << xml_escape(ylabel) << "</text>\n";

  for (std::size_t s = 0; s < series.size(); ++s) {
    os << "<polyline fill=\"none\" stroke=\"" << color(s) << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < series[s].x.size(); ++i) {
      const double x = series[s].x[i], y = series[s].y[i];
      if (!std::isfinite(x) || !std::isfinite(y) || (log_axes && (x <= 0 || y <= 0))) continue;
      os << px(x) << "," << py(y) << " ";
    }
    os << "\"/>\n";
    const double ly = kTop + 10 + 18.0 * static_cast<double>(s);
    os << "<line x1=\"" << kWidth - kRight + 12 << "\" y1=\"" << ly << "\" x2=\""
       << kWidth - kRight + 32 << "\" y2=\"" << ly << "\" stroke=\"" << color(s)
       << "\" stroke-width=\"2\"/>\n";
    os << "<text x=\"" << kWidth - kRight + 38 << "\" y=\"" << ly + 4 << "\">"
       << xml_escape(series[s].name) << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace

std::string render_svg(const CsvTable& table, const std::string& title) {
  if (auto step = table.column("step")) {
    std::vector<Series> series;
    for (std::size_t c = 0; c < table.header.size(); ++c) {
      if (c == *step) continue;
      Series s{table.header[c], {}, {}};
      for (const auto& row : table.rows) {
        if (row.size() != table.header.size()) throw std::invalid_argument("ragged CSV row");
        s.x.push_back(parse_field(row[*step]));
        s.y.push_back(parse_field(row[c]));
      }
      series.push_back(std::move(s));
    }
    return draw(series, false, "step", "metric", title);
  }
  const auto cd = table.column("d"), cn = table.column("n"), co = table.column("optimizer"),
             cm = table.column("final_metric");
  if (!cd || !cn || !co || !cm) {
    throw std::invalid_argument("unrecognized CSV layout: expected a step column or sweep columns");
  }
  std::map<std::string, std::map<double, std::vector<double>>> groups;
  std::vector<std::string> order;
  std::vector<double> ns;
  for (const auto& row : table.rows) {
    if (row.size() != table.header.size()) throw std::invalid_argument("ragged CSV row");
    ns.push_back(parse_field(row[*cn]));
  }
  const bool n_constant =
      !ns.empty() && std::all_of(ns.begin(), ns.end(), [&](double v) { return v == ns[0]; });
  for (const auto& row : table.rows) {
    const std::string& name = row[*co];
    if (!groups.count(name)) order.push_back(name);
    const double x = parse_field(row[n_constant ? *cd : *cn]);
    groups[name][x].push_back(parse_field(row[*cm]));
  }
  std::vector<Series> series;
  for (const auto& name : order) {
    Series s{name, {}, {}};
    for (const auto& [x, ys] : groups[name]) {
      s.x.push_back(x);
      s.y.push_back(median(ys));
    }
    series.push_back(std::move(s));
  }
  return draw(series, true, n_constant ? "d" : "n", "median final metric", title);
}

void plot_csv_file(const std::string& in_path, const std::string& out_path) {
  const CsvTable table = read_csv_file(in_path);
  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot open " + out_path + " for writing");
  out << render_svg(table, in_path.substr(in_path.find_last_of('/') + 1));
  if (!out) throw std::runtime_error("write failed: " + out_path);
}

}  // namespace geomopt
