#pragma once

#include <string>

#include "geomopt/csv.hpp"

namespace geomopt {

/// Renders a trace CSV (step,<names>) as lines on linear axes, or a sweep CSV
/// (d,n,rep,optimizer,final_metric,...) as the median final metric per
/// optimizer against n on log-log axes (against d when n is constant).
/// Returns an SVG document. Throws std::invalid_argument on unknown layouts.
std::string render_svg(const CsvTable& table, const std::string& title = "");

void plot_csv_file(const std::string& in_path, const std::string& out_path);

}  // namespace geomopt
