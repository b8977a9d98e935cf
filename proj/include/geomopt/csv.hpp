#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "geomopt/adversaries.hpp"

namespace geomopt {

/// %.17g; "inf", "-inf" and "nan" for non-finite values.
std::string format_double(double x);

/// Quotes a field when it contains a comma, quote or line break (RFC 4180).
std::string csv_escape(const std::string& field);

/// Writes CRLF-terminated records.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}
  void row(const std::vector<std::string>& fields);

 private:
  std::ostream& out_;
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Column index by header name.
  std::optional<std::size_t> column(const std::string& name) const;
};

CsvTable parse_csv(std::istream& in);
CsvTable read_csv_file(const std::string& path);

/// Header step,g_1,...,g_d; steps are 1-based.
void write_gradient_csv(std::ostream& out, const std::vector<Vector>& gradients);

}  // namespace geomopt
