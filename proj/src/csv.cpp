#include "geomopt/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>

namespace geomopt {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void CsvWriter::row(const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out_ << ',';
    out_ << csv_escape(fields[i]);
  }
  out_ << "\r\n";
}

std::optional<std::size_t> CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return i;
  return std::nullopt;
}

CsvTable parse_csv(std::istream& in) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool quoted = false;
  bool any = false;
  char c;
  auto end_record = [&] {
    record.push_back(field);
    field.clear();
    records.push_back(std::move(record));
    record.clear();
    any = false;
  };
  while (in.get(c)) {
    if (quoted) {
      if (c == '"') {
        if (in.peek() == '"') {
          in.get(c);
          field += '"';
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    if (c == '"') {
      quoted = true;
      any = true;
    } else if (c == ',') {
      record.push_back(field);
      field.clear();
      any = true;
    } else if (c == '\r') {
      if (in.peek() == '\n') in.get(c);
      end_record();
    } else if (c == '\n') {
      end_record();
    } else {
      field += c;
      any = true;
    }
  }
  if (quoted) throw std::runtime_error("CSV: unterminated quoted field");
  if (any || !field.empty() || !record.empty()) end_record();

  CsvTable table;
  if (records.empty()) throw std::runtime_error("CSV: missing header row");
  table.header = std::move(records.front());
  for (std::size_t i = 1; i < records.size(); ++i) {
    if (records[i].size() != table.header.size()) {
      throw std::runtime_error("CSV: record " + std::to_string(i + 1) + " has " +
                               std::to_string(records[i].size()) + " fields, header has " +
                               std::to_string(table.header.size()));
    }
    table.rows.push_back(std::move(records[i]));
  }
  return table;
}

CsvTable read_csv_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse_csv(in);
}

void write_gradient_csv(std::ostream& out, const std::vector<Vector>& gradients) {
  CsvWriter w(out);
  const Index d = gradients.empty() ? 0 : gradients.front().size();
  std::vector<std::string> header{"step"};
  for (Index j = 1; j <= d; ++j) header.push_back("g_" + std::to_string(j));
  w.row(header);
  for (std::size_t i = 0; i < gradients.size(); ++i) {
    std::vector<std::string> fields{std::to_string(i + 1)};
    for (Index j = 0; j < d; ++j) fields.push_back(format_double(gradients[i][j]));
    w.row(fields);
  }
}

}  // namespace geomopt
