#include "qif/table.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>

namespace qif {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

// Splits one logical CSV record; may consume extra physical lines when a
// quoted field spans them.
bool read_record(std::istream& in, std::vector<std::string>& fields, std::size_t& line_no) {
  fields.clear();
  std::string line;
  if (!std::getline(in, line)) return false;
  ++line_no;
  std::string field;
  bool quoted = false;
  bool was_quoted = false;
  std::size_t i = 0;
  for (;;) {
    if (i == line.size()) {
      if (!quoted) break;
      std::string more;
      if (!std::getline(in, more)) {
        throw Error(ErrorCode::ParseError, "unterminated quote on line " + std::to_string(line_no));
      }
      ++line_no;
      field += '\n';
      line = std::move(more);
      i = 0;
      continue;
    }
    const char c = line[i++];
    if (quoted) {
      if (c == '"') {
        if (i < line.size() && line[i] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
      was_quoted = true;
    } else if (c == ',') {
      fields.push_back(was_quoted ? field : trim(field));
      field.clear();
      was_quoted = false;
    } else {
      field += c;
    }
  }
  fields.push_back(was_quoted ? field : trim(field));
  return true;
}

std::optional<long long> parse_integer(const std::string& s) {
  long long v = 0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc{} || ptr != end || s.empty()) return std::nullopt;
  return v;
}

std::optional<double> parse_number(const std::string& s) {
  if (s.empty()) return std::nullopt;
  std::istringstream in(s);
  double v = 0.0;
  in >> v;
  if (in.fail()) return std::nullopt;
  char extra;
  if (in >> extra) return std::nullopt;
  return v;
}

// Distinct values of one column in the canonical observation order.
std::vector<std::string> ordered_values(std::vector<std::string> values) {
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  const bool numeric = std::all_of(values.begin(), values.end(),
                                   [](const std::string& v) { return parse_number(v).has_value(); });
  if (numeric) {
    std::stable_sort(values.begin(), values.end(), [](const std::string& a, const std::string& b) {
      return *parse_number(a) < *parse_number(b);
    });
  }
  return values;
}

}  // namespace

std::size_t Table::column(std::string_view name) const {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) throw Error(ErrorCode::InvalidArgument, "no column '" + std::string(name) + "'");
  return static_cast<std::size_t>(it - header.begin());
}

Table read_csv(std::istream& in) {
  Table table;
  std::size_t line_no = 0;
  if (!read_record(in, table.header, line_no)) throw Error(ErrorCode::ParseError, "empty CSV input");
  // Strip a UTF-8 byte-order mark from the first header cell.
  if (!table.header.empty() && table.header[0].rfind("\xEF\xBB\xBF", 0) == 0) {
    table.header[0] = trim(table.header[0].substr(3));
  }
  std::vector<std::string> fields;
  while (read_record(in, fields, line_no)) {
    if (fields.size() == 1 && fields[0].empty()) continue;
    if (fields.size() != table.header.size()) {
      throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + " has " +
                                             std::to_string(fields.size()) + " fields, expected " +
                                             std::to_string(table.header.size()));
    }
    table.rows.push_back(fields);
  }
  return table;
}

Table read_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
  return read_csv(in);
}

Mechanism table_ingest(const Table& table, std::string_view secret_column,
                       const std::vector<std::string>& attribute_columns, const NoiseSpec& noise) {
  if (attribute_columns.empty()) throw Error(ErrorCode::InvalidArgument, "no attribute columns");
  if (table.rows.empty()) throw Error(ErrorCode::InvalidArgument, "table has no rows");
  for (const auto& [col, radius] : noise) {
    if (std::find(attribute_columns.begin(), attribute_columns.end(), col) == attribute_columns.end()) {
      throw Error(ErrorCode::InvalidArgument, "noise column '" + col + "' is not an attribute");
    }
    if (radius < 0) throw Error(ErrorCode::InvalidArgument, "noise radius must be >= 0");
  }

  const auto secret_col = table.column(secret_column);
  std::vector<std::string> secrets;
  std::set<std::string> seen;
  for (const auto& row : table.rows) {
    if (!seen.insert(row[secret_col]).second) {
      throw Error(ErrorCode::DuplicateSecretIds, "secret '" + row[secret_col] + "' appears twice");
    }
    secrets.push_back(row[secret_col]);
  }

  // Per attribute: the observation label each row emits, with its probability.
  struct Emission {
    std::vector<std::vector<std::pair<std::string, double>>> per_row;
    std::vector<std::string> labels;
  };
  std::vector<Emission> emissions;
  for (const auto& attr : attribute_columns) {
    const auto col = table.column(attr);
    Emission e;
    const auto noisy = noise.find(attr);
    std::vector<std::string> labels;
    for (const auto& row : table.rows) {
      std::vector<std::pair<std::string, double>> out;
      if (noisy == noise.end() || noisy->second == 0) {
        out.emplace_back(row[col], 1.0);
      } else {
        const auto value = parse_integer(row[col]);
        if (!value) {
          throw Error(ErrorCode::NonNumericNoiseColumn,
                      "column '" + attr + "' has non-integer cell '" + row[col] + "'");
        }
        const int w = noisy->second;
        const double p = 1.0 / static_cast<double>(2 * w + 1);
        for (int r = -w; r <= w; ++r) out.emplace_back(std::to_string(*value + r), p);
      }
      for (const auto& [label, p] : out) labels.push_back(label);
      e.per_row.push_back(std::move(out));
    }
    e.labels = ordered_values(std::move(labels));
    emissions.push_back(std::move(e));
  }

  std::vector<std::string> observations;
  for (const auto& e : emissions) {
    for (const auto& label : e.labels) {
      if (std::find(observations.begin(), observations.end(), label) == observations.end()) {
        observations.push_back(label);
      }
    }
  }

  std::vector<ActionMatrix> actions;
  for (std::size_t a = 0; a < attribute_columns.size(); ++a) {
    ActionMatrix m{attribute_columns[a], {}};
    for (const auto& out : emissions[a].per_row) {
      std::vector<double> r(observations.size(), 0.0);
      for (const auto& [label, p] : out) {
        const auto y = static_cast<std::size_t>(
            std::find(observations.begin(), observations.end(), label) - observations.begin());
        r[y] += p;
      }
      m.rows.push_back(std::move(r));
    }
    actions.push_back(std::move(m));
  }

  // Numeric secret ids double as the encoding used by the variance measure.
  std::optional<std::vector<double>> values;
  std::vector<double> numeric;
  for (const auto& s : secrets) {
    if (auto v = parse_number(s)) numeric.push_back(*v);
  }
  if (numeric.size() == secrets.size()) values = std::move(numeric);

  return Mechanism(std::move(secrets), std::move(observations), std::move(actions), std::move(values));
}

}  // namespace qif
