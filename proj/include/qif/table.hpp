#pragma once

#include <cstddef>
#include <istream>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "qif/mechanism.hpp"

namespace qif {

/// A header plus string cells. Cells are trimmed; case is preserved.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(std::string_view name) const;
};

/// Comma-separated, first row is the header, RFC 4180 double-quote escaping.
/// Throws ParseError on ragged rows or unterminated quotes.
Table read_csv(std::istream& in);
Table read_csv_file(const std::string& path);

/// Uniform offset noise: a numeric cell v is reported as v + r with
/// r uniform on {−radius, …, +radius}.
using NoiseSpec = std::map<std::string, int>;

/// One action per attribute column, one secret per row (labelled by the
/// secret column). Observations are the union of the columns' value sets in
/// attribute order; within a column values are sorted numerically when every
/// value is numeric, lexicographically otherwise.
///
/// Throws DuplicateSecretIds, NonNumericNoiseColumn, InvalidArgument.
Mechanism table_ingest(const Table& table, std::string_view secret_column,
                       const std::vector<std::string>& attribute_columns, const NoiseSpec& noise = {});

}  // namespace qif
