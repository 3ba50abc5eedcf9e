#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace locrad {

/// Numeric table read from a comma-separated file. Blank lines and lines
/// starting with '#' are skipped; a first row that does not parse as numbers
/// is treated as a header.
struct NumericTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

NumericTable read_numeric_csv(const std::filesystem::path& path);
NumericTable parse_numeric_csv(std::string_view text);

/// Shortest round-trip text for a double ("%.17g", C locale).
std::string format_real(double value);

/// Splits on a delimiter and parses each field as a double.
std::vector<double> parse_real_list(std::string_view text, char delim = ',');

}  // namespace locrad
