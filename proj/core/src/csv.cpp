#include "locrad/csv.hpp"

#include "locrad/error.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace locrad {
namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view line, char delim) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(delim, start);
        fields.push_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return fields;
}

bool parse_double(std::string_view field, double& out) {
    if (field.empty()) return false;
    if (field.front() == '+') field.remove_prefix(1);
    const auto* end = field.data() + field.size();
    const auto res = std::from_chars(field.data(), end, out);
    return res.ec == std::errc{} && res.ptr == end;
}

}  // namespace

NumericTable parse_numeric_csv(std::string_view text) {
    NumericTable table;
    std::size_t line_no = 0;
    std::size_t start = 0;
    bool first_content = true;
    while (start <= text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        const auto line = trim(text.substr(start, end - start));
        ++line_no;
        start = end + 1;
        if (line.empty() || line.front() == '#') {
            if (end == text.size()) break;
            continue;
        }
        const auto fields = split(line, ',');
        std::vector<double> row;
        row.reserve(fields.size());
        bool numeric = true;
        for (auto f : fields) {
            double v = 0.0;
            if (!parse_double(f, v)) {
                numeric = false;
                break;
            }
            row.push_back(v);
        }
        if (!numeric) {
            if (!first_content) {
                throw IoError("non-numeric field on line " + std::to_string(line_no));
            }
            for (auto f : fields) table.header.emplace_back(f);
        } else {
            if (!table.rows.empty() && row.size() != table.rows.front().size()) {
                throw IoError("ragged row on line " + std::to_string(line_no));
            }
            table.rows.push_back(std::move(row));
        }
        first_content = false;
        if (end == text.size()) break;
    }
    if (!table.header.empty() && !table.rows.empty() && table.header.size() != table.rows.front().size()) {
        throw IoError("header has " + std::to_string(table.header.size()) + " columns, rows have " +
                      std::to_string(table.rows.front().size()));
    }
    return table;
}

NumericTable read_numeric_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_numeric_csv(buf.str());
}

std::string format_real(double value) {
    char buf[32];
    const int len = std::snprintf(buf, sizeof buf, "%.17g", value);
    return std::string(buf, static_cast<std::size_t>(len));
}

std::vector<double> parse_real_list(std::string_view text, char delim) {
    std::vector<double> out;
    if (trim(text).empty()) return out;
    for (auto f : split(text, delim)) {
        double v = 0.0;
        if (!parse_double(f, v)) throw InvalidArgument("not a number: '" + std::string(f) + "'");
        out.push_back(v);
    }
    return out;
}

}  // namespace locrad
