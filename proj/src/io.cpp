#include "admixid/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace admixid {

namespace {

std::string location(std::size_t line, std::size_t column) {
    return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

double parse_field(std::string_view field, std::size_t line, std::size_t column) {
    field = trim(field);
    if (!field.empty() && field.front() == '+') field.remove_prefix(1);
    double value = 0.0;
    const auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (field.empty() || ec != std::errc() || end != field.data() + field.size()) {
        throw Error(ErrorKind::ParseError,
                    location(line, column) + ": cannot read '" + std::string(field) + "' as a number");
    }
    if (!std::isfinite(value)) {
        throw Error(ErrorKind::ParseError, location(line, column) + ": non-finite value");
    }
    return value;
}

}  // namespace

Matrix parse_matrix(std::string_view text) {
    std::vector<std::vector<double>> rows;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const std::size_t eol = text.find('\n');
        std::string_view line = text.substr(0, eol);
        text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
        ++line_no;
        if (trim(line).empty()) {
            // Only trailing blank lines are allowed.
            if (trim(text).empty()) break;
            throw Error(ErrorKind::ParseError, location(line_no, 1) + ": empty line");
        }
        std::vector<double> row;
        std::size_t column = 0;
        while (true) {
            const std::size_t comma = line.find(',');
            row.push_back(parse_field(line.substr(0, comma), line_no, ++column));
            if (comma == std::string_view::npos) break;
            line.remove_prefix(comma + 1);
        }
        if (!rows.empty() && row.size() != rows.front().size()) {
            throw Error(ErrorKind::ShapeError, "line " + std::to_string(line_no) + " has " +
                                                   std::to_string(row.size()) + " fields, expected " +
                                                   std::to_string(rows.front().size()));
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw Error(ErrorKind::ParseError, "no rows");

    Matrix m(static_cast<Index>(rows.size()), static_cast<Index>(rows.front().size()));
    for (Index r = 0; r < m.rows(); ++r) {
        for (Index c = 0; c < m.cols(); ++c) m(r, c) = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
    }
    return m;
}

std::string format_matrix(const Matrix& m) {
    std::string out;
    char buffer[32];
    for (Index r = 0; r < m.rows(); ++r) {
        for (Index c = 0; c < m.cols(); ++c) {
            if (c > 0) out += ',';
            std::snprintf(buffer, sizeof buffer, "%.17g", m(r, c) == 0.0 ? 0.0 : m(r, c));
            out += buffer;
        }
        out += '\n';
    }
    return out;
}

Matrix read_matrix(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::IoError, "cannot open " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    try {
        return parse_matrix(buffer.str());
    } catch (const Error& e) {
        throw Error(e.kind(), path.string() + ": " + e.detail());
    }
}

void write_matrix(const std::filesystem::path& path, const Matrix& m) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::IoError, "cannot write " + path.string());
    out << format_matrix(m);
    if (!out) throw Error(ErrorKind::IoError, "write failed for " + path.string());
}

}  // namespace admixid
