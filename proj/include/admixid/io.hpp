#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "admixid/matrix.hpp"

namespace admixid {

// Comma-separated decimals, one matrix row per line, no header. A trailing
// newline is optional and CR before LF is tolerated. ParseError messages
// carry 1-based line and column (field) numbers; ragged rows give ShapeError.
Matrix parse_matrix(std::string_view text);
// Every entry printed with 17 significant digits, so parsing is lossless.
std::string format_matrix(const Matrix& m);

Matrix read_matrix(const std::filesystem::path& path);
void write_matrix(const std::filesystem::path& path, const Matrix& m);

}  // namespace admixid
