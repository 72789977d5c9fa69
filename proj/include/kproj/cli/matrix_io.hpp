#pragma once

// MatrixFile text format:
//   {"rows": m, "cols": n, "data": [[[re, im], ...], ...]}
// Entries are written with 17 significant digits, so every double survives a
// write/read round trip bit-exactly.

#include <stdexcept>
#include <string>
#include <string_view>

#include "kproj/numcore.hpp"

namespace kproj::cli {

/// Unreadable, unwritable or malformed files.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string format_matrix(const CMatrix& a);

/// Throws IoError on malformed text, shape mismatch or non-finite entries.
CMatrix parse_matrix(std::string_view text);

CMatrix read_matrix_file(const std::string& path);
void write_matrix_file(const std::string& path, const CMatrix& a);

std::string read_text_file(const std::string& path);

/// Writes to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::string& path, std::string_view content);

}  // namespace kproj::cli
