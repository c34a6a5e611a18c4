#pragma once

#include <istream>
#include <string>
#include <vector>

#include "oriflag/flags.hpp"

namespace oriflag {

// Whitespace-separated rows, blank lines between matrices, '#' starts a comment.
// Input starting with '{' or '[' is read as JSON: {"rows": [[...]]} or a list of those.
std::vector<Matrix> read_matrices(std::istream& in);
std::vector<Matrix> read_matrices_file(const std::string& path);
Matrix read_matrix_file(const std::string& path);

std::string format_matrix(const Matrix& m);

}  // namespace oriflag
