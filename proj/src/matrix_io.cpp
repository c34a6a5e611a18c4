#include "oriflag/matrix_io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include "json.hpp"
#include "oriflag/errors.hpp"

namespace oriflag {

namespace {

Matrix from_rows(const std::vector<std::vector<double>>& rows) {
    require(!rows.empty(), ErrorCode::ParseError, "empty matrix");
    Matrix m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        require(rows[i].size() == rows[0].size(), ErrorCode::ParseError, "ragged matrix rows");
        for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
    }
    return m;
}

Matrix from_json(const nlohmann::json& j) {
    const auto& rows = j.is_object() ? j.at("rows") : j;
    return from_rows(rows.get<std::vector<std::vector<double>>>());
}

}  // namespace

std::vector<Matrix> read_matrices(std::istream& in) {
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    const auto first = text.find_first_not_of(" \t\r\n");
    std::vector<Matrix> out;
    if (first != std::string::npos && (text[first] == '{' || text[first] == '[')) {
        try {
            const auto j = nlohmann::json::parse(text);
            if (j.is_array() && !j.empty() && j[0].is_object())
                for (const auto& m : j) out.push_back(from_json(m));
            else
                out.push_back(from_json(j));
        } catch (const nlohmann::json::exception& e) {
            fail(ErrorCode::ParseError, std::string("matrix JSON: ") + e.what());
        }
        return out;
    }
    std::vector<std::vector<double>> rows;
    std::istringstream lines(text);
    std::string line;
    int lineno = 0;
    while (std::getline(lines, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::vector<double> row;
        std::string tok;
        while (ls >> tok) {
            try {
                std::size_t used = 0;
                row.push_back(std::stod(tok, &used));
                require(used == tok.size(), ErrorCode::ParseError, "");
            } catch (const std::exception&) {
                fail(ErrorCode::ParseError, "line " + std::to_string(lineno) + ": bad number '" + tok + "'");
            }
        }
        if (row.empty()) {
            if (!rows.empty()) out.push_back(from_rows(rows));
            rows.clear();
        } else {
            rows.push_back(std::move(row));
        }
    }
    if (!rows.empty()) out.push_back(from_rows(rows));
    return out;
}

std::vector<Matrix> read_matrices_file(const std::string& path) {
    std::ifstream in(path);
    require(bool(in), ErrorCode::ParseError, "cannot open " + path);
    return read_matrices(in);
}

Matrix read_matrix_file(const std::string& path) {
    auto ms = read_matrices_file(path);
    require(ms.size() == 1, ErrorCode::ParseError, path + ": expected exactly one matrix");
    return ms[0];
}

std::string format_matrix(const Matrix& m) {
    std::ostringstream out;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) out << (j ? " " : "") << std::setw(3) << m(i, j);
        out << "\n";
    }
    return out.str();
}

}  // namespace oriflag
