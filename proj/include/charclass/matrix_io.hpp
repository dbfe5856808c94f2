#pragma once

#include <cstdio>
#include <string>

#include <nlohmann/json.hpp>

#include "charclass/matrix.hpp"

namespace charclass {

/// Matrix file schema: {"n": N, "entries": [[[re, im], ...], ...]} with
/// N x N rows of [re, im] pairs; everything finite.
inline ComplexMatrix read_matrix_json(const std::string& text) {
    nlohmann::json doc = nlohmann::json::parse(text); // parse_error carries line/column
    if (!doc.is_object() || !doc.contains("n") || !doc.contains("entries"))
        throw std::invalid_argument("matrix file: expected object with \"n\" and \"entries\"");
    const int n = doc.at("n").get<int>();
    if (n <= 0) throw std::invalid_argument("matrix file: n must be positive");
    const auto& rows = doc.at("entries");
    if (!rows.is_array() || int(rows.size()) != n)
        throw std::invalid_argument("matrix file: expected " + std::to_string(n) + " rows");
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i) {
        const auto& row = rows.at(std::size_t(i));
        if (!row.is_array() || int(row.size()) != n)
            throw std::invalid_argument("matrix file: row " + std::to_string(i) + " must have " +
                                        std::to_string(n) + " [re, im] pairs");
        for (int j = 0; j < n; ++j) {
            const auto& cell = row.at(std::size_t(j));
            if (!cell.is_array() || cell.size() != 2 || !cell.at(0).is_number() ||
                !cell.at(1).is_number())
                throw std::invalid_argument("matrix file: entry (" + std::to_string(i) + "," +
                                            std::to_string(j) + ") must be [re, im]");
            m(i, j) = Complex(cell.at(0).get<double>(), cell.at(1).get<double>());
        }
    }
    if (!m.allFinite()) throw std::invalid_argument("matrix file: non-finite entry");
    return m;
}

inline std::string write_matrix_json(const ComplexMatrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            row.push_back({m(i, j).real(), m(i, j).imag()});
        rows.push_back(std::move(row));
    }
    nlohmann::json doc;
    doc["n"] = int(m.rows());
    doc["entries"] = std::move(rows);
    return doc.dump(2) + "\n";
}

/// "re +/- im i" with 15 significant digits.
inline std::string format_complex15(Complex z) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%.15g %c %.15g i", z.real(), z.imag() < 0 ? '-' : '+',
                  std::abs(z.imag()));
    return buf;
}

inline std::string format_sci(double x) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.3e", x);
    return buf;
}

} // namespace charclass
