#pragma once

// Matrix, vector and kernel-grid file formats.
//
//   CSV matrix:   one row per line, comma-separated decimal literals
//                 (scientific notation allowed), rectangular, all >= 0.
//   JSON matrix:  {"matrix": [[...], ...]}
//   Kernel grid:  {"nodes": [...], "weights": [...], "values": [[...], ...]}

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "conegeom/cone_core.hpp"
#include "conegeom/error.hpp"
#include "conegeom/kernel_analysis.hpp"
#include "conegeom/matrix_analysis.hpp"

namespace conegeom::io {

using Rows = std::vector<std::vector<double>>;

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

inline double parse_literal(std::string_view field, const std::string& where) {
    field = trim(field);
    if (!field.empty() && field.front() == '+')
        field.remove_prefix(1);
    if (field.empty())
        throw Error(ErrorCode::parse_error, "empty numeric field", where);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size())
        throw Error(ErrorCode::parse_error, "not a decimal literal: '" + std::string(field) + "'", where);
    if (!std::isfinite(value))
        throw Error(ErrorCode::parse_error, "non-finite literal: '" + std::string(field) + "'", where);
    if (value < 0.0 || field.front() == '-') {
        if (value != 0.0)
            throw Error(ErrorCode::negative_entry, "negative literal: '" + std::string(field) + "'", where);
        value = 0.0; // "-0"
    }
    return value;
}

inline void require_rectangular(const Rows& rows) {
    if (rows.empty())
        throw Error(ErrorCode::parse_error, "no rows");
    for (std::size_t i = 0; i < rows.size(); ++i)
        if (rows[i].size() != rows.front().size())
            throw Error(ErrorCode::parse_error, "rows have different lengths", "row " + std::to_string(i + 1));
}

inline double json_number(const nlohmann::json& v, const std::string& where) {
    if (!v.is_number())
        throw Error(ErrorCode::parse_error, "expected a number", where);
    const double x = v.get<double>();
    if (!std::isfinite(x))
        throw Error(ErrorCode::parse_error, "non-finite number", where);
    if (x < 0.0)
        throw Error(ErrorCode::negative_entry, "negative number", where);
    return x;
}

inline std::vector<double> json_vector(const nlohmann::json& v, const std::string& where) {
    if (!v.is_array())
        throw Error(ErrorCode::parse_error, "expected an array", where);
    std::vector<double> out;
    out.reserve(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        out.push_back(json_number(v[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

inline Rows json_rows(const nlohmann::json& v, const std::string& where) {
    if (!v.is_array())
        throw Error(ErrorCode::parse_error, "expected an array of rows", where);
    Rows rows;
    for (std::size_t i = 0; i < v.size(); ++i)
        rows.push_back(json_vector(v[i], where + "[" + std::to_string(i) + "]"));
    require_rectangular(rows);
    return rows;
}

inline nlohmann::json parse_json_text(std::string_view text) {
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::parse_error, e.what(), "byte " + std::to_string(e.byte));
    }
}

} // namespace detail

/// Comma-separated vector literal, e.g. "1,2,0.5".
inline std::vector<double> parse_vector_literal(std::string_view text) {
    std::vector<double> out;
    std::size_t field = 1;
    while (true) {
        const auto comma = text.find(',');
        out.push_back(detail::parse_literal(text.substr(0, comma), "field " + std::to_string(field)));
        if (comma == std::string_view::npos)
            break;
        text.remove_prefix(comma + 1);
        ++field;
    }
    return out;
}

inline Rows parse_csv(std::string_view text) {
    Rows rows;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
        ++line_no;
        line = detail::trim(line);
        if (line.empty())
            continue;
        std::vector<double> row;
        std::size_t field = 1;
        while (true) {
            const auto comma = line.find(',');
            row.push_back(detail::parse_literal(line.substr(0, comma),
                                                "line " + std::to_string(line_no) + ", field " + std::to_string(field)));
            if (comma == std::string_view::npos)
                break;
            line.remove_prefix(comma + 1);
            ++field;
        }
        if (!rows.empty() && row.size() != rows.front().size())
            throw Error(ErrorCode::parse_error, "rows have different lengths", "line " + std::to_string(line_no));
        rows.push_back(std::move(row));
    }
    detail::require_rectangular(rows);
    return rows;
}

inline Rows parse_json_matrix(std::string_view text) {
    const auto doc = detail::parse_json_text(text);
    if (!doc.is_object() || !doc.contains("matrix"))
        throw Error(ErrorCode::parse_error, "expected an object with a \"matrix\" field");
    return detail::json_rows(doc["matrix"], "matrix");
}

/// Dispatches on content: a leading '{' means JSON, anything else CSV.
inline Rows parse_rows(std::string_view text) {
    const auto body = detail::trim(text);
    if (!body.empty() && body.front() == '{')
        return parse_json_matrix(body);
    return parse_csv(text);
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorCode::io_error, "cannot open file", path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline Rows read_rows(const std::string& path) {
    try {
        return parse_rows(read_file(path));
    } catch (const Error& e) {
        throw Error(e.code(), e.what(), e.location().empty() ? path : path + ": " + e.location());
    }
}

inline NonnegativeMatrix read_matrix(const std::string& path) { return NonnegativeMatrix(read_rows(path)); }

/// 17 significant digits, enough to read back the same double.
inline std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string to_csv(const NonnegativeMatrix& m) {
    std::string out;
    for (std::size_t i = 0; i < m.dim(); ++i) {
        for (std::size_t j = 0; j < m.dim(); ++j) {
            if (j)
                out += ',';
            out += format_double(m(i, j));
        }
        out += '\n';
    }
    return out;
}

inline std::string to_json(const NonnegativeMatrix& m) { return nlohmann::json{{"matrix", m.rows()}}.dump(); }

inline KernelGrid parse_kernel_grid(std::string_view text) {
    const auto doc = detail::parse_json_text(text);
    if (!doc.is_object())
        throw Error(ErrorCode::parse_error, "kernel grid must be a JSON object");
    for (const char* key : {"nodes", "weights", "values"})
        if (!doc.contains(key))
            throw Error(ErrorCode::parse_error, std::string("kernel grid is missing \"") + key + "\"");
    return KernelGrid(detail::json_vector(doc["nodes"], "nodes"), detail::json_vector(doc["weights"], "weights"),
                      detail::json_rows(doc["values"], "values"));
}

inline std::string to_json(const KernelGrid& grid) {
    return nlohmann::json{{"nodes", grid.nodes()}, {"weights", grid.weights()}, {"values", grid.values()}}.dump();
}

} // namespace conegeom::io
