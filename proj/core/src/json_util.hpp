#pragma once

// Internal helpers shared by the JSON readers and writers.

#include "otfs/core_model.hpp"
#include "otfs/errors.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>

namespace otfs::detail {

using json = nlohmann::json;

inline json to_json_array(const Vector& v) {
    json a = json::array();
    for (double x : v) a.push_back(x);
    return a;
}

inline json to_json_rows(const Matrix& M) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < M.rows(); ++i) {
        json r = json::array();
        for (Eigen::Index j = 0; j < M.cols(); ++j) r.push_back(M(i, j));
        rows.push_back(std::move(r));
    }
    return rows;
}

inline const json& require(const json& obj, const std::string& key, const std::string& path) {
    if (!obj.is_object()) throw SchemaError(path, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) throw SchemaError(path.empty() ? key : path + "." + key, "missing required field");
    return *it;
}

inline std::string child(const std::string& path, const std::string& key) {
    return path.empty() ? key : path + "." + key;
}

inline std::string index_path(const std::string& path, std::size_t i) {
    return path + "[" + std::to_string(i) + "]";
}

inline double read_number(const json& j, const std::string& path) {
    if (!j.is_number()) throw SchemaError(path, "expected a number");
    return j.get<double>();
}

inline int read_int(const json& j, const std::string& path) {
    if (!j.is_number_integer()) throw SchemaError(path, "expected an integer");
    return j.get<int>();
}

inline Vector read_vector(const json& j, const std::string& path, Eigen::Index expected = -1) {
    if (!j.is_array()) throw SchemaError(path, "expected an array of numbers");
    if (expected >= 0 && static_cast<Eigen::Index>(j.size()) != expected)
        throw SchemaError(path, "expected " + std::to_string(expected) + " entries, got " +
                                    std::to_string(j.size()));
    Vector v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = read_number(j[i], index_path(path, i));
    return v;
}

inline Matrix read_rows(const json& j, const std::string& path, Eigen::Index rows, Eigen::Index cols) {
    if (!j.is_array()) throw SchemaError(path, "expected an array of rows");
    if (rows >= 0 && static_cast<Eigen::Index>(j.size()) != rows)
        throw SchemaError(path, "expected " + std::to_string(rows) + " rows, got " + std::to_string(j.size()));
    const Eigen::Index r = static_cast<Eigen::Index>(j.size());
    Matrix M(r, std::max<Eigen::Index>(cols, 0));
    for (Eigen::Index i = 0; i < r; ++i) {
        const auto row_path = index_path(path, static_cast<std::size_t>(i));
        Vector row = read_vector(j[static_cast<std::size_t>(i)], row_path, cols);
        M.row(i) = row.transpose();
    }
    return M;
}

inline json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
}

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

} // namespace otfs::detail
