#include "sg/matrix_io.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "sg/errors.hpp"
#include "sg/laurent.hpp"

namespace sg {

namespace {

using nlohmann::json;
using ordered = nlohmann::ordered_json;

long long expect_count(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) throw invalid_input(std::string("raw matrix: missing key \"") + key + "\"");
    if (!it->is_number_integer() || it->get<long long>() < 0)
        throw invalid_input(std::string("raw matrix: \"") + key + "\" must be a nonnegative integer");
    return it->get<long long>();
}

std::vector<std::string> expect_string_array(const json& v, const char* key, std::size_t want) {
    if (!v.is_array() || v.size() != want)
        throw invalid_input(std::string("raw matrix: \"") + key + "\" must be an array of " +
                            std::to_string(want) + " strings");
    std::vector<std::string> out;
    for (const auto& s : v) {
        if (!s.is_string())
            throw invalid_input(std::string("raw matrix: \"") + key + "\" entries must be strings");
        out.push_back(s.get<std::string>());
    }
    return out;
}

}  // namespace

RawMatrix raw_matrix_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw invalid_input(std::string("raw matrix JSON: ") + e.what());
    }
    if (!j.is_object()) throw invalid_input("raw matrix JSON: top level must be an object");
    for (const auto& [key, val] : j.items())
        if (key != "c" && key != "v" && key != "e" && key != "rows" && key != "row_labels" &&
            key != "col_arcs")
            throw invalid_input("raw matrix JSON: unknown key \"" + key + "\"");

    RawMatrix m;
    m.c = expect_count(j, "c");
    m.v = expect_count(j, "v");
    m.e = expect_count(j, "e");
    auto rows_it = j.find("rows");
    if (rows_it == j.end() || !rows_it->is_array())
        throw invalid_input("raw matrix: missing \"rows\" array");
    std::size_t want_rows = static_cast<std::size_t>(m.c + m.v);
    std::size_t want_cols = static_cast<std::size_t>(m.c + m.e);
    if (rows_it->size() != want_rows)
        throw invalid_input("raw matrix: expected " + std::to_string(want_rows) + " rows, got " +
                            std::to_string(rows_it->size()));
    for (const auto& row : *rows_it) {
        if (!row.is_array() || row.size() != want_cols)
            throw invalid_input("raw matrix: every row must have " + std::to_string(want_cols) +
                                " entries");
        std::vector<LaurentPoly> out;
        for (const auto& cell : row) {
            if (!cell.is_string())
                throw invalid_input("raw matrix: entries must be Laurent polynomial strings");
            out.push_back(parse_laurent(cell.get<std::string>()));
        }
        m.mat.entries.push_back(std::move(out));
    }
    if (auto it = j.find("row_labels"); it != j.end())
        m.mat.row_labels = expect_string_array(*it, "row_labels", want_rows);
    if (auto it = j.find("col_arcs"); it != j.end())
        m.mat.col_arcs = expect_string_array(*it, "col_arcs", want_cols);
    return m;
}

std::string raw_matrix_to_json(const RawMatrix& m) {
    ordered j;
    j["c"] = m.c;
    j["v"] = m.v;
    j["e"] = m.e;
    ordered rows = ordered::array();
    for (const auto& row : m.mat.entries) {
        ordered r = ordered::array();
        for (const auto& cell : row) r.push_back(to_string(cell));
        rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    if (!m.mat.row_labels.empty()) j["row_labels"] = m.mat.row_labels;
    if (!m.mat.col_arcs.empty()) j["col_arcs"] = m.mat.col_arcs;
    return j.dump(2) + "\n";
}

RawMatrix load_raw_matrix(const std::string& path) {
    std::string text;
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        text = ss.str();
    } else {
        std::ifstream in(path);
        if (!in) throw invalid_input("cannot open file: " + path);
        std::ostringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    return raw_matrix_from_json(text);
}

}  // namespace sg
