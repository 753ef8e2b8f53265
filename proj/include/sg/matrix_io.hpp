#pragma once

#include <string>

#include "sg/wirtinger.hpp"

namespace sg {

// An Alexander matrix given directly, with the diagram counts it came from.
// Dimensions must satisfy rows = c+v, cols = c+e.
struct RawMatrix {
    long long c = 0;
    long long v = 0;
    long long e = 0;
    AlexMatrix mat;
};

// JSON object {"c": , "v": , "e": , "rows": [[entry text, ...], ...]}
// with optional "row_labels" and "col_arcs" string arrays.
RawMatrix raw_matrix_from_json(const std::string& text);

std::string raw_matrix_to_json(const RawMatrix& m);

// Reads from a file path, or stdin when path is "-".
RawMatrix load_raw_matrix(const std::string& path);

}  // namespace sg
