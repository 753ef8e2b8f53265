#pragma once

#include <string>

#include "sg/diagram.hpp"

namespace sg {

// JSON document: {"edges":[{"id","weight","arcs"}...],
//                 "crossings":[{"over","under_in","under_out","sign"}...],
//                 "vertices":[{"id","incident":[{"arc","sign"}...]}...]}
// Signs are the integers 1 and -1. Reader throws invalid_input on anything
// malformed; structural validity is checked separately by validate().
Diagram diagram_from_json(const std::string& text);
std::string diagram_to_json(const Diagram& d);

// Reads the file (or stdin when path is "-").
Diagram load_diagram(const std::string& path);

}  // namespace sg
