#pragma once

#include <map>
#include <string>
#include <vector>

#include "sg/diagram.hpp"
#include "sg/laurent.hpp"

namespace sg {

// Word in the free group on arc generators; exponents are +-1.
struct GroupWord {
    std::vector<std::pair<std::string, int>> letters;
    bool operator==(const GroupWord&) const = default;
    bool operator<(const GroupWord& o) const { return letters < o.letters; }
};

GroupWord free_reduce(const GroupWord& w);

// Finitely supported Z-combination of freely reduced words.
using GroupRingElem = std::map<GroupWord, long long>;

struct WirtingerPresentation {
    std::vector<std::string> generators;  // arcs in canonical order
    std::vector<GroupWord> relations;     // crossings in order, then vertices
    std::vector<std::string> relation_labels;
};

// One relation per crossing (sign +1: b c b^-1 a^-1, sign -1: b^-1 c b a^-1,
// a = under_in, c = under_out, b = over) and one per vertex (a1^e1 ... an^en).
WirtingerPresentation wirtinger_presentation(const Diagram& d);

// Fox free derivative: d(a_i)/d(a_j) = delta_ij, d(gh) = dg + g dh,
// d(g^-1) = -g^-1 dg. Keys are freely reduced.
GroupRingElem fox_derivative(const GroupWord& w, const std::string& generator);

// chi sends each generator to t^(weight of its edge).
LaurentPoly augment(const GroupWord& w, const std::map<std::string, long long>& arc_weight);
LaurentPoly augment(const GroupRingElem& x, const std::map<std::string, long long>& arc_weight);

// arc id -> weight of its edge.
std::map<std::string, long long> arc_weights(const Diagram& d);

struct AlexMatrix {
    std::vector<std::vector<LaurentPoly>> entries;
    std::vector<std::string> row_labels;  // relation labels
    std::vector<std::string> col_arcs;    // arc ids in canonical order
    std::size_t rows() const { return entries.size(); }
    std::size_t cols() const { return entries.empty() ? 0 : entries.front().size(); }
};

// (c+v) x (c+e) matrix of augmented Fox derivatives of the presentation.
AlexMatrix alexander_matrix(const Diagram& d);

// Same matrix filled from the closed-form crossing and vertex rows:
// positive crossing: -1 at a, 1-t^w2 at b, t^w1 at c;
// negative crossing: -1 at a, -t^-w1 + t^(-w1+w2) at b, t^-w1 at c;
// vertex: e_i * t^(m_i) at a_i, m_i = sum_(j<i) e_j w_j + min(e_i, 0) w_i.
// Coinciding arcs accumulate additively.
AlexMatrix closed_form_matrix(const Diagram& d);

}  // namespace sg
