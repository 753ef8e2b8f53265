#include "sg/wirtinger.hpp"

#include <algorithm>

#include "sg/errors.hpp"

namespace sg {

GroupWord free_reduce(const GroupWord& w) {
    GroupWord r;
    for (const auto& letter : w.letters) {
        if (!r.letters.empty() && r.letters.back().first == letter.first &&
            r.letters.back().second == -letter.second)
            r.letters.pop_back();
        else
            r.letters.push_back(letter);
    }
    return r;
}

WirtingerPresentation wirtinger_presentation(const Diagram& d) {
    require_valid(d);
    WirtingerPresentation p;
    p.generators = d.arc_order();
    for (std::size_t i = 0; i < d.crossings.size(); ++i) {
        const Crossing& c = d.crossings[i];
        GroupWord w;
        if (c.sign == 1)
            w.letters = {{c.over, +1}, {c.under_out, +1}, {c.over, -1}, {c.under_in, -1}};
        else
            w.letters = {{c.over, -1}, {c.under_out, +1}, {c.over, +1}, {c.under_in, -1}};
        p.relations.push_back(std::move(w));
        p.relation_labels.push_back("crossing " + std::to_string(i));
    }
    for (const Vertex& v : d.vertices) {
        GroupWord w;
        for (const auto& inc : v.incident) w.letters.push_back({inc.arc, inc.sign});
        p.relations.push_back(std::move(w));
        p.relation_labels.push_back("vertex " + v.id);
    }
    return p;
}

GroupRingElem fox_derivative(const GroupWord& w, const std::string& generator) {
    GroupRingElem out;
    auto accumulate = [&](const GroupWord& key, long long c) {
        GroupWord k = free_reduce(key);
        auto [it, inserted] = out.try_emplace(k, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) out.erase(it);
        }
    };
    GroupWord prefix;
    for (const auto& [gen, exp] : w.letters) {
        if (gen == generator) {
            if (exp == 1) {
                accumulate(prefix, +1);
            } else {
                GroupWord term = prefix;
                term.letters.push_back({gen, -1});
                accumulate(term, -1);
            }
        }
        prefix.letters.push_back({gen, exp});
    }
    return out;
}

LaurentPoly augment(const GroupWord& w, const std::map<std::string, long long>& arc_weight) {
    long long e = 0;
    for (const auto& [gen, exp] : w.letters) {
        auto it = arc_weight.find(gen);
        if (it == arc_weight.end()) throw precondition_error("augment: no weight for arc " + gen);
        e += exp * it->second;
    }
    return LaurentPoly::t_power(e);
}

LaurentPoly augment(const GroupRingElem& x, const std::map<std::string, long long>& arc_weight) {
    LaurentPoly p;
    for (const auto& [w, c] : x) {
        LaurentPoly term = augment(w, arc_weight);
        p += term * LaurentPoly(c);
    }
    return p;
}

std::map<std::string, long long> arc_weights(const Diagram& d) {
    std::map<std::string, long long> w;
    for (const auto& e : d.edges)
        for (const auto& a : e.arcs) w[a] = e.weight;
    return w;
}

namespace {

AlexMatrix empty_matrix(const Diagram& d) {
    AlexMatrix m;
    m.col_arcs = d.arc_order();
    return m;
}

}  // namespace

AlexMatrix alexander_matrix(const Diagram& d) {
    require_valid(d);
    require_balanced(d);
    AlexMatrix m = empty_matrix(d);
    auto weights = arc_weights(d);
    WirtingerPresentation p = wirtinger_presentation(d);
    m.row_labels = p.relation_labels;
    for (const GroupWord& rel : p.relations) {
        std::vector<LaurentPoly> row;
        row.reserve(m.col_arcs.size());
        for (const std::string& arc : m.col_arcs)
            row.push_back(augment(fox_derivative(rel, arc), weights));
        m.entries.push_back(std::move(row));
    }
    return m;
}

AlexMatrix closed_form_matrix(const Diagram& d) {
    require_valid(d);
    require_balanced(d);
    AlexMatrix m = empty_matrix(d);
    auto weights = arc_weights(d);
    std::map<std::string, std::size_t> col;
    for (std::size_t j = 0; j < m.col_arcs.size(); ++j) col[m.col_arcs[j]] = j;

    for (std::size_t i = 0; i < d.crossings.size(); ++i) {
        const Crossing& c = d.crossings[i];
        std::vector<LaurentPoly> row(m.col_arcs.size());
        long long w1 = weights.at(c.over);
        long long w2 = weights.at(c.under_in);
        if (c.sign == 1) {
            row[col.at(c.under_in)] -= LaurentPoly(1);
            row[col.at(c.over)] += LaurentPoly(1) - LaurentPoly::t_power(w2);
            row[col.at(c.under_out)] += LaurentPoly::t_power(w1);
        } else {
            row[col.at(c.under_in)] -= LaurentPoly(1);
            row[col.at(c.over)] += LaurentPoly::t_power(-w1 + w2) - LaurentPoly::t_power(-w1);
            row[col.at(c.under_out)] += LaurentPoly::t_power(-w1);
        }
        m.entries.push_back(std::move(row));
        m.row_labels.push_back("crossing " + std::to_string(i));
    }
    for (const Vertex& v : d.vertices) {
        std::vector<LaurentPoly> row(m.col_arcs.size());
        long long running = 0;
        for (const auto& inc : v.incident) {
            long long w = weights.at(inc.arc);
            long long mi = running + (inc.sign < 0 ? -w : 0);
            row[col.at(inc.arc)] += LaurentPoly::term(inc.sign, mi);
            running += inc.sign * w;
        }
        m.entries.push_back(std::move(row));
        m.row_labels.push_back("vertex " + v.id);
    }
    return m;
}

}  // namespace sg
