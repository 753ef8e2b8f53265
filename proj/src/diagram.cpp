#include "sg/diagram.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "sg/errors.hpp"

namespace sg {

std::vector<std::string> Diagram::arc_order() const {
    std::vector<std::string> order;
    for (const auto& e : edges)
        for (const auto& a : e.arcs) order.push_back(a);
    return order;
}

std::map<std::string, std::size_t> Diagram::arc_edge_index() const {
    std::map<std::string, std::size_t> m;
    for (std::size_t i = 0; i < edges.size(); ++i)
        for (const auto& a : edges[i].arcs) m.emplace(a, i);
    return m;
}

std::vector<Violation> validate(const Diagram& d) {
    std::vector<Violation> out;
    auto flag = [&](const std::string& rule, const std::string& id) { out.push_back({rule, id}); };

    std::set<std::string> edge_ids, vertex_ids;
    for (const auto& e : d.edges) {
        if (e.id.empty()) flag("empty edge id", e.id);
        if (!edge_ids.insert(e.id).second) flag("duplicate edge id", e.id);
        if (e.arcs.empty()) flag("edge has no arcs", e.id);
    }
    for (const auto& v : d.vertices) {
        if (v.id.empty()) flag("empty vertex id", v.id);
        if (!vertex_ids.insert(v.id).second) flag("duplicate vertex id", v.id);
    }

    std::map<std::string, int> arc_uses;
    for (const auto& e : d.edges)
        for (const auto& a : e.arcs) {
            if (a.empty()) flag("empty arc id", a);
            ++arc_uses[a];
        }
    std::set<std::string> arcs;
    for (const auto& [a, n] : arc_uses) {
        if (n > 1) flag("arc in multiple edges", a);
        arcs.insert(a);
    }

    for (std::size_t i = 0; i < d.crossings.size(); ++i) {
        const auto& c = d.crossings[i];
        std::string cid = "crossing " + std::to_string(i);
        for (const auto& a : {c.over, c.under_in, c.under_out})
            if (!arcs.count(a)) flag("crossing references unknown arc", a.empty() ? cid : a);
        if (c.sign != 1 && c.sign != -1) flag("crossing sign not 1 or -1", cid);
    }

    // Consecutive under-arc pairs must match crossings one to one.
    std::map<std::pair<std::string, std::string>, int> pair_crossings;
    for (const auto& c : d.crossings) ++pair_crossings[{c.under_in, c.under_out}];
    std::set<std::pair<std::string, std::string>> edge_pairs;
    for (const auto& e : d.edges)
        for (std::size_t i = 0; i + 1 < e.arcs.size(); ++i) {
            auto key = std::make_pair(e.arcs[i], e.arcs[i + 1]);
            edge_pairs.insert(key);
            int n = pair_crossings.count(key) ? pair_crossings.at(key) : 0;
            if (n == 0) flag("consecutive arcs share no crossing", e.arcs[i] + "|" + e.arcs[i + 1]);
            if (n > 1) flag("consecutive arcs joined at multiple crossings", e.arcs[i] + "|" + e.arcs[i + 1]);
        }
    for (std::size_t i = 0; i < d.crossings.size(); ++i) {
        const auto& c = d.crossings[i];
        if (!arcs.count(c.under_in) || !arcs.count(c.under_out)) continue;
        if (!edge_pairs.count({c.under_in, c.under_out}))
            flag("under arcs not consecutive on one edge", "crossing " + std::to_string(i));
    }

    // Vertex incidences must be exactly the edge endpoints: (first arc, -1)
    // and (last arc, +1) of every edge, each appearing once.
    std::map<std::pair<std::string, int>, int> expected;
    for (const auto& e : d.edges) {
        if (e.arcs.empty()) continue;
        ++expected[{e.arcs.front(), -1}];
        ++expected[{e.arcs.back(), +1}];
    }
    std::map<std::pair<std::string, int>, int> actual;
    for (const auto& v : d.vertices)
        for (const auto& inc : v.incident) {
            if (!arcs.count(inc.arc)) {
                flag("vertex incidence references unknown arc", inc.arc.empty() ? v.id : inc.arc);
                continue;
            }
            if (inc.sign != 1 && inc.sign != -1) {
                flag("vertex incidence sign not 1 or -1", v.id);
                continue;
            }
            ++actual[{inc.arc, inc.sign}];
        }
    for (const auto& [key, n] : actual) {
        int want = expected.count(key) ? expected.at(key) : 0;
        if (n > want)
            flag("unexpected vertex incidence", key.first + (key.second == 1 ? "|+1" : "|-1"));
    }
    for (const auto& [key, want] : expected) {
        int have = actual.count(key) ? actual.at(key) : 0;
        if (have < want)
            flag("edge endpoint not attached to a vertex", key.first + (key.second == 1 ? "|+1" : "|-1"));
    }

    return out;
}

void require_valid(const Diagram& d) {
    auto report = validate(d);
    if (!report.empty())
        throw precondition_error("invalid diagram: " + report.front().rule + " (" + report.front().id + ")");
}

namespace {

// vertex index of the (arc, sign) endpoint occurrence; -1 when absent.
// Valid diagrams have exactly one occurrence per endpoint.
long long find_endpoint(const Diagram& d, const std::string& arc, int sign) {
    for (std::size_t vi = 0; vi < d.vertices.size(); ++vi)
        for (const auto& inc : d.vertices[vi].incident)
            if (inc.arc == arc && inc.sign == sign) return static_cast<long long>(vi);
    return -1;
}

}  // namespace

bool is_balanced(const Diagram& d) {
    require_valid(d);
    auto aei = d.arc_edge_index();
    for (const auto& v : d.vertices) {
        long long sum = 0;
        for (const auto& inc : v.incident) sum += inc.sign * d.edges[aei.at(inc.arc)].weight;
        if (sum != 0) return false;
    }
    return true;
}

void require_balanced(const Diagram& d) {
    if (!is_balanced(d)) throw precondition_error("diagram weighting is not balanced");
}

std::vector<std::vector<long long>> balanced_weighting_basis(const Diagram& d) {
    require_valid(d);
    std::size_t ne = d.edges.size(), nv = d.vertices.size();
    std::vector<long long> tail(ne), head(ne);
    for (std::size_t ei = 0; ei < ne; ++ei) {
        tail[ei] = find_endpoint(d, d.edges[ei].arcs.front(), -1);
        head[ei] = find_endpoint(d, d.edges[ei].arcs.back(), +1);
    }

    // Spanning forest over non-loop edges; fundamental circulations of the
    // remaining edges form an integer basis of the balanced weightings.
    std::vector<long long> parent_vertex(nv, -1), parent_edge(nv, -1);
    std::vector<int> parent_dir(nv, 0);  // +1: tree edge points toward the root
    std::vector<int> comp(nv, -1);
    std::vector<bool> in_tree(ne, false);
    int ncomp = 0;
    for (std::size_t root = 0; root < nv; ++root) {
        if (comp[root] != -1) continue;
        comp[root] = ncomp;
        std::vector<std::size_t> stack{root};
        while (!stack.empty()) {
            std::size_t u = stack.back();
            stack.pop_back();
            for (std::size_t ei = 0; ei < ne; ++ei) {
                if (in_tree[ei] || tail[ei] == head[ei]) continue;
                long long other = -1;
                int dir = 0;
                if (tail[ei] == static_cast<long long>(u)) {
                    other = head[ei];
                    dir = -1;  // edge points away from u, so toward the root is -1
                } else if (head[ei] == static_cast<long long>(u)) {
                    other = tail[ei];
                    dir = +1;
                } else {
                    continue;
                }
                if (other < 0 || comp[other] != -1) continue;
                comp[other] = ncomp;
                in_tree[ei] = true;
                parent_vertex[other] = static_cast<long long>(u);
                parent_edge[other] = static_cast<long long>(ei);
                parent_dir[other] = (dir == +1) ? +1 : -1;
                stack.push_back(static_cast<std::size_t>(other));
            }
        }
        ++ncomp;
    }

    // Walk from a vertex up to its component root accumulating +-1 per tree
    // edge, sign +1 when the edge is traversed in its own direction.
    auto add_path_to_root = [&](long long v, long long coeff, std::vector<long long>& vec) {
        while (v >= 0 && parent_edge[v] != -1) {
            vec[static_cast<std::size_t>(parent_edge[v])] += coeff * parent_dir[v];
            v = parent_vertex[v];
        }
    };

    std::vector<std::vector<long long>> basis;
    for (std::size_t ei = 0; ei < ne; ++ei) {
        if (in_tree[ei]) continue;
        std::vector<long long> vec(ne, 0);
        vec[ei] = 1;
        if (tail[ei] != head[ei]) {
            add_path_to_root(head[ei], +1, vec);
            add_path_to_root(tail[ei], -1, vec);
        }
        basis.push_back(std::move(vec));
    }
    return basis;
}

std::pair<Diagram, long long> reduce_weighting(const Diagram& d) {
    require_balanced(d);
    long long g = 0;
    for (const auto& e : d.edges) g = std::gcd(g, e.weight);
    if (g == 0) throw precondition_error("trivial weighting");
    Diagram r = d;
    for (auto& e : r.edges) e.weight /= g;
    return {r, g};
}

Diagram mirror(const Diagram& d) {
    require_valid(d);
    Diagram r = d;
    for (auto& c : r.crossings) c.sign = -c.sign;
    for (auto& v : r.vertices) std::reverse(v.incident.begin(), v.incident.end());
    return r;
}

Diagram reverse_all(const Diagram& d) {
    require_valid(d);
    Diagram r = d;
    for (auto& e : r.edges) e.weight = -e.weight;
    return r;
}

Diagram contract_edge(const Diagram& d, const std::string& edge_id) {
    require_valid(d);
    auto it = std::find_if(d.edges.begin(), d.edges.end(),
                           [&](const Edge& e) { return e.id == edge_id; });
    if (it == d.edges.end()) throw precondition_error("no such edge: " + edge_id);
    const Edge& e = *it;
    if (e.arcs.size() != 1)
        throw precondition_error("not contractible in this form: edge has crossings on it");
    const std::string& arc = e.arcs.front();
    for (const auto& c : d.crossings)
        if (c.over == arc || c.under_in == arc || c.under_out == arc)
            throw precondition_error("not contractible in this form: arc appears in a crossing");
    long long tail = find_endpoint(d, arc, -1);
    long long head = find_endpoint(d, arc, +1);
    if (tail == head) throw precondition_error("not contractible in this form: edge is a loop");

    const auto& u = d.vertices[static_cast<std::size_t>(tail)].incident;
    const auto& w = d.vertices[static_cast<std::size_t>(head)].incident;
    std::size_t i = 0, j = 0;
    while (!(u[i].arc == arc && u[i].sign == -1)) ++i;
    while (!(w[j].arc == arc && w[j].sign == +1)) ++j;

    // Rotation splice: open the tail list at the contracted slot and insert
    // the head's entries in cyclic order starting after its own slot.
    std::vector<IncidentArc> merged;
    merged.insert(merged.end(), u.begin(), u.begin() + static_cast<long>(i));
    merged.insert(merged.end(), w.begin() + static_cast<long>(j) + 1, w.end());
    merged.insert(merged.end(), w.begin(), w.begin() + static_cast<long>(j));
    merged.insert(merged.end(), u.begin() + static_cast<long>(i) + 1, u.end());

    Diagram r;
    for (const auto& ed : d.edges)
        if (ed.id != edge_id) r.edges.push_back(ed);
    r.crossings = d.crossings;
    for (std::size_t vi = 0; vi < d.vertices.size(); ++vi) {
        if (static_cast<long long>(vi) == head) continue;
        if (static_cast<long long>(vi) == tail)
            r.vertices.push_back({d.vertices[vi].id, merged});
        else
            r.vertices.push_back(d.vertices[vi]);
    }
    return r;
}

Diagram parallelize_edges(const Diagram& d, const std::vector<std::vector<long long>>& copy_weights) {
    require_valid(d);
    if (copy_weights.size() != d.edges.size())
        throw precondition_error("parallelize_edges: one weight list per edge required");
    for (const auto& ws : copy_weights)
        if (ws.empty()) throw precondition_error("parallelize_edges: empty copy list");

    auto aei = d.arc_edge_index();
    auto copies = [&](std::size_t ei) { return copy_weights[ei].size(); };
    bool all_single = true;
    for (std::size_t ei = 0; ei < d.edges.size(); ++ei)
        if (copies(ei) != 1) all_single = false;
    if (all_single) {
        Diagram r = d;
        for (std::size_t ei = 0; ei < d.edges.size(); ++ei) r.edges[ei].weight = copy_weights[ei][0];
        return r;
    }

    // Copy j of arc a is named a.j; the under-arc segments created while a
    // copy passes under the over-bundle get u-suffixed stage names.
    auto copy_arc = [](const std::string& a, std::size_t j) {
        return a + "." + std::to_string(j + 1);
    };
    auto under_stage = [&](const std::string& a, std::size_t j, std::size_t s) {
        return a + "." + std::to_string(j + 1) + "u" + std::to_string(s);
    };

    // How many times each original arc is an under_out, keyed by arc: the arc
    // at position i > 0 of its edge is reached by passing under one crossing.
    Diagram r;
    for (std::size_t ei = 0; ei < d.edges.size(); ++ei) {
        const Edge& e = d.edges[ei];
        for (std::size_t j = 0; j < copies(ei); ++j) {
            Edge ce;
            ce.id = e.id + "." + std::to_string(j + 1);
            ce.weight = copy_weights[ei][j];
            ce.arcs.push_back(copy_arc(e.arcs[0], j));
            for (std::size_t i = 1; i < e.arcs.size(); ++i) {
                const Crossing* cr = nullptr;
                for (const auto& c : d.crossings)
                    if (c.under_in == e.arcs[i - 1] && c.under_out == e.arcs[i]) cr = &c;
                std::size_t over_copies = copies(aei.at(cr->over));
                for (std::size_t s = 1; s < over_copies; ++s)
                    ce.arcs.push_back(under_stage(e.arcs[i], j, s));
                ce.arcs.push_back(copy_arc(e.arcs[i], j));
            }
            r.edges.push_back(std::move(ce));
        }
    }

    // Copy 1 sits leftmost along the edge direction. An under copy therefore
    // meets the over copies in reverse index order at positive crossings and
    // in index order at negative ones.
    for (const auto& c : d.crossings) {
        std::size_t ue = aei.at(c.under_in);
        std::size_t oe = aei.at(c.over);
        std::size_t nu = copies(ue), no = copies(oe);
        for (std::size_t j = 0; j < nu; ++j) {
            std::string prev = copy_arc(c.under_in, j);
            for (std::size_t m = 0; m < no; ++m) {
                std::size_t om = c.sign > 0 ? no - 1 - m : m;
                std::string next = (m + 1 == no) ? copy_arc(c.under_out, j)
                                                 : under_stage(c.under_out, j, m + 1);
                r.crossings.push_back({copy_arc(c.over, om), prev, next, c.sign});
                prev = next;
            }
        }
    }

    // Around a vertex the bundle occupies consecutive rotation slots: an
    // incoming bundle reads n..1, an outgoing one 1..n.
    for (const auto& v : d.vertices) {
        Vertex nv{v.id, {}};
        for (const auto& inc : v.incident) {
            std::size_t ei = aei.at(inc.arc);
            std::size_t n = copies(ei);
            for (std::size_t j = 0; j < n; ++j) {
                std::size_t cj = inc.sign > 0 ? n - 1 - j : j;
                nv.incident.push_back({copy_arc(inc.arc, cj), inc.sign});
            }
        }
        r.vertices.push_back(std::move(nv));
    }
    return r;
}

Diagram parallelize(const Diagram& d, long long n, long long r) {
    if (n <= 0) throw precondition_error("parallelize: n must be positive");
    if (r < 0 || r > n) throw precondition_error("parallelize: r must satisfy 0 <= r <= n");
    require_balanced(d);
    if (n == 1) return r == 1 ? d : reverse_all(d);
    std::vector<std::vector<long long>> cw;
    for (const auto& e : d.edges) {
        std::vector<long long> ws;
        for (long long j = 0; j < n; ++j) ws.push_back(j < r ? e.weight : -e.weight);
        cw.push_back(std::move(ws));
    }
    return parallelize_edges(d, cw);
}

namespace {

Diagram prefix_ids(const Diagram& d, const std::string& pre) {
    Diagram r = d;
    for (auto& e : r.edges) {
        e.id = pre + e.id;
        for (auto& a : e.arcs) a = pre + a;
    }
    for (auto& c : r.crossings) {
        c.over = pre + c.over;
        c.under_in = pre + c.under_in;
        c.under_out = pre + c.under_out;
    }
    for (auto& v : r.vertices) {
        v.id = pre + v.id;
        for (auto& inc : v.incident) inc.arc = pre + inc.arc;
    }
    return r;
}

}  // namespace

Diagram wedge(const Diagram& d1, const std::string& v1, const Diagram& d2, const std::string& v2) {
    require_valid(d1);
    require_valid(d2);
    auto has_vertex = [](const Diagram& d, const std::string& id) {
        return std::any_of(d.vertices.begin(), d.vertices.end(),
                           [&](const Vertex& v) { return v.id == id; });
    };
    if (!has_vertex(d1, v1)) throw precondition_error("wedge: no such vertex in first diagram: " + v1);
    if (!has_vertex(d2, v2)) throw precondition_error("wedge: no such vertex in second diagram: " + v2);

    Diagram a = prefix_ids(d1, "1.");
    Diagram b = prefix_ids(d2, "2.");
    std::string w1 = "1." + v1, w2 = "2." + v2;

    Diagram r;
    r.edges = a.edges;
    r.edges.insert(r.edges.end(), b.edges.begin(), b.edges.end());
    r.crossings = a.crossings;
    r.crossings.insert(r.crossings.end(), b.crossings.begin(), b.crossings.end());

    std::vector<IncidentArc> merged;
    for (const auto& v : a.vertices)
        if (v.id == w1) merged = v.incident;
    for (const auto& v : b.vertices)
        if (v.id == w2) merged.insert(merged.end(), v.incident.begin(), v.incident.end());

    for (const auto& v : a.vertices) {
        if (v.id == w1)
            r.vertices.push_back({w1, merged});
        else
            r.vertices.push_back(v);
    }
    for (const auto& v : b.vertices)
        if (v.id != w2) r.vertices.push_back(v);
    return r;
}

}  // namespace sg
