#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace sg {

// Oriented weighted spatial-graph diagram. Edges are oriented and carry an
// integer weight; each edge's arc list runs in the direction of orientation.
// Consecutive arcs of an edge meet at the crossing where the edge dives under.
// Vertex incident lists are ordered; local sign +1 means directed into the
// vertex. Diagrams may be virtual: no planarity is checked anywhere.

struct Edge {
    std::string id;
    long long weight = 0;
    std::vector<std::string> arcs;
    bool operator==(const Edge&) const = default;
};

struct Crossing {
    std::string over;
    std::string under_in;
    std::string under_out;
    int sign = 1;
    bool operator==(const Crossing&) const = default;
};

struct IncidentArc {
    std::string arc;
    int sign = 1;
    bool operator==(const IncidentArc&) const = default;
};

struct Vertex {
    std::string id;
    std::vector<IncidentArc> incident;
    bool operator==(const Vertex&) const = default;
};

struct Diagram {
    std::vector<Edge> edges;
    std::vector<Crossing> crossings;
    std::vector<Vertex> vertices;
    bool operator==(const Diagram&) const = default;

    // Arcs in canonical order: per edge in input order, then along the edge.
    std::vector<std::string> arc_order() const;
    // arc id -> index into edges.
    std::map<std::string, std::size_t> arc_edge_index() const;
};

struct Violation {
    std::string rule;
    std::string id;
    bool operator==(const Violation&) const = default;
};

// Every violated structural invariant with the offending identifier.
std::vector<Violation> validate(const Diagram& d);

// Throws precondition_error naming the first violation.
void require_valid(const Diagram& d);

// True iff at every vertex the signed incident weights sum to zero.
bool is_balanced(const Diagram& d);
void require_balanced(const Diagram& d);

// Integer basis of the lattice of balanced weightings (one entry per edge,
// in edge input order); rank = e - v + components.
std::vector<std::vector<long long>> balanced_weighting_basis(const Diagram& d);

// Divide all weights by their gcd g > 0; throws on the all-zero weighting.
std::pair<Diagram, long long> reduce_weighting(const Diagram& d);

// Mirror image: every crossing sign flips, every vertex's incident order is
// reversed. Arc data is untouched.
Diagram mirror(const Diagram& d);

// Reverse the orientation of every edge, realized as weight negation.
Diagram reverse_all(const Diagram& d);

// Contract a single-arc, crossing-free, non-loop edge, merging its endpoints.
Diagram contract_edge(const Diagram& d, const std::string& edge_id);

// Replace each edge by parallel copies with the given weights (one list entry
// per copy); each original crossing becomes (under copies) x (over copies)
// crossings. Ids get ".j" copy suffixes unless every list is a singleton.
Diagram parallelize_edges(const Diagram& d, const std::vector<std::vector<long long>>& copy_weights);

// n parallel copies per edge, r keeping the orientation and n-r reversed.
Diagram parallelize(const Diagram& d, long long n, long long r);

// One-point union: ids get "1."/"2." prefixes, v1 and v2 merge into one vertex
// whose incident list is d1's list at v1 followed by d2's list at v2.
Diagram wedge(const Diagram& d1, const std::string& v1, const Diagram& d2, const std::string& v2);

}  // namespace sg
