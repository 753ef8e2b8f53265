#include "sg/diagram_json.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "sg/errors.hpp"

namespace sg {

namespace {

using nlohmann::json;
using ordered = nlohmann::ordered_json;

const json& expect(const json& j, const char* key, const std::string& where) {
    if (!j.is_object()) throw invalid_input(where + ": expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw invalid_input(where + ": missing key \"" + key + "\"");
    return *it;
}

std::string expect_id(const json& j, const char* key, const std::string& where) {
    const json& v = expect(j, key, where);
    if (!v.is_string() || v.get<std::string>().empty())
        throw invalid_input(where + ": \"" + key + "\" must be a nonempty string");
    return v.get<std::string>();
}

long long expect_int(const json& j, const char* key, const std::string& where) {
    const json& v = expect(j, key, where);
    if (!v.is_number_integer())
        throw invalid_input(where + ": \"" + key + "\" must be an integer");
    return v.get<long long>();
}

int expect_sign(const json& j, const char* key, const std::string& where) {
    long long s = expect_int(j, key, where);
    if (s != 1 && s != -1) throw invalid_input(where + ": \"" + key + "\" must be 1 or -1");
    return static_cast<int>(s);
}

}  // namespace

Diagram diagram_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw invalid_input(std::string("diagram JSON: ") + e.what());
    }
    if (!j.is_object()) throw invalid_input("diagram JSON: top level must be an object");
    for (const auto& [key, val] : j.items())
        if (key != "edges" && key != "crossings" && key != "vertices")
            throw invalid_input("diagram JSON: unknown key \"" + key + "\"");

    Diagram d;
    const json& edges = expect(j, "edges", "diagram");
    if (!edges.is_array()) throw invalid_input("diagram: \"edges\" must be an array");
    for (const auto& je : edges) {
        Edge e;
        e.id = expect_id(je, "id", "edge");
        e.weight = expect_int(je, "weight", "edge " + e.id);
        const json& arcs = expect(je, "arcs", "edge " + e.id);
        if (!arcs.is_array()) throw invalid_input("edge " + e.id + ": \"arcs\" must be an array");
        for (const auto& ja : arcs) {
            if (!ja.is_string() || ja.get<std::string>().empty())
                throw invalid_input("edge " + e.id + ": arcs must be nonempty strings");
            e.arcs.push_back(ja.get<std::string>());
        }
        d.edges.push_back(std::move(e));
    }

    const json& crossings = expect(j, "crossings", "diagram");
    if (!crossings.is_array()) throw invalid_input("diagram: \"crossings\" must be an array");
    for (const auto& jc : crossings) {
        Crossing c;
        c.over = expect_id(jc, "over", "crossing");
        c.under_in = expect_id(jc, "under_in", "crossing");
        c.under_out = expect_id(jc, "under_out", "crossing");
        c.sign = expect_sign(jc, "sign", "crossing");
        d.crossings.push_back(std::move(c));
    }

    const json& vertices = expect(j, "vertices", "diagram");
    if (!vertices.is_array()) throw invalid_input("diagram: \"vertices\" must be an array");
    for (const auto& jv : vertices) {
        Vertex v;
        v.id = expect_id(jv, "id", "vertex");
        const json& inc = expect(jv, "incident", "vertex " + v.id);
        if (!inc.is_array()) throw invalid_input("vertex " + v.id + ": \"incident\" must be an array");
        for (const auto& ji : inc) {
            IncidentArc ia;
            ia.arc = expect_id(ji, "arc", "vertex " + v.id);
            ia.sign = expect_sign(ji, "sign", "vertex " + v.id);
            v.incident.push_back(std::move(ia));
        }
        d.vertices.push_back(std::move(v));
    }
    return d;
}

std::string diagram_to_json(const Diagram& d) {
    ordered j;
    j["edges"] = ordered::array();
    for (const auto& e : d.edges) {
        ordered je;
        je["id"] = e.id;
        je["weight"] = e.weight;
        je["arcs"] = e.arcs;
        j["edges"].push_back(std::move(je));
    }
    j["crossings"] = ordered::array();
    for (const auto& c : d.crossings) {
        ordered jc;
        jc["over"] = c.over;
        jc["under_in"] = c.under_in;
        jc["under_out"] = c.under_out;
        jc["sign"] = c.sign;
        j["crossings"].push_back(std::move(jc));
    }
    j["vertices"] = ordered::array();
    for (const auto& v : d.vertices) {
        ordered jv;
        jv["id"] = v.id;
        jv["incident"] = ordered::array();
        for (const auto& inc : v.incident) {
            ordered ji;
            ji["arc"] = inc.arc;
            ji["sign"] = inc.sign;
            jv["incident"].push_back(std::move(ji));
        }
        j["vertices"].push_back(std::move(jv));
    }
    return j.dump(2) + "\n";
}

Diagram load_diagram(const std::string& path) {
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
    return diagram_from_json(text);
}

}  // namespace sg
