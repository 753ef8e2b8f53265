#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "sg/diagram_json.hpp"
#include "sg/errors.hpp"
#include "sg/wirtinger.hpp"
#include "support/diagrams.hpp"

using sg::GroupWord;
using sg::LaurentPoly;

namespace {

LaurentPoly P(const std::string& s) { return sg::parse_laurent(s); }

std::string slurp(const std::string& name) {
    std::ifstream in(std::string(SG_TEST_DATA_DIR) + "/" + name);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// rows equal up to multiplication by one unit +-t^s, |s| <= bound
bool rows_unit_equal(const std::vector<LaurentPoly>& a, const std::vector<LaurentPoly>& b,
                     long long bound = 4) {
    for (long long s = -bound; s <= bound; ++s)
        for (int sign : {1, -1}) {
            LaurentPoly u = LaurentPoly::term(sign, s);
            bool all = true;
            for (std::size_t j = 0; j < a.size() && all; ++j)
                if (a[j] != u * b[j]) all = false;
            if (all) return true;
        }
    return false;
}

}  // namespace

TEST_CASE("free reduction") {
    GroupWord w{{{"a", 1}, {"a", -1}, {"b", 1}}};
    CHECK(sg::free_reduce(w) == GroupWord{{{"b", 1}}});
    GroupWord nested{{{"a", 1}, {"b", 1}, {"b", -1}, {"a", -1}}};
    CHECK(sg::free_reduce(nested).letters.empty());
}

TEST_CASE("wirtinger presentation words") {
    auto p = sg::wirtinger_presentation(sgtest::loop(2));
    CHECK(p.generators == std::vector<std::string>{"a"});
    REQUIRE(p.relations.size() == 1);
    CHECK(p.relations[0] == GroupWord{{{"a", -1}, {"a", 1}}});

    auto t = sg::wirtinger_presentation(sgtest::trefoil());
    REQUIRE(t.relations.size() == 4);
    CHECK(t.relations[0] == GroupWord{{{"s2", 1}, {"s1", 1}, {"s2", -1}, {"s0", -1}}});
    CHECK(t.relation_labels[0] == "crossing 0");
    CHECK(t.relation_labels[3] == "vertex v");

    sg::Diagram neg = sgtest::trefoil();
    neg.crossings[0].sign = -1;
    auto tn = sg::wirtinger_presentation(neg);
    CHECK(tn.relations[0] == GroupWord{{{"s2", -1}, {"s1", 1}, {"s2", 1}, {"s0", -1}}});

    auto th = sg::wirtinger_presentation(sgtest::theta());
    REQUIRE(th.relations.size() == 2);
    CHECK(th.relations[0] == GroupWord{{{"a", -1}, {"b", -1}, {"c", -1}}});
    CHECK(th.relations[1] == GroupWord{{{"c", 1}, {"b", 1}, {"a", 1}}});
}

TEST_CASE("fox derivative rules") {
    GroupWord rel{{{"b", 1}, {"c", 1}, {"b", -1}, {"a", -1}}};
    std::map<std::string, long long> w{{"a", 2}, {"b", 3}, {"c", 2}};  // w1=3, w2=2

    auto dc = sg::fox_derivative(rel, "c");
    REQUIRE(dc.size() == 1);
    CHECK(dc.begin()->first == GroupWord{{{"b", 1}}});
    CHECK(dc.begin()->second == 1);
    CHECK(sg::augment(dc, w) == P("t^3"));

    auto da = sg::fox_derivative(rel, "a");
    REQUIRE(da.size() == 1);
    CHECK(da.begin()->second == -1);
    CHECK(sg::augment(da, w) == P("-1"));

    auto db = sg::fox_derivative(rel, "b");
    CHECK(sg::augment(db, w) == P("1 - t^2"));

    GroupWord cancel{{{"a", 1}, {"a", -1}}};
    CHECK(sg::fox_derivative(cancel, "a").empty());

    GroupWord square{{{"a", 1}, {"a", 1}}};
    auto ds = sg::fox_derivative(square, "a");
    CHECK(sg::augment(ds, {{"a", 1}}) == P("1 + t"));
}

TEST_CASE("augment") {
    std::map<std::string, long long> w{{"a", 2}, {"b", -1}};
    CHECK(sg::augment(GroupWord{}, w) == P("1"));
    CHECK(sg::augment(GroupWord{{{"a", 1}, {"b", 1}}}, w) == P("t"));
    CHECK(sg::augment(GroupWord{{{"b", -1}}}, w) == P("t"));
    CHECK_THROWS_AS(sg::augment(GroupWord{{{"zz", 1}}}, w), sg::precondition_error);
}

TEST_CASE("matrix shapes and simple entries") {
    auto m = sg::alexander_matrix(sgtest::loop(5));
    REQUIRE(m.rows() == 1);
    REQUIRE(m.cols() == 1);
    CHECK(m.entries[0][0].is_zero());

    auto th = sg::closed_form_matrix(sgtest::theta(1, 1, -2));
    REQUIRE(th.rows() == 2);
    REQUIRE(th.cols() == 3);
    CHECK(th.entries[0][0] == P("-t^-1"));
    CHECK(th.entries[0][1] == P("-t^-2"));
    CHECK(th.entries[0][2] == P("-1"));
    CHECK(th.entries[1][0] == P("t^-1"));
    CHECK(th.entries[1][1] == P("t^-2"));
    CHECK(th.entries[1][2] == P("1"));
}

TEST_CASE("unbalanced diagrams are rejected") {
    CHECK_THROWS_AS(sg::alexander_matrix(sgtest::theta(1, 1, 1)), sg::precondition_error);
    CHECK_THROWS_AS(sg::closed_form_matrix(sgtest::theta(1, 1, 1)), sg::precondition_error);
}

TEST_CASE("generic and closed-form routes agree entry-wise") {
    for (const sg::Diagram& d :
         {sgtest::loop(3), sgtest::theta(2, -1, -1), sgtest::trefoil(2), sgtest::bouquet8(1, 1),
          sgtest::bouquet8(3, -2), sg::mirror(sgtest::bouquet8(1, 2)), sg::parallelize(sgtest::trefoil(1), 2, 1)}) {
        auto a = sg::alexander_matrix(d);
        auto b = sg::closed_form_matrix(d);
        REQUIRE(a.rows() == b.rows());
        REQUIRE(a.cols() == b.cols());
        CHECK(a.col_arcs == b.col_arcs);
        CHECK(a.row_labels == b.row_labels);
        for (std::size_t i = 0; i < a.rows(); ++i)
            for (std::size_t j = 0; j < a.cols(); ++j) CHECK(a.entries[i][j] == b.entries[i][j]);
    }
}

TEST_CASE("augmentation of every relation is 1 on balanced diagrams") {
    for (const sg::Diagram& d :
         {sgtest::loop(4), sgtest::theta(5, -3, -2), sgtest::trefoil(1), sgtest::bouquet8(2, 7)}) {
        auto w = sg::arc_weights(d);
        auto p = sg::wirtinger_presentation(d);
        for (const auto& rel : p.relations) CHECK(sg::augment(rel, w) == P("1"));
    }
}

TEST_CASE("free reduction before differentiation changes nothing") {
    sg::Diagram d = sgtest::bouquet8(1, 1);
    auto w = sg::arc_weights(d);
    auto p = sg::wirtinger_presentation(d);
    for (const auto& rel : p.relations) {
        GroupWord padded = rel;
        padded.letters.insert(padded.letters.begin(), {{"a1", 1}, {"a1", -1}});
        padded.letters.push_back({"a4", -1});
        padded.letters.push_back({"a4", 1});
        for (const auto& arc : p.generators) {
            auto lhs = sg::augment(sg::fox_derivative(sg::free_reduce(padded), arc), w);
            auto rhs = sg::augment(sg::fox_derivative(padded, arc), w);
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("matrix matches the 9x10 golden fixture up to unit row scaling") {
    using nlohmann::json;
    json fx = json::parse(slurp("bouquet_matrix.json"));
    auto cols = fx["col_arcs"].get<std::vector<std::string>>();

    sg::Diagram d = sgtest::bouquet8(1, 1);
    auto m = sg::closed_form_matrix(d);
    REQUIRE(m.rows() == 9);
    REQUIRE(m.cols() == 10);

    std::map<std::string, std::size_t> mycol;
    for (std::size_t j = 0; j < m.cols(); ++j) mycol[m.col_arcs[j]] = j;

    for (std::size_t i = 0; i < 9; ++i) {
        std::vector<LaurentPoly> golden, mine;
        for (std::size_t j = 0; j < 10; ++j) {
            golden.push_back(P(fx["rows"][i][j].get<std::string>()));
            mine.push_back(m.entries[i][mycol.at(cols[j])]);
        }
        CAPTURE(i);
        CHECK(rows_unit_equal(mine, golden));
    }

    // positive-crossing rows and the vertex row match without any scaling
    for (std::size_t i : {0u, 1u, 3u, 4u, 8u}) {
        for (std::size_t j = 0; j < 10; ++j)
            CHECK(m.entries[i][mycol.at(cols[j])] == P(fx["rows"][i][j].get<std::string>()));
    }
}

TEST_CASE("bouquet.json fixture parses to the bouquet diagram") {
    sg::Diagram d = sg::diagram_from_json(slurp("bouquet.json"));
    CHECK(d == sgtest::bouquet8(1, 1));
    CHECK(sg::diagram_from_json(slurp("trefoil.json")) == sgtest::trefoil());
    CHECK(sg::diagram_from_json(slurp("theta.json")) == sgtest::theta(1, 1, -2));
    CHECK(sg::diagram_from_json(slurp("loop.json")) == sgtest::loop(2));
}
