#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "sg/errors.hpp"
#include "sg/metacyclic.hpp"
#include "sg/wirtinger.hpp"
#include "support/diagrams.hpp"

using sg::Coloring;
using sg::Diagram;
using sg::MetaElem;
using sg::MetaGroup;
using sg::Representation;

namespace {

long long onorm(long long a, long long p) {
    long long r = a % p;
    return r < 0 ? r + p : r;
}

long long oinv(long long a, long long p) {
    long long r = onorm(a, p);
    for (long long x = 1; x < p; ++x)
        if (onorm(r * x, p) == 1) return x;
    REQUIRE(false);
    return 0;
}

long long opow(long long k, long long e, long long p) {
    long long base = onorm(k, p);
    if (e < 0) {
        base = oinv(base, p);
        e = -e;
    }
    long long acc = 1 % p;
    for (long long i = 0; i < e; ++i) acc = onorm(acc * base, p);
    return acc;
}

// Oracle: multiply by moving beta past alpha one letter at a time.
MetaElem omul(const MetaGroup& g, MetaElem x, MetaElem y) {
    long long a2 = onorm(y.a, g.p);
    for (long long i = 0; i < onorm(x.b, g.m); ++i) a2 = onorm(a2 * g.k, g.p);
    return {onorm(x.a + a2, g.p), onorm(x.b + y.b, g.m)};
}

MetaElem oeval(const MetaGroup& g, const sg::GroupWord& w,
               const std::map<std::string, MetaElem>& assign) {
    MetaElem acc{0, 0};
    for (const auto& [gen, exp] : w.letters) {
        MetaElem e = assign.at(gen);
        if (exp < 0) {
            // brute-force inverse inside the finite group
            MetaElem inv{0, 0};
            bool found = false;
            for (long long a = 0; a < g.p && !found; ++a)
                for (long long b = 0; b < g.m && !found; ++b)
                    if (omul(g, e, {a, b}) == MetaElem{0, 0}) {
                        inv = {a, b};
                        found = true;
                    }
            REQUIRE(found);
            e = inv;
        }
        acc = omul(g, acc, e);
    }
    return acc;
}

std::set<MetaElem> oclosure(const MetaGroup& g, const std::set<MetaElem>& gens) {
    std::set<MetaElem> s{MetaElem{0, 0}};
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<MetaElem> cur(s.begin(), s.end());
        for (const MetaElem& x : cur)
            for (const MetaElem& gen : gens)
                if (s.insert(omul(g, x, gen)).second) grew = true;
    }
    return s;
}

std::vector<MetaElem> all_elements(const MetaGroup& g) {
    std::vector<MetaElem> v;
    for (long long a = 0; a < g.p; ++a)
        for (long long b = 0; b < g.m; ++b) v.push_back({a, b});
    return v;
}

}  // namespace

TEST_CASE("group arithmetic matches the rewriting oracle and the axioms") {
    for (auto [p, m, k] : {std::tuple<long long, long long, long long>{5, 2, -1},
                           {7, 3, 2},
                           {5, 4, 2},
                           {5, 8, 2}}) {
        MetaGroup g = sg::meta_group(p, m, k);
        std::vector<MetaElem> elems = all_elements(g);
        CHECK(elems.size() == static_cast<std::size_t>(p * m));
        for (const MetaElem& x : elems) {
            CHECK(sg::meta_mul(g, x, {0, 0}) == x);
            CHECK(sg::meta_mul(g, {0, 0}, x) == x);
            CHECK(sg::meta_mul(g, x, sg::meta_inv(g, x)) == MetaElem{0, 0});
            CHECK(sg::meta_mul(g, sg::meta_inv(g, x), x) == MetaElem{0, 0});
            for (const MetaElem& y : elems) CHECK(sg::meta_mul(g, x, y) == omul(g, x, y));
        }
        if (p * m <= 21) {
            for (const MetaElem& x : elems)
                for (const MetaElem& y : elems)
                    for (const MetaElem& z : elems)
                        CHECK(sg::meta_mul(g, sg::meta_mul(g, x, y), z) ==
                              sg::meta_mul(g, x, sg::meta_mul(g, y, z)));
        }
        MetaElem alpha{1, 0}, beta{0, 1 % m};
        CHECK(sg::meta_pow(g, alpha, p) == MetaElem{0, 0});
        CHECK(sg::meta_pow(g, beta, m) == MetaElem{0, 0});
        CHECK(sg::meta_mul(g, sg::meta_mul(g, beta, alpha), sg::meta_inv(g, beta)) ==
              MetaElem{g.k, 0});
    }
}

TEST_CASE("dihedral specialization and the cyclic power formula") {
    MetaGroup d5 = sg::meta_group(5, 2, -1);
    for (long long r = 0; r < 5; ++r)
        CHECK(sg::meta_mul(d5, {r, 1}, {r, 1}) == MetaElem{0, 0});

    for (auto [p, m, k] : {std::tuple<long long, long long, long long>{5, 2, -1}, {5, 4, 2}, {7, 3, 2}}) {
        MetaGroup g = sg::meta_group(p, m, k);
        for (long long r = 0; r < p; ++r) {
            MetaElem x{r, 1};
            MetaElem acc{0, 0};
            for (long long w = 0; w <= 2 * m; ++w) {
                CHECK(sg::meta_pow(g, x, w) == acc);
                long long expect = onorm(r * onorm(1 - opow(g.k, w, p), p) % p * oinv(1 - g.k, p), p);
                CHECK(acc.a == expect);
                CHECK(acc.b == onorm(w, m));
                CHECK(sg::meta_pow(g, x, -w) == sg::meta_inv(g, acc));
                acc = sg::meta_mul(g, acc, x);
            }
        }
    }
}

TEST_CASE("ord_p and meta_group validation") {
    CHECK(sg::ord_p(-1, 5) == 2);
    CHECK(sg::ord_p(2, 5) == 4);
    CHECK(sg::ord_p(2, 7) == 3);
    CHECK(sg::ord_p(1, 7) == 1);
    for (long long p : {3, 5, 13})
        for (long long k = 1; k < p; ++k) {
            long long m = sg::ord_p(k, p);
            CHECK(opow(k, m, p) == 1);
            for (long long j = 1; j < m; ++j) CHECK(opow(k, j, p) != 1);
        }
    CHECK_THROWS_AS(sg::ord_p(10, 5), sg::precondition_error);
    CHECK_THROWS_AS(sg::ord_p(3, 6), sg::precondition_error);

    CHECK_THROWS_AS(sg::meta_group(5, 3, 2), sg::precondition_error);
    CHECK_THROWS_AS(sg::meta_group(4, 2, 1), sg::precondition_error);
    CHECK_THROWS_AS(sg::meta_group(2, 1, 1), sg::precondition_error);
    CHECK_THROWS_AS(sg::meta_group(5, 0, 1), sg::precondition_error);
    CHECK_THROWS_AS(sg::meta_group(5, 2, 5), sg::precondition_error);
    CHECK(sg::meta_group(5, 8, 2).k == 2);
    CHECK(sg::meta_group(5, 2, -1).k == 4);
}

TEST_CASE("representations from colorings satisfy every relation") {
    Diagram fig2 = sgtest::bouquet8();
    MetaGroup g = sg::meta_group(5, 2, -1);
    std::vector<Coloring> cols = sg::enumerate_colorings(fig2, -1, 5);
    REQUIRE(cols.size() == 125);
    sg::WirtingerPresentation pres = sg::wirtinger_presentation(fig2);
    std::map<std::string, long long> w;
    for (const auto& e : fig2.edges)
        for (const auto& a : e.arcs) w[a] = e.weight;
    for (const Coloring& c : cols) {
        Representation rep = sg::build_representation(fig2, g, c);
        for (const auto& [arc, elem] : rep.assignment) {
            CHECK(elem.a == c.values.at(arc));
            CHECK(elem.b == onorm(w.at(arc), g.m));
        }
        for (const auto& rel : pres.relations)
            CHECK(oeval(g, rel, rep.assignment) == MetaElem{0, 0});
    }

    Coloring zero{5, -1, {}};
    Diagram th = sgtest::theta(0, 0, 0);
    for (const auto& e : th.edges)
        for (const auto& a : e.arcs) zero.values[a] = 0;
    Representation triv = sg::build_representation(th, g, zero);
    for (const auto& [arc, elem] : triv.assignment) CHECK(elem == MetaElem{0, 0});

    Coloring wrong{5, 2, {}};
    for (const auto& e : th.edges)
        for (const auto& a : e.arcs) wrong.values[a] = 0;
    CHECK_THROWS_AS(sg::build_representation(th, g, wrong), sg::precondition_error);
    Coloring missing{5, -1, {}};
    CHECK_THROWS_AS(sg::build_representation(th, g, missing), sg::precondition_error);
}

TEST_CASE("assignments of coloring form are homomorphisms exactly for colorings") {
    for (const Diagram& d : {sgtest::curl(), sgtest::theta()}) {
        MetaGroup g = sg::meta_group(3, 2, -1);
        sg::WirtingerPresentation pres = sg::wirtinger_presentation(d);
        std::map<std::string, long long> w;
        for (const auto& e : d.edges)
            for (const auto& a : e.arcs) w[a] = e.weight;
        std::vector<std::string> arcs = pres.generators;

        std::set<std::vector<long long>> homs;
        long long total = 1;
        for (std::size_t i = 0; i < arcs.size(); ++i) total *= 3;
        for (long long code = 0; code < total; ++code) {
            long long cc = code;
            std::map<std::string, MetaElem> assign;
            std::vector<long long> xs;
            for (const auto& a : arcs) {
                long long x = cc % 3;
                cc /= 3;
                xs.push_back(x);
                assign[a] = {x, onorm(w.at(a), g.m)};
            }
            bool hom = true;
            for (const auto& rel : pres.relations)
                if (!(oeval(g, rel, assign) == MetaElem{0, 0})) hom = false;
            if (hom) homs.insert(xs);
        }

        std::set<std::vector<long long>> colorings;
        for (const Coloring& c : sg::enumerate_colorings(d, -1, 3)) {
            std::vector<long long> xs;
            for (const auto& a : arcs) xs.push_back(c.values.at(a));
            colorings.insert(xs);
        }
        CHECK(homs == colorings);
    }
}

TEST_CASE("cyclic_coloring lies in the nullspace and has cyclic image") {
    CHECK_THROWS_AS(sg::cyclic_coloring(sgtest::trefoil(), 5, 1, 2), sg::precondition_error);
    CHECK_THROWS_AS(sg::cyclic_coloring(sgtest::trefoil(), 5, 6, 2), sg::precondition_error);
    CHECK_THROWS_AS(sg::cyclic_coloring(sgtest::trefoil(), 5, 10, 2), sg::precondition_error);

    Coloring fr = sg::cyclic_coloring(sgtest::loop(3), 5, 2, 1);
    CHECK(fr.values.at("a") == 2);

    for (const Diagram& d :
         {sgtest::theta(), sgtest::trefoil(), sgtest::bouquet8(), sgtest::bouquet8(2, 1)}) {
        for (auto [p, k] : {std::pair<long long, long long>{5, -1}, {7, 2}, {5, 2}, {13, 3}}) {
            MetaGroup g = sg::meta_group(p, sg::ord_p(k, p), k);
            for (long long r = 0; r < p; ++r) {
                Coloring c = sg::cyclic_coloring(d, p, k, r);
                if (r == 0)
                    for (const auto& [arc, x] : c.values) CHECK(x == 0);
                sg::ColoringMatrix cm = sg::coloring_matrix(d, k, p);
                for (std::size_t i = 0; i < cm.mat.row_count(); ++i) {
                    long long s = 0;
                    for (std::size_t j = 0; j < cm.mat.col_count(); ++j)
                        s = onorm(s + cm.mat.rows[i][j] * c.values.at(cm.col_arcs[j]), p);
                    CHECK(s == 0);
                }
                Representation rep = sg::build_representation(d, g, c);
                CHECK_FALSE(sg::is_surjective(rep));
                CHECK(sg::has_cyclic_image(rep));
                // the image sits inside <alpha^r beta>
                std::set<MetaElem> powers;
                MetaElem acc{0, 0};
                for (long long i = 0; i < p * g.m; ++i) {
                    powers.insert(acc);
                    acc = sg::meta_mul(g, acc, {onorm(r, p), 1 % g.m});
                }
                for (const MetaElem& x : sg::image_subgroup(rep)) CHECK(powers.count(x) == 1);
            }
        }
    }
}

TEST_CASE("telescoping identity behind the cyclic coloring") {
    std::mt19937 rng(512);
    for (int trial = 0; trial < 300; ++trial) {
        long long p = std::vector<long long>{5, 7, 13}[rng() % 3];
        long long k = 2 + rng() % (p - 2);
        std::size_t l = 1 + rng() % 6;
        long long sum = 0, prefix = 0, lhs = 0;
        for (std::size_t i = 0; i < l; ++i) {
            long long eps = rng() % 2 == 0 ? 1 : -1;
            long long w = static_cast<long long>(rng() % 11) - 5;
            long long mi = prefix + (eps < 0 ? -w : 0);
            lhs = onorm(lhs + eps * opow(k, mi, p) * onorm(1 - opow(k, w, p), p), p);
            prefix += eps * w;
            sum += eps * w;
        }
        CHECK(lhs == onorm(1 - opow(k, sum, p), p));
    }
}

TEST_CASE("image subgroup agrees with the closure oracle") {
    std::mt19937 rng(2024);
    for (auto [p, m, k] : {std::tuple<long long, long long, long long>{5, 2, -1}, {5, 4, 2}, {7, 3, 2}}) {
        MetaGroup g = sg::meta_group(p, m, k);
        for (int trial = 0; trial < 40; ++trial) {
            Representation rep;
            rep.group = g;
            std::set<MetaElem> gens;
            std::size_t ngen = 1 + rng() % 3;
            for (std::size_t i = 0; i < ngen; ++i) {
                MetaElem e{static_cast<long long>(rng() % p), static_cast<long long>(rng() % m)};
                rep.assignment["g" + std::to_string(i)] = e;
                gens.insert(e);
            }
            std::set<MetaElem> expect = oclosure(g, gens);
            std::vector<MetaElem> got = sg::image_subgroup(rep);
            CHECK(std::set<MetaElem>(got.begin(), got.end()) == expect);
            CHECK(sg::is_surjective(rep) == (expect.size() == static_cast<std::size_t>(p * m)));
            bool cyc = false;
            for (const MetaElem& x : expect) {
                std::set<MetaElem> cycset = oclosure(g, {x});
                if (cycset.size() == expect.size()) cyc = true;
            }
            CHECK(sg::has_cyclic_image(rep) == cyc);
        }
    }
}

TEST_CASE("classify_and_count on the golden bouquet") {
    Diagram fig2 = sgtest::bouquet8();
    sg::RepClassification r = sg::classify_and_count(fig2, 5, -1);
    CHECK(r.nullity == 3);
    CHECK(r.m == 2);
    CHECK(r.k == 4);
    CHECK(r.total == 125);
    CHECK(r.cyclic == 5);
    CHECK(r.surjective == 120);
    CHECK(r.inequivalent_surjective == 6);
    CHECK(r.enumerated);

    sg::MetaOptions tight;
    tight.enumeration_cap = 100;
    sg::RepClassification f = sg::classify_and_count(fig2, 5, -1, tight);
    CHECK(f.total == 125);
    CHECK(f.cyclic == 5);
    CHECK(f.surjective == 120);
    CHECK(f.inequivalent_surjective == 6);
    CHECK_FALSE(f.enumerated);

    sg::RepClassification r3 = sg::classify_and_count(fig2, 3, -1);
    CHECK(r3.nullity == 2);
    CHECK(r3.total == 9);
    CHECK(r3.cyclic == 3);
    CHECK(r3.surjective == 6);
    CHECK(r3.inequivalent_surjective == 1);
    CHECK(r3.enumerated);
}

TEST_CASE("classify_and_count small cases and preconditions") {
    sg::RepClassification lp = sg::classify_and_count(sgtest::loop(), 5, -1);
    CHECK(lp.nullity == 1);
    CHECK(lp.total == 5);
    CHECK(lp.cyclic == 5);
    CHECK(lp.surjective == 0);
    CHECK(lp.inequivalent_surjective == 0);

    sg::RepClassification tr3 = sg::classify_and_count(sgtest::trefoil(), 3, -1);
    CHECK(tr3.nullity == 2);
    CHECK(tr3.surjective == 6);
    CHECK(tr3.inequivalent_surjective == 1);
    sg::RepClassification tr5 = sg::classify_and_count(sgtest::trefoil(), 5, -1);
    CHECK(tr5.nullity == 1);
    CHECK(tr5.surjective == 0);

    CHECK_THROWS_AS(sg::classify_and_count(sgtest::theta(2, 2, -4), 5, -1), sg::precondition_error);
    CHECK_THROWS_AS(sg::classify_and_count(sgtest::bouquet8(0, 0), 5, -1), sg::precondition_error);
    CHECK_THROWS_AS(sg::classify_and_count(sgtest::trefoil(), 5, 1), sg::precondition_error);
    CHECK_THROWS_AS(sg::classify_and_count(sgtest::trefoil(), 5, 6), sg::precondition_error);
    CHECK_THROWS_AS(sg::classify_and_count(sgtest::trefoil(), 5, 10), sg::precondition_error);
    CHECK_THROWS_AS(sg::classify_and_count(sgtest::trefoil(), 9, 2), sg::precondition_error);
    CHECK_THROWS_AS(sg::classify_and_count(sgtest::trefoil(), 2, 1), sg::precondition_error);
    sg::MetaOptions bad;
    bad.m_override = 3;
    CHECK_THROWS_AS(sg::classify_and_count(sgtest::bouquet8(), 5, -1, bad), sg::precondition_error);
}

TEST_CASE("m override computes the counts by enumeration") {
    sg::MetaOptions m4;
    m4.m_override = 4;
    sg::RepClassification r = sg::classify_and_count(sgtest::bouquet8(), 5, -1, m4);
    CHECK(r.m == 4);
    CHECK(r.total == 125);
    CHECK(r.cyclic == 5);
    CHECK(r.surjective == 120);
    CHECK(r.inequivalent_surjective == 6);
    CHECK(r.enumerated);

    sg::MetaOptions capped;
    capped.m_override = 4;
    capped.enumeration_cap = 100;
    CHECK_THROWS_AS(sg::classify_and_count(sgtest::bouquet8(), 5, -1, capped), sg::cap_exceeded);
}

TEST_CASE("orbit counting cross-checked with the affine action on colorings") {
    // The automorphism alpha -> alpha^a, beta -> alpha^b beta sends the
    // coloring gamma to a*gamma + cyclic_coloring(b), an affine action that
    // never touches the group arithmetic used by classify_and_count.
    Diagram fig2 = sgtest::bouquet8();
    long long p = 3, k = -1;
    std::vector<Coloring> cols = sg::enumerate_colorings(fig2, k, p);
    REQUIRE(cols.size() == 9);
    MetaGroup g = sg::meta_group(p, 2, k);
    std::vector<std::string> arcs;
    {
        sg::ColoringMatrix cm = sg::coloring_matrix(fig2, k, p);
        arcs = cm.col_arcs;
    }
    std::map<std::string, long long> w;
    for (const auto& e : fig2.edges)
        for (const auto& a : e.arcs) w[a] = e.weight;

    auto as_vec = [&](const std::map<std::string, long long>& vals) {
        std::vector<long long> v;
        for (const auto& a : arcs) v.push_back(vals.at(a));
        return v;
    };
    std::set<std::vector<long long>> surj;
    for (const Coloring& c : cols) {
        Representation rep = sg::build_representation(fig2, g, c);
        if (sg::is_surjective(rep)) surj.insert(as_vec(c.values));
    }
    REQUIRE(surj.size() == 6);

    std::set<std::vector<long long>> seen;
    long long orbits = 0;
    std::vector<std::size_t> sizes;
    for (const auto& v : surj) {
        if (seen.count(v)) continue;
        std::set<std::vector<long long>> orbit;
        for (long long a = 1; a < p; ++a)
            for (long long b = 0; b < p; ++b) {
                std::vector<long long> img;
                for (std::size_t i = 0; i < arcs.size(); ++i) {
                    long long cyc = onorm(b * onorm(1 - opow(k, w.at(arcs[i]), p), p) % p *
                                              oinv(1 - onorm(k, p) + p, p),
                                          p);
                    img.push_back(onorm(a * v[i] + cyc, p));
                }
                CHECK(surj.count(img) == 1);
                orbit.insert(img);
            }
        CHECK(orbit.size() == static_cast<std::size_t>(p * (p - 1)));
        seen.insert(orbit.begin(), orbit.end());
        ++orbits;
    }
    CHECK(orbits == 1);
    CHECK(sg::classify_and_count(fig2, p, k).inequivalent_surjective == mpz_class(static_cast<long>(orbits)));
}
