#include "sg/metacyclic.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>

#include "sg/errors.hpp"
#include "sg/wirtinger.hpp"

namespace sg {

namespace {

void check_group(const MetaGroup& g) {
    if (!is_prime(g.p) || g.p == 2) throw precondition_error("metacyclic: p must be an odd prime");
    if (g.m < 1) throw precondition_error("metacyclic: m must be positive");
    if (g.k < 0 || g.k >= g.p) throw precondition_error("metacyclic: k out of range");
    if (g.k == 0) throw precondition_error("metacyclic: p divides k");
    if (mod_pow(g.k, g.m, g.p) != 1)
        throw precondition_error("metacyclic: k^m must be 1 mod p");
}

MetaElem normalized(const MetaGroup& g, long long a, long long b) {
    return {mod_norm(a, g.p), mod_norm(b, g.m)};
}

long long element_order(const MetaGroup& g, const MetaElem& x) {
    MetaElem acc = x;
    long long n = 1;
    while (!(acc == MetaElem{0, 0})) {
        acc = meta_mul(g, acc, x);
        ++n;
    }
    return n;
}

}  // namespace

MetaGroup meta_group(long long p, long long m, long long k) {
    if (!is_prime(p) || p == 2) throw precondition_error("meta_group: p must be an odd prime");
    MetaGroup g{p, m, mod_norm(k, p)};
    check_group(g);
    return g;
}

MetaElem meta_mul(const MetaGroup& g, const MetaElem& x, const MetaElem& y) {
    long long shift = mod_pow(g.k, mod_norm(x.b, g.m), g.p);
    long long a = mod_norm(x.a + static_cast<long long>((static_cast<__int128>(shift) * mod_norm(y.a, g.p)) % g.p), g.p);
    return normalized(g, a, x.b + y.b);
}

MetaElem meta_inv(const MetaGroup& g, const MetaElem& x) {
    long long kw = mod_pow(g.k, -mod_norm(x.b, g.m), g.p);
    long long a = mod_norm(-static_cast<long long>((static_cast<__int128>(mod_norm(x.a, g.p)) * kw) % g.p), g.p);
    return normalized(g, a, -x.b);
}

MetaElem meta_pow(const MetaGroup& g, const MetaElem& x, long long e) {
    if (e < 0) return meta_inv(g, meta_pow(g, x, -e));
    MetaElem acc{0, 0};
    MetaElem base = normalized(g, x.a, x.b);
    unsigned long long n = static_cast<unsigned long long>(e);
    while (n) {
        if (n & 1) acc = meta_mul(g, acc, base);
        base = meta_mul(g, base, base);
        n >>= 1;
    }
    return acc;
}

long long ord_p(long long k, long long p) {
    if (!is_prime(p)) throw precondition_error("ord_p: p must be prime");
    if (k % p == 0) throw precondition_error("ord_p: p divides k");
    long long kk = mod_norm(k, p);
    long long acc = 1;
    for (long long m = 1; m < p; ++m) {
        acc = mod_norm(acc * kk, p);
        if (acc == 1) return m;
    }
    throw std::logic_error("ord_p: no order found");
}

Representation build_representation(const Diagram& d, const MetaGroup& g, const Coloring& gamma) {
    check_group(g);
    require_valid(d);
    require_balanced(d);
    if (gamma.p != g.p) throw precondition_error("build_representation: coloring prime differs from p");
    if (mod_norm(gamma.n, g.p) != g.k)
        throw precondition_error("build_representation: coloring is not at n = k");

    Representation rep;
    rep.group = g;
    std::map<std::string, long long> w;
    for (const auto& e : d.edges)
        for (const auto& a : e.arcs) w[a] = e.weight;
    for (const auto& [arc, weight] : w) {
        auto it = gamma.values.find(arc);
        if (it == gamma.values.end())
            throw precondition_error("build_representation: coloring misses arc " + arc);
        rep.assignment[arc] = normalized(g, it->second, weight);
    }

    WirtingerPresentation pres = wirtinger_presentation(d);
    for (std::size_t i = 0; i < pres.relations.size(); ++i) {
        MetaElem acc{0, 0};
        for (const auto& [gen, exp] : pres.relations[i].letters) {
            MetaElem e = rep.assignment.at(gen);
            acc = meta_mul(g, acc, exp > 0 ? e : meta_inv(g, e));
        }
        if (!(acc == MetaElem{0, 0}))
            throw std::logic_error("build_representation: relation " + pres.relation_labels[i] +
                                   " maps to a non-identity element");
    }
    return rep;
}

Coloring cyclic_coloring(const Diagram& d, long long p, long long k, long long r) {
    require_valid(d);
    require_balanced(d);
    if (!is_prime(p) || p == 2) throw precondition_error("cyclic_coloring: p must be an odd prime");
    if (k % p == 0) throw precondition_error("cyclic_coloring: p divides k");
    if (mod_norm(k, p) == 1)
        throw precondition_error("cyclic_coloring: k congruent to 1 mod p is degenerate");

    long long inv1k = mod_inv(1 - k, p);
    Coloring col{p, k, {}};
    for (const auto& e : d.edges) {
        long long c = mod_norm(
            static_cast<long long>((static_cast<__int128>(mod_norm(r, p)) *
                                    mod_norm(1 - mod_pow(k, e.weight, p), p)) % p) * inv1k,
            p);
        for (const auto& a : e.arcs) col.values[a] = c;
    }

    ColoringMatrix cm = coloring_matrix(d, k, p);
    for (std::size_t i = 0; i < cm.mat.row_count(); ++i) {
        long long s = 0;
        for (std::size_t j = 0; j < cm.mat.col_count(); ++j)
            s = mod_norm(s + cm.mat.rows[i][j] * col.values.at(cm.col_arcs[j]), p);
        if (s != 0)
            throw std::logic_error("cyclic_coloring: relation " + cm.row_labels[i] + " violated");
    }
    return col;
}

std::vector<MetaElem> image_subgroup(const Representation& rep) {
    const MetaGroup& g = rep.group;
    std::set<MetaElem> gens;
    for (const auto& [arc, e] : rep.assignment) gens.insert(e);
    std::set<MetaElem> image{MetaElem{0, 0}};
    std::vector<MetaElem> work{MetaElem{0, 0}};
    while (!work.empty()) {
        MetaElem x = work.back();
        work.pop_back();
        for (const MetaElem& gen : gens) {
            for (MetaElem y : {meta_mul(g, x, gen), meta_mul(g, x, meta_inv(g, gen))}) {
                if (image.insert(y).second) work.push_back(y);
            }
        }
    }
    return {image.begin(), image.end()};
}

bool is_surjective(const Representation& rep) {
    return image_subgroup(rep).size() ==
           static_cast<std::size_t>(rep.group.p) * static_cast<std::size_t>(rep.group.m);
}

bool has_cyclic_image(const Representation& rep) {
    std::vector<MetaElem> image = image_subgroup(rep);
    for (const MetaElem& x : image)
        if (x == MetaElem{0, 0} ? image.size() == 1
                                : static_cast<std::size_t>(element_order(rep.group, x)) == image.size())
            return true;
    return false;
}

namespace {

using RepKey = std::vector<std::pair<long long, long long>>;

RepKey key_of(const Representation& rep) {
    RepKey k;
    for (const auto& [arc, e] : rep.assignment) k.emplace_back(e.a, e.b);
    return k;
}

Representation apply_automorphism(const Representation& rep, long long a, long long b) {
    const MetaGroup& g = rep.group;
    Representation out;
    out.group = g;
    for (const auto& [arc, e] : rep.assignment) {
        MetaElem alpha_part{mod_norm(static_cast<long long>((static_cast<__int128>(a) * e.a) % g.p), g.p), 0};
        MetaElem beta_image{mod_norm(b, g.p), 1 % g.m};
        out.assignment[arc] = meta_mul(g, alpha_part, meta_pow(g, beta_image, e.b));
    }
    return out;
}

}  // namespace

RepClassification classify_and_count(const Diagram& d, long long p, long long k,
                                     const MetaOptions& opts) {
    require_valid(d);
    require_balanced(d);
    if (!is_prime(p) || p == 2)
        throw precondition_error("classify_and_count: p must be an odd prime");
    if (k % p == 0) throw precondition_error("classify_and_count: p divides k");
    if (mod_norm(k, p) == 1)
        throw precondition_error("classify_and_count: k congruent to 1 mod p");

    long long wgcd = 0;
    for (const auto& e : d.edges) wgcd = std::gcd(wgcd, e.weight < 0 ? -e.weight : e.weight);
    if (wgcd != 1)
        throw precondition_error("classify_and_count: weighting must be reduced (gcd of weights 1)");

    long long ord = ord_p(k, p);
    long long m = opts.m_override.value_or(ord);
    if (m % ord != 0)
        throw precondition_error("classify_and_count: m must be a multiple of ord_p(k)");
    MetaGroup g = meta_group(p, m, k);

    RepClassification out;
    out.p = p;
    out.m = m;
    out.k = g.k;
    out.nullity = nullity(d, k, p);
    if (out.nullity == 0) throw std::logic_error("classify_and_count: nullity 0 contradicts the theory");
    mpz_class pz(static_cast<long>(p));
    mpz_pow_ui(out.total.get_mpz_t(), pz.get_mpz_t(), static_cast<unsigned long>(out.nullity));

    if (m == ord) {
        out.cyclic = pz;
        out.surjective = out.total - pz;
        mpz_class num;
        mpz_pow_ui(num.get_mpz_t(), pz.get_mpz_t(), static_cast<unsigned long>(out.nullity - 1));
        num -= 1;
        mpz_divexact(out.inequivalent_surjective.get_mpz_t(), num.get_mpz_t(),
                     mpz_class(static_cast<long>(p - 1)).get_mpz_t());
    }

    mpz_class cap(static_cast<unsigned long>(opts.enumeration_cap));
    if (out.total > cap) {
        if (m != ord)
            throw cap_exceeded("classify_and_count: p^N_p = " + out.total.get_str() +
                               " representations exceed cap " + cap.get_str() +
                               " and the formulas require m = ord_p(k)");
        return out;
    }

    ColoringOptions copts;
    copts.enumeration_cap = opts.enumeration_cap;
    std::vector<Coloring> cols = enumerate_colorings(d, k, p, copts);
    std::vector<Representation> reps;
    reps.reserve(cols.size());
    for (const Coloring& c : cols) reps.push_back(build_representation(d, g, c));

    long long n_surj = 0, n_cyclic = 0;
    std::set<RepKey> surj_keys;
    for (const Representation& r : reps) {
        bool s = is_surjective(r);
        bool c = has_cyclic_image(r);
        if (s) {
            ++n_surj;
            surj_keys.insert(key_of(r));
        }
        if (c) ++n_cyclic;
        if (!s && !c && m == ord)
            throw std::logic_error("classify_and_count: non-surjective image is not cyclic");
    }

    // orbits of the surjective representations under alpha -> alpha^a,
    // beta -> alpha^b beta
    std::set<RepKey> seen;
    long long orbits = 0;
    for (const Representation& r : reps) {
        RepKey rk = key_of(r);
        if (!surj_keys.count(rk) || seen.count(rk)) continue;
        std::set<RepKey> orbit;
        for (long long a = 1; a < p; ++a)
            for (long long b = 0; b < p; ++b) {
                RepKey ok = key_of(apply_automorphism(r, a, b));
                if (!surj_keys.count(ok))
                    throw std::logic_error("classify_and_count: automorphism left the surjective set");
                orbit.insert(ok);
            }
        if (m == ord && orbit.size() != static_cast<std::size_t>(p) * static_cast<std::size_t>(p - 1))
            throw std::logic_error("classify_and_count: orbit size differs from p(p-1)");
        seen.insert(orbit.begin(), orbit.end());
        ++orbits;
    }

    mpz_class zcyc(static_cast<long>(n_cyclic)), zsurj(static_cast<long>(n_surj)),
        zorb(static_cast<long>(orbits));
    if (m == ord) {
        if (out.cyclic != zcyc || out.surjective != zsurj || out.inequivalent_surjective != zorb)
            throw std::logic_error("classify_and_count: enumeration disagrees with the formulas");
    } else {
        out.cyclic = zcyc;
        out.surjective = zsurj;
        out.inequivalent_surjective = zorb;
    }
    out.enumerated = true;
    return out;
}

}  // namespace sg
