#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "sg/coloring.hpp"
#include "sg/diagram.hpp"
#include "sg/diagram_json.hpp"
#include "sg/errors.hpp"
#include "sg/invariants.hpp"
#include "sg/laurent.hpp"
#include "sg/matrix_io.hpp"
#include "sg/metacyclic.hpp"
#include "sg/modp.hpp"
#include "sg/wirtinger.hpp"

namespace {

using ordered = nlohmann::ordered_json;

int exit_status = 0;

void emit(const ordered& envelope) { std::cout << envelope.dump(2) << "\n"; }

ordered poly_pairs(const sg::LaurentPoly& p) {
    ordered a = ordered::array();
    for (const auto& [e, c] : p.terms()) a.push_back(ordered::array({e, c.get_str()}));
    return a;
}

std::vector<std::string> labels_or(const std::vector<std::string>& given, std::size_t count,
                                   const char* prefix) {
    if (given.size() == count) return given;
    std::vector<std::string> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(prefix + std::to_string(i));
    return out;
}

struct MatrixInput {
    sg::AlexMatrix mat;
    long long c = 0;
    long long v = 0;
    long long e = 0;
};

// Diagram files go through the Wirtinger pipeline; --raw-matrix files are
// used as given.
MatrixInput load_matrix_input(const std::string& path, bool raw) {
    MatrixInput in;
    if (raw) {
        sg::RawMatrix rm = sg::load_raw_matrix(path);
        in.mat = std::move(rm.mat);
        in.c = rm.c;
        in.v = rm.v;
        in.e = rm.e;
    } else {
        sg::Diagram d = sg::load_diagram(path);
        in.mat = sg::closed_form_matrix(d);
        in.c = static_cast<long long>(d.crossings.size());
        in.v = static_cast<long long>(d.vertices.size());
        in.e = static_cast<long long>(d.edges.size());
    }
    return in;
}

ordered matrix_json(const MatrixInput& in) {
    ordered r;
    r["c"] = in.c;
    r["v"] = in.v;
    r["e"] = in.e;
    r["row_labels"] = labels_or(in.mat.row_labels, in.mat.rows(), "r");
    r["col_arcs"] = labels_or(in.mat.col_arcs, in.mat.cols(), "c");
    ordered rows = ordered::array();
    for (const auto& row : in.mat.entries) {
        ordered jr = ordered::array();
        for (const auto& q : row) jr.push_back(sg::to_string(q));
        rows.push_back(std::move(jr));
    }
    r["rows"] = std::move(rows);
    return r;
}

void print_joined(const std::vector<std::string>& parts) {
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) std::cout << ", ";
        std::cout << parts[i];
    }
    std::cout << "\n";
}

ordered input_echo(const std::string& path, bool raw) {
    ordered in;
    in["path"] = path;
    if (raw) in["raw_matrix"] = true;
    return in;
}

struct CommonFlags {
    std::string path;
    bool raw = false;
    bool json = false;
};

void add_input(CLI::App* cmd, CommonFlags& f, bool with_raw = true) {
    cmd->add_option("input", f.path, "diagram JSON file, or - for stdin")->required();
    if (with_raw)
        cmd->add_flag("--raw-matrix", f.raw, "treat input as a matrix file, not a diagram");
    cmd->add_flag("--json", f.json, "machine-readable output");
}

void cmd_validate(const CommonFlags& f) {
    if (f.raw) {
        sg::RawMatrix rm = sg::load_raw_matrix(f.path);
        if (f.json) {
            ordered env;
            env["op"] = "validate";
            env["input"] = input_echo(f.path, f.raw);
            env["result"] = {{"valid", true},
                             {"rows", rm.mat.rows()},
                             {"cols", rm.mat.cols()},
                             {"c", rm.c},
                             {"v", rm.v},
                             {"e", rm.e}};
            emit(env);
        } else {
            std::cout << "raw matrix: " << rm.mat.rows() << " x " << rm.mat.cols() << "\n";
            std::cout << "c: " << rm.c << "\nv: " << rm.v << "\ne: " << rm.e << "\n";
            std::cout << "valid: yes\n";
        }
        return;
    }
    sg::Diagram d = sg::load_diagram(f.path);
    std::vector<sg::Violation> violations = sg::validate(d);
    bool valid = violations.empty();
    bool balanced = valid && sg::is_balanced(d);
    if (f.json) {
        ordered env;
        env["op"] = "validate";
        env["input"] = input_echo(f.path, f.raw);
        ordered res;
        res["valid"] = valid;
        ordered vio = ordered::array();
        for (const auto& v : violations) vio.push_back({{"rule", v.rule}, {"id", v.id}});
        res["violations"] = std::move(vio);
        if (valid) res["balanced"] = balanced;
        res["c"] = d.crossings.size();
        res["v"] = d.vertices.size();
        res["e"] = d.edges.size();
        env["result"] = std::move(res);
        emit(env);
    } else {
        std::cout << "valid: " << (valid ? "yes" : "no") << "\n";
        for (const auto& v : violations) std::cout << "violation: " << v.rule << ": " << v.id << "\n";
        if (valid) std::cout << "balanced: " << (balanced ? "yes" : "no") << "\n";
        std::cout << "c: " << d.crossings.size() << "\nv: " << d.vertices.size() << "\ne: "
                  << d.edges.size() << "\n";
    }
    if (!valid) exit_status = 2;
}

void cmd_matrix(const CommonFlags& f) {
    MatrixInput in = load_matrix_input(f.path, f.raw);
    if (f.json) {
        ordered env;
        env["op"] = "matrix";
        env["input"] = input_echo(f.path, f.raw);
        env["result"] = matrix_json(in);
        emit(env);
        return;
    }
    std::vector<std::string> rl = labels_or(in.mat.row_labels, in.mat.rows(), "r");
    std::vector<std::string> cl = labels_or(in.mat.col_arcs, in.mat.cols(), "c");
    std::cout << in.mat.rows() << " x " << in.mat.cols() << "\n";
    std::cout << "cols: ";
    print_joined(cl);
    for (std::size_t i = 0; i < in.mat.rows(); ++i) {
        std::vector<std::string> parts;
        parts.reserve(in.mat.cols());
        for (const auto& q : in.mat.entries[i]) parts.push_back(sg::to_string(q));
        std::cout << rl[i] << ": ";
        print_joined(parts);
    }
}

void cmd_alex(const CommonFlags& f, long long k, const sg::DetPolyOptions& opts) {
    MatrixInput in = load_matrix_input(f.path, f.raw);
    if (k < 0) throw sg::precondition_error("alex: k must be nonnegative");
    sg::LaurentPoly delta = sg::det_poly(in.mat, in.c + in.v - k, opts);
    if (f.json) {
        ordered env;
        env["op"] = "alex";
        env["input"] = input_echo(f.path, f.raw);
        env["input"]["k"] = k;
        env["result"] = {{"polynomial", sg::to_string(delta)}, {"pairs", poly_pairs(delta)}};
        emit(env);
    } else {
        std::cout << sg::to_string(delta) << "\n";
    }
}

void cmd_det(const CommonFlags& f, long long n, long long k) {
    MatrixInput in = load_matrix_input(f.path, f.raw);
    sg::DetValue dv = sg::determinant_at(in.mat, n, k);
    if (f.json) {
        ordered env;
        env["op"] = "det";
        env["input"] = input_echo(f.path, f.raw);
        env["input"]["n"] = n;
        env["input"]["k"] = k;
        env["result"] = {{"value", dv.value.get_str()},
                         {"raw", dv.raw.get_str()},
                         {"invariant", dv.invariant}};
        emit(env);
    } else {
        std::cout << dv.value.get_str() << "\n";
        if (!dv.invariant) std::cout << "note: |n| is composite, value depends on the diagram\n";
    }
}

ordered vector_json(const std::vector<std::string>& arcs, const std::vector<long long>& vals) {
    ordered o;
    for (std::size_t i = 0; i < arcs.size(); ++i) o[arcs[i]] = vals[i];
    return o;
}

std::string vector_text(const std::vector<std::string>& arcs, const std::vector<long long>& vals) {
    std::string s;
    for (std::size_t i = 0; i < arcs.size(); ++i) {
        if (i) s += ", ";
        s += arcs[i] + "=" + std::to_string(vals[i]);
    }
    return s;
}

std::vector<long long> coloring_in_order(const sg::Coloring& c, const std::vector<std::string>& arcs) {
    std::vector<long long> v;
    v.reserve(arcs.size());
    for (const auto& a : arcs) v.push_back(c.values.at(a));
    return v;
}

void cmd_color(const CommonFlags& f, long long p, long long n, bool enumerate, bool has_check,
               long long check_k, const sg::ColoringOptions& opts) {
    MatrixInput in;
    sg::Diagram d;
    if (f.raw) {
        in = load_matrix_input(f.path, true);
    } else {
        d = sg::load_diagram(f.path);
        in.mat = sg::closed_form_matrix(d);
        in.c = static_cast<long long>(d.crossings.size());
        in.v = static_cast<long long>(d.vertices.size());
        in.e = static_cast<long long>(d.edges.size());
    }
    sg::ColoringMatrix cm = sg::coloring_matrix(in.mat, n, p, opts);
    std::vector<std::string> arcs = labels_or(cm.col_arcs, cm.mat.col_count(), "c");
    std::vector<std::vector<long long>> basis = sg::nullspace(cm.mat);
    std::size_t np = basis.size();

    ordered env;
    ordered res;
    if (f.json) {
        env["op"] = "color";
        env["input"] = input_echo(f.path, f.raw);
        env["input"]["p"] = p;
        env["input"]["n"] = n;
        res["nullity"] = np;
        ordered jb = ordered::array();
        for (const auto& b : basis) jb.push_back(vector_json(arcs, b));
        res["basis"] = std::move(jb);
    } else {
        std::cout << "p: " << p << "\nn: " << n << "\n";
        std::cout << "nullity: " << np << "\n";
        for (std::size_t i = 0; i < basis.size(); ++i)
            std::cout << "basis " << i << ": " << vector_text(arcs, basis[i]) << "\n";
    }

    if (has_check) {
        long long threshold = in.e - in.v + check_k;
        sg::DetValue dv = sg::determinant_at(in.mat, n, check_k);
        bool extra = static_cast<long long>(np) > threshold;
        bool divides = mpz_divisible_ui_p(dv.raw.get_mpz_t(), static_cast<unsigned long>(p)) != 0;
        bool holds = extra == divides;
        if (f.json) {
            res["check"] = {{"k", check_k},
                            {"threshold", threshold},
                            {"raw_det", dv.raw.get_str()},
                            {"extra_colorings", extra},
                            {"divides", divides},
                            {"holds", holds}};
        } else {
            std::cout << "check k=" << check_k << ": threshold " << threshold << ", raw det "
                      << dv.raw.get_str() << ", extra colorings: " << (extra ? "yes" : "no")
                      << ", p divides det: " << (divides ? "yes" : "no")
                      << ", holds: " << (holds ? "yes" : "no") << "\n";
        }
    }

    if (enumerate) {
        if (f.raw)
            throw sg::precondition_error("color: --enumerate needs a diagram input");
        std::vector<sg::Coloring> all = sg::enumerate_colorings(d, n, p, opts);
        if (f.json) {
            res["count"] = all.size();
            ordered jc = ordered::array();
            for (const auto& c : all) jc.push_back(vector_json(arcs, coloring_in_order(c, arcs)));
            res["colorings"] = std::move(jc);
        } else {
            std::cout << "colorings: " << all.size() << "\n";
            for (std::size_t i = 0; i < all.size(); ++i)
                std::cout << "coloring " << i << ": "
                          << vector_text(arcs, coloring_in_order(all[i], arcs)) << "\n";
        }
    }

    if (f.json) {
        env["result"] = std::move(res);
        emit(env);
    }
}

void cmd_reps(const CommonFlags& f, long long p, long long k, bool has_m, long long m_override,
              bool list, const sg::MetaOptions& opts) {
    sg::Diagram d = sg::load_diagram(f.path);
    sg::RepClassification rc = sg::classify_and_count(d, p, k, opts);

    ordered env;
    ordered res;
    if (f.json) {
        env["op"] = "reps";
        env["input"] = input_echo(f.path, false);
        env["input"]["p"] = p;
        env["input"]["k"] = k;
        if (has_m) env["input"]["m"] = m_override;
        res["p"] = rc.p;
        res["m"] = rc.m;
        res["k"] = rc.k;
        res["nullity"] = rc.nullity;
        res["total"] = rc.total.get_str();
        res["cyclic"] = rc.cyclic.get_str();
        res["surjective"] = rc.surjective.get_str();
        res["inequivalent_surjective"] = rc.inequivalent_surjective.get_str();
        res["enumerated"] = rc.enumerated;
    } else {
        std::cout << "p: " << rc.p << "\nm: " << rc.m << "\nk: " << rc.k << "\n";
        std::cout << "nullity: " << rc.nullity << "\n";
        std::cout << "total: " << rc.total.get_str() << "\n";
        std::cout << "cyclic: " << rc.cyclic.get_str() << "\n";
        std::cout << "surjective: " << rc.surjective.get_str() << "\n";
        std::cout << "inequivalent surjective: " << rc.inequivalent_surjective.get_str() << "\n";
        std::cout << "enumerated: " << (rc.enumerated ? "yes" : "no") << "\n";
    }

    if (list) {
        sg::MetaGroup g = sg::meta_group(rc.p, rc.m, rc.k);
        sg::ColoringOptions copts;
        copts.enumeration_cap = opts.enumeration_cap;
        std::vector<sg::Coloring> cols = sg::enumerate_colorings(d, rc.k, rc.p, copts);
        std::vector<std::string> arcs = d.arc_order();
        ordered jr = ordered::array();
        for (std::size_t i = 0; i < cols.size(); ++i) {
            sg::Representation rep = sg::build_representation(d, g, cols[i]);
            if (f.json) {
                ordered jo;
                for (const auto& a : arcs) {
                    const sg::MetaElem& el = rep.assignment.at(a);
                    jo[a] = ordered::array({el.a, el.b});
                }
                jr.push_back(std::move(jo));
            } else {
                std::cout << "rep " << i << ": ";
                std::string s;
                for (const auto& a : arcs) {
                    const sg::MetaElem& el = rep.assignment.at(a);
                    if (!s.empty()) s += ", ";
                    s += a + "=(" + std::to_string(el.a) + "," + std::to_string(el.b) + ")";
                }
                std::cout << s << "\n";
            }
        }
        if (f.json) res["reps"] = std::move(jr);
    }

    if (f.json) {
        env["result"] = std::move(res);
        emit(env);
    }
}

void cmd_weightings(const CommonFlags& f) {
    sg::Diagram d = sg::load_diagram(f.path);
    sg::require_valid(d);
    std::vector<std::vector<long long>> basis = sg::balanced_weighting_basis(d);
    bool balanced = sg::is_balanced(d);
    if (f.json) {
        ordered env;
        env["op"] = "weightings";
        env["input"] = input_echo(f.path, false);
        ordered res;
        ordered edges = ordered::array();
        for (const auto& e : d.edges) edges.push_back(e.id);
        res["edges"] = std::move(edges);
        res["balanced"] = balanced;
        res["rank"] = basis.size();
        res["basis"] = basis;
        env["result"] = std::move(res);
        emit(env);
    } else {
        std::cout << "edges: ";
        std::vector<std::string> ids;
        ids.reserve(d.edges.size());
        for (const auto& e : d.edges) ids.push_back(e.id);
        print_joined(ids);
        std::cout << "balanced: " << (balanced ? "yes" : "no") << "\n";
        std::cout << "rank: " << basis.size() << "\n";
        for (std::size_t i = 0; i < basis.size(); ++i) {
            std::vector<std::string> parts;
            parts.reserve(basis[i].size());
            for (long long w : basis[i]) parts.push_back(std::to_string(w));
            std::cout << "basis " << i << ": ";
            print_joined(parts);
        }
    }
}

void emit_transform(const CommonFlags& f, const ordered& args, const sg::Diagram& out) {
    std::string text = sg::diagram_to_json(out);
    if (!f.json) {
        std::cout << text;
        return;
    }
    ordered env;
    env["op"] = "transform";
    env["input"] = input_echo(f.path, false);
    for (const auto& [key, val] : args.items()) env["input"][key] = val;
    env["result"] = ordered::parse(text);
    emit(env);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Alexander invariants, colorings and metacyclic representation counts\n"
                 "for diagrams of spatial graphs with balanced edge weights"};
    app.require_subcommand(1);

    CommonFlags cf;
    long long k = 1;
    long long n = 0;
    long long p = 0;
    long long check_k = 0;
    long long m_override = 0;
    bool enumerate = false;
    bool list = false;
    bool allow_p2 = false;
    unsigned threads = 1;
    unsigned long long cap = 1000000;
    bool drop_row = false;

    CLI::App* c_validate = app.add_subcommand("validate", "check structure and balance");
    add_input(c_validate, cf);
    c_validate->callback([&] { cmd_validate(cf); });

    CLI::App* c_matrix = app.add_subcommand("matrix", "print the Alexander matrix");
    add_input(c_matrix, cf);
    c_matrix->callback([&] { cmd_matrix(cf); });

    CLI::App* c_alex = app.add_subcommand("alex", "k-th Alexander polynomial");
    add_input(c_alex, cf);
    c_alex->add_option("--k", k, "ideal index (default 1)");
    c_alex->add_option("--threads", threads, "worker threads, 0 = all cores (default 1)");
    c_alex->add_option("--cap", cap, "maximum number of minors (default 1000000)");
    c_alex->add_flag("--drop-redundant-row", drop_row,
                     "skip one matrix row; sound for balanced diagrams");
    c_alex->callback([&] {
        sg::DetPolyOptions opts;
        opts.threads = threads;
        opts.minor_cap = cap;
        opts.drop_redundant_row = drop_row;
        cmd_alex(cf, k, opts);
    });

    CLI::App* c_det = app.add_subcommand("det", "k-th determinant at t = n");
    add_input(c_det, cf);
    c_det->add_option("--n", n, "integer argument, nonzero")->required();
    c_det->add_option("--k", k, "ideal index (default 1)");
    c_det->callback([&] { cmd_det(cf, n, k); });

    CLI::App* c_color = app.add_subcommand("color", "p-colorings at t = n");
    add_input(c_color, cf);
    c_color->add_option("--p", p, "odd prime modulus (2 with --allow-p2)")->required();
    c_color->add_option("--n", n, "integer argument, not divisible by p")->required();
    CLI::Option* o_check = c_color->add_option("--check-k", check_k,
                                               "verify the determinant divisibility rule at this k");
    c_color->add_flag("--enumerate", enumerate, "list every coloring (subject to --cap)");
    c_color->add_flag("--allow-p2", allow_p2, "permit p = 2");
    c_color->add_option("--cap", cap, "enumeration cap (default 1000000)");
    c_color->callback([&] {
        sg::ColoringOptions opts;
        opts.allow_p2 = allow_p2;
        opts.enumeration_cap = cap;
        cmd_color(cf, p, n, enumerate, o_check->count() > 0, check_k, opts);
    });

    CLI::App* c_reps = app.add_subcommand("reps", "count metacyclic representations");
    add_input(c_reps, cf, false);
    c_reps->add_option("--p", p, "odd prime, the alpha order")->required();
    c_reps->add_option("--k", k, "conjugation multiplier, nonzero mod p")->required();
    CLI::Option* o_m = c_reps->add_option("--m", m_override,
                                          "beta order, a multiple of ord_p(k); default ord_p(k)");
    c_reps->add_flag("--list", list, "print every representation (subject to --cap)");
    c_reps->add_option("--cap", cap, "enumeration cap (default 1000000)");
    c_reps->callback([&] {
        sg::MetaOptions opts;
        if (o_m->count() > 0) opts.m_override = m_override;
        opts.enumeration_cap = cap;
        cmd_reps(cf, p, k, o_m->count() > 0, m_override, list, opts);
    });

    CLI::App* c_weight = app.add_subcommand("weightings", "basis of balanced weightings");
    add_input(c_weight, cf, false);
    c_weight->callback([&] { cmd_weightings(cf); });

    CLI::App* c_tr = app.add_subcommand("transform", "rewrite a diagram, print the result");
    c_tr->add_option("input", cf.path, "diagram JSON file, or - for stdin")->required();
    c_tr->add_flag("--json", cf.json, "machine-readable output");
    c_tr->require_subcommand(1);

    CLI::App* t_mirror = c_tr->add_subcommand("mirror", "flip every crossing");
    t_mirror->callback([&] {
        emit_transform(cf, {{"op", "mirror"}}, sg::mirror(sg::load_diagram(cf.path)));
    });

    CLI::App* t_rev = c_tr->add_subcommand("reverse-all", "reverse every edge orientation");
    t_rev->callback([&] {
        emit_transform(cf, {{"op", "reverse-all"}}, sg::reverse_all(sg::load_diagram(cf.path)));
    });

    std::string edge_id;
    CLI::App* t_con = c_tr->add_subcommand("contract", "contract a crossing-free edge");
    t_con->add_option("edge", edge_id, "edge id")->required();
    t_con->callback([&] {
        emit_transform(cf, {{"op", "contract"}, {"edge", edge_id}},
                       sg::contract_edge(sg::load_diagram(cf.path), edge_id));
    });

    long long par_n = 0;
    long long par_r = 0;
    CLI::App* t_par = c_tr->add_subcommand("parallel", "replace each edge by a parallel bundle");
    t_par->add_option("n", par_n, "copies per edge")->required();
    t_par->add_option("r", par_r, "copies keeping the original orientation")->required();
    t_par->callback([&] {
        emit_transform(cf, {{"op", "parallel"}, {"n", par_n}, {"r", par_r}},
                       sg::parallelize(sg::load_diagram(cf.path), par_n, par_r));
    });

    std::string other_path;
    std::string v1;
    std::string v2;
    CLI::App* t_wedge = c_tr->add_subcommand("wedge", "glue another diagram at a vertex pair");
    t_wedge->add_option("file", other_path, "second diagram JSON file")->required();
    t_wedge->add_option("v1", v1, "vertex in the first diagram")->required();
    t_wedge->add_option("v2", v2, "vertex in the second diagram")->required();
    t_wedge->callback([&] {
        emit_transform(cf, {{"op", "wedge"}, {"file", other_path}, {"v1", v1}, {"v2", v2}},
                       sg::wedge(sg::load_diagram(cf.path), v1, sg::load_diagram(other_path), v2));
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    } catch (const sg::cap_exceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const sg::precondition_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const sg::invalid_input& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 70;
    }
    return exit_status;
}
