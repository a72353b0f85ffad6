// Command-line front end: build polytope models, run membership and
// compatibility checks, compute inclusion constants, and verify the shipped
// reference fixtures. Reports are JSON on stdout, human summaries on stderr.
// Exit codes: 0 affirmative, 1 negative/undecided, 2 usage or data error.

#include "polycompat/polycompat.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace pc = polycompat;
using pc::io::json;
using Clock = std::chrono::steady_clock;

namespace {

constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitError = 2;

uint64_t fnv1a(const std::string& bytes) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int max_iters_from_env(int fallback) {
    if (const char* s = std::getenv("POLYCOMPAT_MAX_ITERS")) {
        try {
            int v = std::stoi(s);
            if (v > 0) return v;
        } catch (...) {
        }
    }
    return fallback;
}

pc::RVector parse_rational_vector(const std::string& csv) {
    pc::RVector out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(pc::parse_rational(item));
    return out;
}

struct Report {
    json j;
    Clock::time_point start = Clock::now();

    explicit Report(const std::string& command) {
        j["tool"] = "polycompat";
        j["version"] = pc::kVersion;
        j["command"] = command;
        j["inputs"] = json::object();
        j["verdicts"] = json::object();
    }
    void input(const std::string& name, const std::string& path) {
        j["inputs"][name] = {{"path", path}, {"fnv1a", std::to_string(fnv1a(slurp(path)))}};
    }
    void input_hash(const std::string& name, uint64_t h) {
        j["inputs"][name] = {{"content_hash", std::to_string(h)}};
    }
    int finish(int code, const std::string& summary, std::optional<std::string> out_path) {
        j["elapsed_ms"] =
            std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count();
        j["exit"] = code;
        if (out_path)
            pc::io::save_file(*out_path, j);
        else
            std::cout << j.dump(2) << "\n";
        std::cerr << summary << "\n";
        return code;
    }
};

pc::Polytope build_model(const std::string& model, int n, int g, int k,
                         const std::string& ks_csv, const std::string& graph_file,
                         const std::string& chart_kind) {
    if (model == "birkhoff") return pc::models::birkhoff_body(n);
    if (model == "hypercube") return pc::models::hypercube(g);
    if (model == "simplex") return pc::models::simplex_pk(k);
    if (model == "polysimplex") {
        std::vector<int> ks;
        std::stringstream ss(ks_csv);
        std::string item;
        while (std::getline(ss, item, ',')) ks.push_back(std::stoi(item));
        return pc::models::polysimplex(ks);
    }
    if (model == "pyramid") return pc::models::pyramid();
    if (model == "hypergraph") {
        auto graph = pc::io::hypergraph_from(pc::io::load_file(graph_file));
        if (chart_kind == "preset:pyramid")
            return pc::polytope_of(graph, pc::presets::pyramid_chart());
        return pc::polytope_of(graph, pc::pi0_basis(graph));
    }
    throw CLI::ValidationError("unknown model '" + model + "'");
}

int cmd_build(const std::string& model, int n, int g, int k, const std::string& ks_csv,
              const std::string& graph_file, const std::string& chart_kind,
              std::optional<std::string> out) {
    Report rep("build " + model);
    if (model == "hypergraph") {
        rep.input("graph", graph_file);
        auto graph = pc::io::hypergraph_from(pc::io::load_file(graph_file));
        auto v = pc::validate(graph);
        if (auto* rej = std::get_if<pc::HypergraphRejection>(&v)) {
            rep.j["verdicts"]["probability_hypergraph"] = false;
            rep.j["rejection"] = {{"reason", rej->reason},
                                  {"edge_duals", pc::io::rvector_json(rej->edge_duals)}};
            return rep.finish(kExitError, "rejected: " + rej->reason, out);
        }
        rep.j["verdicts"]["probability_hypergraph"] = true;
        rep.j["witness"] = pc::io::rvector_json(std::get<pc::RVector>(v));
    }
    pc::Polytope p = build_model(model, n, g, k, ks_csv, graph_file, chart_kind);
    rep.j["polytope"] = pc::io::polytope_json(p);
    rep.j["verdicts"]["built"] = true;
    rep.input_hash("polytope", p.content_hash());
    return rep.finish(kExitYes,
                      p.label() + ": " + std::to_string(p.num_vertices()) + " vertices, " +
                          std::to_string(p.num_facets()) + " facets",
                      out);
}

int cmd_membership(const std::string& polytope_file, const std::string& tuple_file,
                   const std::string& mode, const std::string& strategy,
                   std::optional<std::string> out) {
    Report rep("membership --mode " + mode + " --strategy " + strategy);
    rep.input("polytope", polytope_file);
    rep.input("tuple", tuple_file);
    pc::Polytope p = pc::io::polytope_from(pc::io::load_file(polytope_file));
    pc::TupleX a = pc::io::tuple_from(pc::io::load_file(tuple_file));
    rep.input_hash("polytope_content", p.content_hash());

    if (mode == "max") {
        auto r = pc::pmax_check(p, a);
        rep.j["verdicts"]["pmax_member"] = r.member;
        json margins = json::array();
        for (double m : r.margins) margins.push_back(m);
        rep.j["margins"] = std::move(margins);
        return rep.finish(r.member ? kExitYes : kExitNo,
                          r.member ? "member of P_max" : "not a member of P_max", out);
    }

    // min mode
    bool zero = true;
    for (const auto& m : a.entries) zero = zero && m.is_zero();
    if (strategy == "auto" && zero) {
        pc::RVector pi = pc::resolution_of_zero(p);
        std::vector<pc::HermX> c;
        for (int i = 0; i < p.num_vertices(); ++i) {
            pc::HermX m = pc::HermX::identity(a.dim());
            m.scale(pi[i]);
            c.push_back(std::move(m));
        }
        pc::CertificateX cert{p.content_hash(), pc::make_povm(std::move(c))};
        rep.j["verdicts"]["pmin_member"] = true;
        rep.j["certificate"] = pc::io::compat_certificate_json(cert);
        return rep.finish(kExitYes, "member: zero tuple resolved at the barycenter", out);
    }
    if (strategy == "simplex" || (strategy == "auto" && p.num_vertices() == p.g() + 1)) {
        try {
            auto cert = pc::simplex_certificate(p, a);
            rep.j["verdicts"]["pmin_member"] = true;
            rep.j["certificate"] = pc::io::compat_certificate_json(cert);
            return rep.finish(kExitYes, "member: simplex certificate", out);
        } catch (const std::invalid_argument& e) {
            rep.j["verdicts"]["pmin_member"] = false;
            rep.j["error"] = e.what();
            return rep.finish(kExitNo, std::string("not a member: ") + e.what(), out);
        }
    }
    // numeric
    int iters = max_iters_from_env(5000);
    auto r = pc::pmin_search_ap(p, pc::to_float(a), iters);
    if (auto* f = std::get_if<pc::ApFeasible>(&r)) {
        rep.j["verdicts"]["pmin_member"] = true;
        rep.j["iterations"] = f->iterations;
        return rep.finish(kExitYes, "member: numeric certificate found", out);
    }
    auto u = std::get<pc::ApUndecided>(r);
    rep.j["verdicts"]["pmin_member"] = "undecided";
    rep.j["residual"] = u.residual;
    rep.j["iterations"] = u.iterations;
    std::ostringstream ss;
    ss.precision(12);
    ss << "undecided after " << u.iterations << " iterations, residual " << u.residual;
    return rep.finish(kExitNo, ss.str(), out);
}

int cmd_inclusion(const std::string& polytope_file, const std::string& method,
                  const std::string& s_csv, const std::string& w_csv, int d,
                  const std::string& other_file, const std::string& known_s_csv, int known_d,
                  std::optional<std::string> out) {
    Report rep("inclusion --method " + method);
    rep.input("polytope", polytope_file);
    pc::Polytope p = pc::io::polytope_from(pc::io::load_file(polytope_file));
    rep.input_hash("polytope_content", p.content_hash());

    auto bound_json = [](const pc::InclusionBound& b) {
        json j;
        j["s"] = pc::io::rvector_json(b.s);
        j["method"] = pc::to_string(b.method);
        if (b.dimension)
            j["valid_dimension"] = *b.dimension;
        else
            j["valid_dimension"] = "all";
        j["provenance"] = b.provenance;
        if (b.certificate) j["certificate"] = pc::io::scaling_certificate_json(*b.certificate);
        return j;
    };

    if (method == "lp") {
        if (s_csv.empty()) throw CLI::ValidationError("--method lp requires --s");
        pc::RVector s = parse_rational_vector(s_csv);
        auto cert = pc::lp_feasible_scaling(p, s);
        rep.j["verdicts"]["feasible"] = cert.has_value();
        if (cert) rep.j["certificate"] = pc::io::scaling_certificate_json(*cert);
        return rep.finish(cert ? kExitYes : kExitNo,
                          cert ? "feasible: s is an inclusion constant for every dimension"
                               : "no bound from the LP route (not a disproof)",
                          out);
    }
    if (method == "lp-max") {
        auto [t, cert] = pc::lp_max_uniform_scaling(p);
        rep.j["verdicts"]["optimum"] = pc::to_string(t);
        rep.j["certificate"] = pc::io::scaling_certificate_json(cert);
        return rep.finish(kExitYes, "lp-max optimum s* = " + pc::to_string(t), out);
    }
    if (method == "lp-weighted") {
        if (w_csv.empty()) throw CLI::ValidationError("--method lp-weighted requires --w");
        auto [t, cert] = pc::lp_max_weighted(p, parse_rational_vector(w_csv));
        rep.j["verdicts"]["optimum"] = pc::to_string(t);
        rep.j["certificate"] = pc::io::scaling_certificate_json(cert);
        return rep.finish(kExitYes, "lp-weighted optimum t* = " + pc::to_string(t), out);
    }
    if (method == "symmetrize") {
        if (d < 1) throw CLI::ValidationError("--method symmetrize requires --d");
        auto b = pc::symmetrization_bound(p, d);
        rep.j["bound"] = bound_json(b);
        return rep.finish(kExitYes, "symmetrization bound " + pc::to_string(b.s[0]), out);
    }
    if (method == "compare") {
        if (other_file.empty() || known_s_csv.empty())
            throw CLI::ValidationError("--method compare requires --other and --known-s");
        rep.input("other", other_file);
        pc::Polytope q = pc::io::polytope_from(pc::io::load_file(other_file));
        pc::InclusionBound known;
        known.s = parse_rational_vector(known_s_csv);
        known.method = pc::BoundMethod::Comparison;
        if (known_d > 0) known.dimension = known_d;
        known.provenance = "caller-supplied";
        auto b = pc::comparison_bound(p, q, known);
        rep.j["bound"] = bound_json(b);
        return rep.finish(kExitYes, "comparison bound computed", out);
    }
    if (method == "best") {
        if (d < 1) throw CLI::ValidationError("--method best requires --d");
        auto bounds = pc::best_known(p, d);
        json arr = json::array();
        for (const auto& b : bounds) arr.push_back(bound_json(b));
        rep.j["bounds"] = std::move(arr);
        return rep.finish(kExitYes, std::to_string(bounds.size()) + " maximal bound(s)", out);
    }
    throw CLI::ValidationError("unknown method '" + method + "'");
}

// --- verify-paper cases ------------------------------------------------------

struct CaseChecks {
    json& verdicts;
    bool all_ok = true;
    void check(const std::string& name, bool ok) {
        verdicts[name] = ok;
        std::cerr << (ok ? "  pass: " : "  FAIL: ") << name << "\n";
        all_ok = all_ok && ok;
    }
};

void case_birkhoff_T(CaseChecks& c) {
    for (int n = 2; n <= 4; ++n) {
        bool ok = false;
        try {
            auto cert = pc::models::birkhoff_T(n);
            ok = cert.s() == pc::RVector(cert.s().size(), pc::Rational(1, n - 1)) &&
                 cert.verifies(pc::models::birkhoff_body(n));
        } catch (...) {
        }
        c.check("birkhoff_T(" + std::to_string(n) + ") identity", ok);
    }
}

void case_pyramid_T(CaseChecks& c) {
    bool ok = false;
    try {
        auto cert = pc::models::pyramid_T();
        ok = cert.verifies(pc::models::pyramid()) &&
             cert.s() == pc::RVector(3, pc::Rational(2, 5));
    } catch (...) {
    }
    c.check("pyramid T reproduces diag(2/5,2/5,2/5,1)", ok);
}

void case_table1(CaseChecks& c) {
    auto m = pc::fixtures::table1_square();
    c.check("table1 is a magic square",
            std::holds_alternative<pc::MagicX>(pc::magic_check(m.n, m.blocks)));
    auto x = pc::truncate_shift(m);
    auto pm = pc::pmax_check(pc::models::birkhoff_body(4), x);
    bool margins_ok = pm.member;
    for (double mg : pm.margins) margins_ok = margins_ok && mg >= -1e-9;
    c.check("truncation lies in (B_4)_max with margins >= 0", margins_ok);
    auto joint = pc::fixtures::table1_joint_povm();
    auto [ra, rb] = pc::fixtures::table1_reduced_povms();
    c.check("row/column POVMs post-process from the shipped joint POVM",
            pc::post_processing_from(joint, ra).has_value() &&
                pc::post_processing_from(joint, rb).has_value());
    auto sc = pc::semiclassical_check(m, pc::SemiclassicalStrategy::ExactPruning);
    c.check("exact pruning: not semiclassical",
            std::holds_alternative<pc::ScInfeasible>(sc));
}

void case_shared_effect(CaseChecks& c) {
    auto [p1, p2] = pc::fixtures::shared_effect_povms();
    pc::HermX a = p1[0], b = p1[1], cc = p2[1];
    auto r = pc::shared_effect_check(a, b, cc);
    c.check("assignment passes g_operators_check", r.g_operators_ok);
    c.check("restricted pattern exactly infeasible",
            pc::exactly_infeasible(r.restricted) && r.restricted_exact);
    auto joint = pc::fixtures::shared_effect_joint_povm();
    auto [m1, m2] = pc::marginal_certificates(joint, 3, 3);
    bool marg = true;
    for (int i = 0; i < 3; ++i) marg = marg && m1[i] == p1[i] && m2[i] == p2[i];
    c.check("unrestricted joint POVM has the two POVMs as marginals", marg);
    auto pyr = pc::models::pyramid();
    auto x = pc::shared_effect_tuple(a, b, cc);
    auto cert = pc::certificate_from_scaling(pc::models::pyramid_T(), pyr, x);
    c.check("scaling certificate verifies at 2/5",
            pc::verify_certificate(pyr, pc::scaled(x, pc::Rational(2, 5)), cert));
}

void case_simplex_equality(CaseChecks& c) {
    auto one = [&](const pc::Polytope& p, const std::string& name) {
        auto [t, cert] = pc::lp_max_uniform_scaling(p);
        c.check("lp-max = 1 on " + name, t == 1);
    };
    one(pc::models::simplex_pk(2), "interval P_2");
    one(pc::models::simplex_pk(3), "P_3");
    one(pc::models::simplex_pk(4), "P_4");
    one(pc::models::simplex_pk(5), "P_5");
    one(pc::models::birkhoff_body(2), "B_2");
}

void case_easy_consequences(CaseChecks& c) {
    // Spot-check the product laws with the Pauli pair on intervals.
    auto interval = pc::models::hypercube(1);
    auto square = pc::models::hypercube(2);
    pc::TupleX sx({pc::fixtures::pauli_x()});
    pc::TupleX sz({pc::fixtures::pauli_z()});
    pc::TupleX both({pc::fixtures::pauli_x(), pc::fixtures::pauli_z()});
    bool law1 = pc::pmax_check(square, both).member ==
                (pc::pmax_check(interval, sx).member && pc::pmax_check(interval, sz).member);
    c.check("product law on the Pauli pair", law1);
    auto cx = pc::simplex_certificate(interval, sx);
    auto cz = pc::simplex_certificate(interval, sz);
    auto embedded = pc::direct_sum_embedding_certificate(interval, cx.povm, interval, cz.povm);
    pc::TupleX target({pc::herm_direct_sum(pc::fixtures::pauli_x(), pc::HermX::zero(2)),
                       pc::herm_direct_sum(pc::HermX::zero(2), pc::fixtures::pauli_z())});
    c.check("direct-sum embedding certificate verifies",
            pc::verify_certificate(square, target, embedded));
    auto mixed = pc::mixed_pair_certificate(interval, cx.povm, interval, cz.povm,
                                            pc::Rational(1, 2), pc::Rational(1, 2), square);
    c.check("q1/q2 noise mixture certificate verifies",
            pc::verify_certificate(square, pc::scaled(both, pc::Rational(1, 2)), mixed));
}

int cmd_verify_paper(const std::string& name, std::optional<std::string> out) {
    Report rep("verify-paper --case " + name);
    CaseChecks c{rep.j["verdicts"]};
    std::cerr << "case " << name << ":\n";
    if (name == "birkhoff-T")
        case_birkhoff_T(c);
    else if (name == "pyramid-T")
        case_pyramid_T(c);
    else if (name == "table1")
        case_table1(c);
    else if (name == "shared-effect")
        case_shared_effect(c);
    else if (name == "simplex-equality")
        case_simplex_equality(c);
    else if (name == "easy-consequences")
        case_easy_consequences(c);
    else
        throw CLI::ValidationError("unknown case '" + name + "'");
    return rep.finish(c.all_ok ? kExitYes : kExitNo,
                      c.all_ok ? "all checks passed" : "some checks FAILED", out);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"polycompat: exact polytope compatibility toolkit"};
    app.require_subcommand(1);

    std::string model, graph_file, chart_kind = "canonical", ks_csv;
    int n = 3, g = 2, k = 3;
    std::string out_path;

    auto* build = app.add_subcommand("build", "build a polytope model as JSON");
    build->add_option("model", model,
                      "birkhoff | hypercube | simplex | polysimplex | pyramid | hypergraph")
        ->required();
    build->add_option("--n", n, "Birkhoff size N (2..5)");
    build->add_option("--g", g, "hypercube dimension");
    build->add_option("--k", k, "simplex outcome count");
    build->add_option("--ks", ks_csv, "polysimplex outcome counts, comma separated");
    build->add_option("--graph", graph_file, "hypergraph JSON file");
    build->add_option("--chart", chart_kind, "canonical | preset:pyramid");
    build->add_option("--out", out_path, "write the report to a file");

    std::string polytope_file, tuple_file, mode = "max", strategy = "auto";
    auto* memb = app.add_subcommand("membership", "P_max / P_min membership of a tuple");
    memb->add_option("--polytope", polytope_file, "polytope JSON")->required();
    memb->add_option("--tuple", tuple_file, "Hermitian tuple JSON")->required();
    memb->add_option("--mode", mode, "max | min")->required();
    memb->add_option("--strategy", strategy, "auto | simplex | numeric");
    memb->add_option("--out", out_path, "write the report to a file");

    std::string method, s_csv, w_csv, other_file, known_s_csv;
    int dim = 0, known_d = 0;
    auto* incl = app.add_subcommand("inclusion", "inclusion constants for a polytope");
    incl->add_option("--polytope", polytope_file, "polytope JSON")->required();
    incl->add_option("--method", method, "lp | lp-max | lp-weighted | symmetrize | compare | best")
        ->required();
    incl->add_option("--s", s_csv, "target scaling vector, e.g. 2/5,2/5,2/5");
    incl->add_option("--w", w_csv, "positive direction for lp-weighted");
    incl->add_option("--d", dim, "matrix dimension for symmetrize/best");
    incl->add_option("--other", other_file, "comparison polytope JSON");
    incl->add_option("--known-s", known_s_csv, "known bound for the comparison polytope");
    incl->add_option("--known-d", known_d, "dimension the known bound is valid at (0 = all)");
    incl->add_option("--out", out_path, "write the report to a file");

    std::string case_name;
    auto* verify = app.add_subcommand("verify-paper", "run a shipped reference case");
    verify
        ->add_option("--case", case_name,
                     "birkhoff-T | pyramid-T | table1 | shared-effect | simplex-equality | "
                     "easy-consequences")
        ->required();
    verify->add_option("--out", out_path, "write the report to a file");

    CLI11_PARSE(app, argc, argv);
    std::optional<std::string> out =
        out_path.empty() ? std::nullopt : std::optional<std::string>(out_path);

    try {
        if (build->parsed())
            return cmd_build(model, n, g, k, ks_csv, graph_file, chart_kind, out);
        if (memb->parsed())
            return cmd_membership(polytope_file, tuple_file, mode, strategy, out);
        if (incl->parsed())
            return cmd_inclusion(polytope_file, method, s_csv, w_csv, dim, other_file,
                                 known_s_csv, known_d, out);
        if (verify->parsed()) return cmd_verify_paper(case_name, out);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
