#include "hypermatch/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "hypermatch/constructions.hpp"
#include "hypermatch/dynamics.hpp"
#include "hypermatch/exact_count.hpp"
#include "hypermatch/io.hpp"
#include "hypermatch/walktree.hpp"

namespace hypermatch::cli {

namespace {

using json = nlohmann::ordered_json;

json rat_json(const Rational& q) {
    return json{{"num", q.get_num().get_str()}, {"den", q.get_den().get_str()}};
}

json enclosure_json(const dynamics::Enclosure& e) {
    return json{{"lo", rat_json(e.lo)},
                {"hi", rat_json(e.hi)},
                {"lo_dec", rat_decimal(e.lo, 24)},
                {"hi_dec", rat_decimal(e.hi, 24)}};
}

std::uint64_t env_budget() {
    if (const char* raw = std::getenv("HYPERMATCH_BUDGET"))
        return std::strtoull(raw, nullptr, 10);
    return CountOptions{}.budget;
}

CountOptions count_options(std::uint64_t budget_flag) {
    CountOptions opts;
    opts.budget = budget_flag ? budget_flag : env_budget();
    return opts;
}

VertexOrdering ordering_for(const Hypergraph& h, const std::vector<int>& perm) {
    if (perm.empty())
        return VertexOrdering::identity(h.n);
    return VertexOrdering::from_perm(perm);
}

void emit(const json& payload, const std::string& out_path, std::ostream& out) {
    if (out_path.empty()) {
        out << payload.dump(2) << "\n";
        return;
    }
    std::ofstream file(out_path);
    if (!file)
        fail(errc::syntax_error, "cannot open " + out_path + " for writing");
    file << payload.dump(2) << "\n";
}

void emit_text(const std::string& text, const std::string& out_path, std::ostream& out) {
    if (out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(out_path);
    if (!file)
        fail(errc::syntax_error, "cannot open " + out_path + " for writing");
    file << text;
}

construct::ExtendableGraph resolve_base(const std::string& base, const std::string& base_file,
                                        int base_head, int k, int d, int max_n) {
    construct::ExtendableGraph f;
    if (base == "edge") {
        Edge e(k);
        std::iota(e.begin(), e.end(), 0);
        f.graph = new_hypergraph(k, k, {e});
        f.head = 0;
    } else if (base == "search") {
        f = construct::extendable_search(k, d, max_n);
    } else if (base == "paper") {
        // kl+1 = d requires d = 1 mod k
        if ((d - 1) % k != 0)
            fail(errc::domain_error, "paper base needs d = 1 (mod k)");
        f = construct::extendable_paper(k, (d - 1) / k);
    } else if (base == "file") {
        if (base_file.empty())
            fail(errc::usage_error, "--base file requires --base-file");
        f.graph = load_hypergraph_file(base_file);
        if (base_head >= 0)
            f.head = base_head;
        else {
            DegreeReport rep = degree_report(f.graph);
            if (!rep.extendable_head)
                fail(errc::not_extendable, "base file has no unique deficient vertex; "
                                           "pass --base-head");
            f.head = *rep.extendable_head;
        }
    } else {
        fail(errc::usage_error, "unknown base '" + base + "'");
    }
    f.k = k;
    f.d = d;
    return f;
}

// ---------------------------------------------------------------------------

struct GenArgs {
    std::string what;
    int k = 3, d = 2, ell = 0, levels = 1, max_n = 10;
    std::string base = "edge", base_file, out;
    int base_head = -1;
    bool strict = false;
};

int run_gen(const GenArgs& a, std::ostream& out) {
    json meta;
    Hypergraph result;
    if (a.what == "regular") {
        result = construct::regular_linear(a.k, a.d);
        meta["kind"] = "regular";
    } else if (a.what == "extendable-search") {
        construct::ExtendableGraph f = construct::extendable_search(a.k, a.d, a.max_n);
        result = f.graph;
        meta["kind"] = "extendable-search";
        meta["head"] = f.head;
    } else if (a.what == "extendable-paper") {
        construct::ExtendableGraph f = construct::extendable_paper(a.k, a.ell);
        result = f.graph;
        meta["kind"] = "extendable-paper";
        meta["head"] = f.head;
        meta["d"] = f.d;
    } else if (a.what == "tower") {
        construct::ExtendableGraph f =
            resolve_base(a.base, a.base_file, a.base_head, a.k, a.d, a.max_n);
        construct::ExtendableGraph t = construct::tower_build(f, a.levels);
        result = t.graph;
        meta["kind"] = "tower";
        meta["head"] = t.head;
        meta["levels"] = a.levels;
    } else if (a.what == "counterexample") {
        construct::ExtendableGraph f =
            resolve_base(a.base, a.base_file, a.base_head, a.k, a.d, a.max_n);
        construct::ExtendableGraph h0 = construct::tower_build(f, a.levels);
        construct::CounterexampleGraph cg = construct::build_counterexample(h0, a.d);
        result = cg.graph;
        meta["kind"] = "counterexample";
        meta["center"] = cg.center;
        meta["first_copy_head"] = cg.first_copy_head;
        meta["h0_levels"] = a.levels;
    } else {
        fail(errc::usage_error, "unknown gen target '" + a.what + "'");
    }

    if (!a.out.empty()) {
        save_hypergraph_file(result, a.out);
        meta["vertices"] = result.n;
        meta["edges"] = result.edge_count();
        meta["out"] = a.out;
        out << meta.dump(2) << "\n";
    } else {
        out << serialize(result);
    }
    return 0;
}

// ---------------------------------------------------------------------------

int run_count(const std::string& file, std::uint64_t budget, const std::string& out_path,
              std::ostream& out) {
    Hypergraph h = load_hypergraph_file(file);
    MatchCoeffs c = match_coeffs(h, count_options(budget));
    json payload;
    payload["N"] = c.total().get_str();
    json coeffs = json::array();
    for (const BigInt& x : c.counts)
        coeffs.push_back(x.get_str());
    payload["coeffs"] = coeffs;
    payload["n"] = h.n;
    payload["k"] = h.k;
    emit(payload, out_path, out);
    return 0;
}

int run_poly(const std::string& file, const std::string& form, std::uint64_t budget,
             const std::string& out_path, std::ostream& out) {
    Hypergraph h = load_hypergraph_file(file);
    MatchCoeffs c = match_coeffs(h, count_options(budget));
    json payload;
    payload["n"] = h.n;
    payload["k"] = h.k;
    auto dump_poly = [](const MatchingPolynomial& p) {
        json arr = json::array();
        for (const BigInt& x : p.coeffs)
            arr.push_back(x.get_str());
        return arr;
    };
    if (form == "defect" || form == "both")
        payload["matching"] = dump_poly(matching_polynomial(c));
    if (form == "generating" || form == "both")
        payload["generating"] = dump_poly(generating_polynomial(c));
    emit(payload, out_path, out);
    return 0;
}

// ---------------------------------------------------------------------------

struct ProbArgs {
    std::string file, method = "brute", out;
    std::vector<int> avoid, given, order;
    std::uint64_t budget = 0, steps = 100000, seed = 0;
    std::size_t samples = 10000;
    bool seed_set = false;
    std::uint64_t max_nodes = 1'000'000;
};

int run_prob(const ProbArgs& a, std::ostream& out) {
    Hypergraph h = load_hypergraph_file(a.file);
    json payload;
    payload["method"] = a.method;
    if (a.method == "brute") {
        Probability p = prob_avoid(h, a.avoid, a.given, count_options(a.budget));
        payload["prob"] = rat_json(p.value);
        payload["provenance"] = p.provenance;
    } else {
        if (a.avoid.size() != 1 || !a.given.empty())
            fail(errc::usage_error,
                 "method '" + a.method + "' computes a single avoided vertex, no conditioning");
        Vertex v = a.avoid[0];
        VertexOrdering ord = ordering_for(h, a.order);
        if (a.method == "recursion") {
            Probability p = prob_via_recursion(h, v, ord, count_options(a.budget).budget);
            payload["prob"] = rat_json(p.value);
            payload["provenance"] = p.provenance;
        } else if (a.method == "walktree") {
            WalkTree t = build_walk_tree(h, v, ord, a.max_nodes);
            Probability p = prob_on_hypertree(t.tree, t.root);
            payload["prob"] = rat_json(p.value);
            payload["provenance"] = p.provenance;
            payload["tree_nodes"] = t.tree.n;
        } else if (a.method == "montecarlo") {
            if (!a.seed_set)
                fail(errc::usage_error, "--seed is required for montecarlo");
            McEstimate e = mc_estimate_avoid(h, v, a.steps, a.samples, a.seed);
            payload["estimate"] = e.estimate;
            payload["stderr"] = e.stderr_est;
            payload["samples"] = e.samples;
            payload["chain_steps"] = e.chain_steps;
        } else {
            fail(errc::usage_error, "unknown method '" + a.method + "'");
        }
    }
    emit(payload, a.out, out);
    return 0;
}

// ---------------------------------------------------------------------------

int run_walktree(const std::string& file, int root, const std::vector<int>& order,
                 std::uint64_t max_nodes, const std::string& out_path,
                 const std::string& walks_path, std::ostream& out) {
    Hypergraph h = load_hypergraph_file(file);
    WalkTree t = build_walk_tree(h, root, ordering_for(h, order), max_nodes);

    emit_text(serialize(t.tree), out_path, out);

    json sidecar;
    sidecar["root"] = t.root;
    sidecar["source_edges"] = t.edge_source;
    json walks = json::array();
    for (const ConflictFreeWalk& w : t.walks) {
        json jw;
        jw["vertices"] = w.vertices;
        jw["edges"] = w.edges;
        walks.push_back(std::move(jw));
    }
    sidecar["walks"] = std::move(walks);
    if (!walks_path.empty()) {
        std::ofstream f(walks_path);
        if (!f)
            fail(errc::syntax_error, "cannot open " + walks_path + " for writing");
        f << sidecar.dump(2) << "\n";
    } else if (!out_path.empty()) {
        out << sidecar.dump(2) << "\n";
    }
    return 0;
}

// ---------------------------------------------------------------------------

struct VerifyArgs {
    std::string what, file, out;
    int root = -1;
    int orders = 5;
    std::uint64_t seed = 0, budget = 0, max_nodes = 1'000'000;
    bool seed_set = false;
    std::vector<int> avoid;
};

int run_verify(const VerifyArgs& a, std::ostream& out) {
    Hypergraph h = load_hypergraph_file(a.file);
    json payload;
    bool all_ok = true;

    if (a.what == "godsil") {
        if (a.orders > 0 && !a.seed_set)
            fail(errc::usage_error, "--seed is required when sampling orderings");
        std::vector<Vertex> roots;
        if (a.root >= 0)
            roots.push_back(a.root);
        else
            for (Vertex v = 0; v < h.n; ++v)
                roots.push_back(v);
        std::mt19937_64 rng(a.seed);
        json checks = json::array();
        for (Vertex v : roots) {
            for (int t = 0; t < std::max(1, a.orders); ++t) {
                std::vector<int> perm(h.n);
                std::iota(perm.begin(), perm.end(), 0);
                if (t > 0)
                    std::shuffle(perm.begin(), perm.end(), rng);
                GodsilReport rep = verify_godsil(h, v, VertexOrdering::from_perm(perm),
                                                 count_options(a.budget), a.max_nodes);
                all_ok = all_ok && rep.equal && rep.prob_equal;
                json c;
                c["root"] = v;
                c["order_trial"] = t;
                c["equal"] = rep.equal;
                c["prob"] = rat_json(rep.prob_h);
                c["tree_nodes"] = rep.tree_nodes;
                checks.push_back(std::move(c));
            }
        }
        payload["equal"] = all_ok;
        payload["checks"] = std::move(checks);
    } else if (a.what == "identity") {
        MatchCoeffs c = match_coeffs(h, count_options(a.budget));
        MatchingPolynomial m = matching_polynomial(c);
        std::vector<BigInt> substituted(h.n + 1, BigInt(0));
        for (std::size_t i = 0; i < c.counts.size(); ++i)
            substituted[h.n - h.k * i] = (i % 2 == 0) ? c.counts[i] : BigInt(-c.counts[i]);
        bool ok = substituted == m.coeffs;
        all_ok = ok;
        payload["identity_holds"] = ok;
    } else if (a.what == "chain") {
        if (a.avoid.size() < 2)
            fail(errc::usage_error, "verify chain needs --avoid with >= 2 vertices");
        CountOptions opts = count_options(a.budget);
        Rational joint = prob_avoid(h, a.avoid, {}, opts).value;
        Rational chained(1);
        std::vector<Vertex> given;
        for (Vertex v : a.avoid) {
            chained *= prob_avoid(h, {v}, given, opts).value;
            given.push_back(v);
        }
        bool ok = joint == chained;
        all_ok = ok;
        payload["joint"] = rat_json(joint);
        payload["chained"] = rat_json(chained);
        payload["equal"] = ok;
    } else if (a.what == "bounds") {
        DegreeReport rep = degree_report(h);
        if (!rep.regular_degree || !rep.is_linear)
            fail(errc::domain_error, "bounds verification needs a d-regular linear input");
        int d = *rep.regular_degree;
        CountOptions opts = count_options(a.budget);
        Rational floor_bound(1, d + 1);
        floor_bound.canonicalize();
        Rational min_p(2);
        for (Vertex v = 0; v < h.n; ++v) {
            Rational p = prob_avoid(h, {v}, {}, opts).value;
            if (p < min_p)
                min_p = p;
        }
        Rational avg = avg_matching_size(h, opts);
        Rational cap = (1 - floor_bound) * Rational(h.n) / h.k;
        bool lower_ok = min_p >= floor_bound;
        bool avg_ok = avg <= cap;
        all_ok = lower_ok && avg_ok;
        payload["d"] = d;
        payload["min_prob"] = rat_json(min_p);
        payload["lower_bound"] = rat_json(floor_bound);
        payload["lower_ok"] = lower_ok;
        payload["avg"] = rat_json(avg);
        payload["avg_bound"] = rat_json(cap);
        payload["avg_ok"] = avg_ok;
    } else {
        fail(errc::usage_error, "unknown verify target '" + a.what + "'");
    }

    payload["ok"] = all_ok;
    emit(payload, a.out, out);
    return all_ok ? 0 : 1;
}

// ---------------------------------------------------------------------------

struct DynArgs {
    std::string what, out, p0 = "1", tol = "1/1000000000";
    int k = 3, d = 2, prec = 128, max_iters = 64, samples = 8;
    int d_min = 2, d_max = 16;
    bool csv = false;
};

int run_dynamics(const DynArgs& a, std::ostream& out) {
    dynamics::DynParams params{a.k, a.d};
    json payload;
    if (a.what == "fixed-points") {
        payload["k"] = a.k;
        payload["d"] = a.d;
        payload["alpha"] = enclosure_json(dynamics::alpha_enclosure(params, a.prec));
        bool three = a.k >= 3 && dynamics::has_three_fixed_points(params);
        payload["three_fixed_points"] = three;
        if (three) {
            dynamics::FixedPoints fp = dynamics::beta_gamma(params, a.prec);
            payload["beta"] = enclosure_json(fp.beta);
            payload["gamma"] = enclosure_json(fp.gamma);
        }
        if (a.csv) {
            std::vector<dynamics::ScanRow> rows = dynamics::scan_fixed_points(a.k, a.d, a.d, a.prec);
            emit_text(dynamics::scan_csv(rows, a.k), a.out, out);
            return 0;
        }
    } else if (a.what == "iterate") {
        dynamics::Trajectory t = dynamics::iterate_map(params, parse_rational(a.p0),
                                                       a.max_iters, parse_rational(a.tol));
        payload["k"] = a.k;
        payload["d"] = a.d;
        payload["classification"] = dynamics::attractor_name(t.classification);
        payload["converged"] = t.converged;
        payload["float_switch_index"] = t.float_switch_index;
        json pts = json::array();
        for (const dynamics::TrajPoint& pt : t.points) {
            json jp;
            jp["value"] = rat_json(pt.value);
            jp["dec"] = rat_decimal(pt.value, 24);
            jp["exact"] = pt.exact;
            pts.push_back(std::move(jp));
        }
        payload["trajectory"] = std::move(pts);
    } else if (a.what == "scan") {
        std::vector<dynamics::ScanRow> rows =
            dynamics::scan_fixed_points(a.k, a.d_min, a.d_max, a.prec);
        if (a.csv) {
            emit_text(dynamics::scan_csv(rows, a.k), a.out, out);
            return 0;
        }
        payload["k"] = a.k;
        int first_three = -1;
        json jrows = json::array();
        for (const dynamics::ScanRow& r : rows) {
            json jr;
            jr["d"] = r.d;
            jr["three"] = r.three;
            jr["alpha"] = enclosure_json(r.alpha);
            if (r.three) {
                if (first_three < 0)
                    first_three = r.d;
                jr["beta"] = enclosure_json(r.beta);
                jr["gamma"] = enclosure_json(r.gamma);
            }
            jrows.push_back(std::move(jr));
        }
        payload["smallest_three_fixed_point_d"] = first_three;
        payload["rows"] = std::move(jrows);
    } else if (a.what == "signs") {
        dynamics::SignPatternReport rep = dynamics::sign_pattern_check(params, a.samples, a.prec);
        payload["k"] = a.k;
        payload["d"] = a.d;
        payload["samples_per_interval"] = rep.samples_per_interval;
        payload["violations"] = rep.violations;
        payload["ok"] = rep.ok();
        emit(payload, a.out, out);
        return rep.ok() ? 0 : 1;
    } else {
        fail(errc::usage_error, "unknown dynamics target '" + a.what + "'");
    }
    emit(payload, a.out, out);
    return 0;
}

// ---------------------------------------------------------------------------

struct SampleArgs {
    std::string file, out;
    bool exact = false, glauber = false;
    std::size_t samples = 1000;
    std::uint64_t seed = 0, steps = 100000, budget = 0;
    bool seed_set = false;
    int v = 0;
};

int run_sample(const SampleArgs& a, std::ostream& out) {
    if (!a.seed_set)
        fail(errc::usage_error, "--seed is required for sampling");
    if (a.exact == a.glauber)
        fail(errc::usage_error, "pick exactly one of --exact / --glauber");
    Hypergraph h = load_hypergraph_file(a.file);
    json payload;
    payload["samples"] = a.samples;
    payload["seed"] = a.seed;
    if (a.exact) {
        auto batch = sample_matchings_exact(h, a.samples, a.seed, count_options(a.budget));
        std::map<std::string, int> hist;
        for (const Matching& m : batch) {
            std::string key;
            for (std::size_t i = 0; i < m.edge_indices.size(); ++i)
                key += (i ? "," : "") + std::to_string(m.edge_indices[i]);
            if (key.empty())
                key = "-";
            ++hist[key];
        }
        payload["mode"] = "exact";
        payload["histogram"] = hist;
    } else {
        payload["mode"] = "glauber";
        McEstimate e = mc_estimate_avoid(h, a.v, a.steps, a.samples, a.seed);
        payload["vertex"] = a.v;
        payload["estimate"] = e.estimate;
        payload["stderr"] = e.stderr_est;
        payload["chain_steps"] = e.chain_steps;
    }
    emit(payload, a.out, out);
    return 0;
}

// ---------------------------------------------------------------------------

struct ReportArgs {
    std::string out, eps = "1/10", p0 = "1", tol = "1/1000000";
    int k = 3, d = 0, prec = 96, max_levels = 64, d_limit = 512;
    std::string base_n, base_e;
    int base_levels = -1;
};

int run_report(const ReportArgs& a, std::ostream& out) {
    Rational eps = parse_rational(a.eps);
    Rational p0 = parse_rational(a.p0);
    Rational tol = parse_rational(a.tol);

    construct::GapSearch run;
    if (a.d > 0) {
        run = construct::gap_at_d(a.k, a.d, p0, eps, tol, a.prec, a.max_levels);
        run.d_first_certified = dynamics::smallest_three_fixed_point_d(a.k);
    } else {
        run = construct::find_gap_d(a.k, p0, eps, tol, a.prec, a.max_levels, a.d_limit);
    }
    bool certified = run.fixed_points.beta.sign_hi != 0;
    bool tower_ok = run.levels >= 0 && !run.tower.levels.empty();
    bool checks_ok = tower_ok && run.stats.center_ok && run.stats.head_ok;

    json payload;
    payload["k"] = a.k;
    payload["smallest_three_fixed_point_d"] = run.d_first_certified;
    payload["d"] = run.d;
    payload["epsilon"] = rat_json(eps);
    payload["p0"] = rat_json(p0);
    payload["tolerance"] = rat_json(tol);
    payload["three_fixed_points"] = certified;
    if (certified) {
        payload["alpha"] = enclosure_json(run.fixed_points.alpha);
        payload["beta"] = enclosure_json(run.fixed_points.beta);
        payload["gamma"] = enclosure_json(run.fixed_points.gamma);
    }
    payload["tower_within_tolerance"] = tower_ok;
    if (tower_ok) {
        payload["tower_levels"] = static_cast<int>(run.tower.levels.size()) - 1;
        json tail = json::array();
        std::size_t start = run.tower.levels.size() > 6 ? run.tower.levels.size() - 6 : 0;
        for (std::size_t i = start; i < run.tower.levels.size(); ++i) {
            json jp;
            jp["level"] = static_cast<int>(i);
            jp["dec"] = rat_decimal(run.tower.levels[i], 24);
            tail.push_back(std::move(jp));
        }
        payload["trajectory_tail"] = std::move(tail);
        payload["p"] = rat_json(run.stats.p);
        payload["P_center"] = rat_json(run.stats.p_center);
        payload["P_center_dec"] = rat_decimal(run.stats.p_center, 24);
        payload["P_head"] = rat_json(run.stats.p_head);
        payload["P_head_dec"] = rat_decimal(run.stats.p_head, 24);
        json checks;
        checks["center_ok"] = run.stats.center_ok;
        checks["head_ok"] = run.stats.head_ok;
        checks["epsilon"] = rat_json(eps);
        payload["checks"] = std::move(checks);
        if (!a.base_n.empty() && !a.base_e.empty() && a.base_levels >= 0) {
            auto [nv, ne] = construct::tower_size(a.k, run.d, a.base_levels, BigInt(a.base_n),
                                                  BigInt(a.base_e));
            BigInt copies = BigInt(run.d) * (a.k - 1);
            payload["virtual_vertices"] = BigInt(copies * nv + 1).get_str();
            payload["virtual_edges"] = BigInt(copies * ne + run.d).get_str();
        }
    }
    bool ok = certified && tower_ok && checks_ok;
    payload["ok"] = ok;
    emit(payload, a.out, out);
    return ok ? 0 : 1;
}

} // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact random-matching toolkit for k-uniform hypergraphs"};
    app.require_subcommand(1);

    GenArgs gen;
    CLI::App* gen_cmd = app.add_subcommand("gen", "generate named constructions");
    gen_cmd->add_option("what", gen.what,
                        "regular|extendable-search|extendable-paper|tower|counterexample")
        ->required();
    gen_cmd->add_option("--k", gen.k);
    gen_cmd->add_option("--d", gen.d);
    gen_cmd->add_option("--ell", gen.ell);
    gen_cmd->add_option("--levels", gen.levels);
    gen_cmd->add_option("--max-n", gen.max_n);
    gen_cmd->add_option("--base", gen.base, "edge|search|paper|file");
    gen_cmd->add_option("--base-file", gen.base_file);
    gen_cmd->add_option("--base-head", gen.base_head);
    gen_cmd->add_option("--out", gen.out);

    std::string count_file, count_out;
    std::uint64_t count_budget = 0;
    CLI::App* count_cmd = app.add_subcommand("count", "exact matching counts by size");
    count_cmd->add_option("file", count_file)->required();
    count_cmd->add_option("--budget", count_budget);
    count_cmd->add_option("--out", count_out);

    std::string poly_file, poly_form = "both", poly_out;
    std::uint64_t poly_budget = 0;
    CLI::App* poly_cmd = app.add_subcommand("poly", "matching polynomials");
    poly_cmd->add_option("file", poly_file)->required();
    poly_cmd->add_option("--form", poly_form, "defect|generating|both");
    poly_cmd->add_option("--budget", poly_budget);
    poly_cmd->add_option("--out", poly_out);

    ProbArgs prob;
    CLI::App* prob_cmd = app.add_subcommand("prob", "exact avoidance probabilities");
    prob_cmd->add_option("file", prob.file)->required();
    prob_cmd->add_option("--avoid", prob.avoid)->required()->delimiter(',');
    prob_cmd->add_option("--given", prob.given)->delimiter(',');
    prob_cmd->add_option("--method", prob.method, "brute|recursion|walktree|montecarlo");
    prob_cmd->add_option("--order", prob.order)->delimiter(',');
    prob_cmd->add_option("--budget", prob.budget);
    prob_cmd->add_option("--steps", prob.steps);
    prob_cmd->add_option("--samples", prob.samples);
    prob_cmd->add_option("--seed", prob.seed)->each([&](const std::string&) {
        prob.seed_set = true;
    });
    prob_cmd->add_option("--max-nodes", prob.max_nodes);
    prob_cmd->add_option("--out", prob.out);

    std::string wt_file, wt_out, wt_walks;
    int wt_root = 0;
    std::vector<int> wt_order;
    std::uint64_t wt_max_nodes = 1'000'000;
    CLI::App* wt_cmd = app.add_subcommand("walktree", "build and export the walk-tree");
    wt_cmd->add_option("file", wt_file)->required();
    wt_cmd->add_option("--root", wt_root)->required();
    wt_cmd->add_option("--order", wt_order)->delimiter(',');
    wt_cmd->add_option("--max-nodes", wt_max_nodes);
    wt_cmd->add_option("--out", wt_out);
    wt_cmd->add_option("--walks-out", wt_walks);

    VerifyArgs verify;
    CLI::App* verify_cmd = app.add_subcommand("verify", "identity and bound checkers");
    verify_cmd->add_option("what", verify.what, "godsil|identity|chain|bounds")->required();
    verify_cmd->add_option("file", verify.file)->required();
    verify_cmd->add_option("--root", verify.root);
    verify_cmd->add_option("--orders", verify.orders);
    verify_cmd->add_option("--seed", verify.seed)->each([&](const std::string&) {
        verify.seed_set = true;
    });
    verify_cmd->add_option("--avoid", verify.avoid)->delimiter(',');
    verify_cmd->add_option("--budget", verify.budget);
    verify_cmd->add_option("--max-nodes", verify.max_nodes);
    verify_cmd->add_option("--out", verify.out);

    DynArgs dyn;
    CLI::App* dyn_cmd = app.add_subcommand("dynamics", "fixed points and trajectories");
    dyn_cmd->add_option("what", dyn.what, "fixed-points|iterate|scan|signs")->required();
    dyn_cmd->add_option("--k", dyn.k);
    dyn_cmd->add_option("--d", dyn.d);
    dyn_cmd->add_option("--prec", dyn.prec);
    dyn_cmd->add_option("--p0", dyn.p0);
    dyn_cmd->add_option("--tol", dyn.tol);
    dyn_cmd->add_option("--max-iters", dyn.max_iters);
    dyn_cmd->add_option("--samples", dyn.samples);
    dyn_cmd->add_option("--d-min", dyn.d_min);
    dyn_cmd->add_option("--d-max", dyn.d_max);
    dyn_cmd->add_flag("--csv", dyn.csv);
    dyn_cmd->add_option("--out", dyn.out);

    SampleArgs sample;
    CLI::App* sample_cmd = app.add_subcommand("sample", "random matchings");
    sample_cmd->add_option("file", sample.file)->required();
    sample_cmd->add_flag("--exact", sample.exact);
    sample_cmd->add_flag("--glauber", sample.glauber);
    sample_cmd->add_option("--samples", sample.samples);
    sample_cmd->add_option("--steps", sample.steps);
    sample_cmd->add_option("--seed", sample.seed)->each([&](const std::string&) {
        sample.seed_set = true;
    });
    sample_cmd->add_option("--v", sample.v);
    sample_cmd->add_option("--budget", sample.budget);
    sample_cmd->add_option("--out", sample.out);

    ReportArgs report;
    CLI::App* report_cmd = app.add_subcommand("report", "reproducibility reports");
    std::string report_what;
    report_cmd->add_option("what", report_what, "kahn-gap")->required();
    report_cmd->add_option("--k", report.k);
    report_cmd->add_option("--d", report.d, "0 = scan for the smallest full-pipeline d");
    report_cmd->add_option("--eps", report.eps);
    report_cmd->add_option("--p0", report.p0);
    report_cmd->add_option("--tol", report.tol);
    report_cmd->add_option("--prec", report.prec);
    report_cmd->add_option("--max-levels", report.max_levels);
    report_cmd->add_option("--d-limit", report.d_limit);
    report_cmd->add_option("--base-n", report.base_n);
    report_cmd->add_option("--base-e", report.base_e);
    report_cmd->add_option("--base-levels", report.base_levels);
    report_cmd->add_option("--out", report.out);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0)
            return 0; // --help
        err << "UsageError: " << e.what() << "\n";
        return 2;
    }

    try {
        if (gen_cmd->parsed())
            return run_gen(gen, out);
        if (count_cmd->parsed())
            return run_count(count_file, count_budget, count_out, out);
        if (poly_cmd->parsed())
            return run_poly(poly_file, poly_form, poly_budget, poly_out, out);
        if (prob_cmd->parsed())
            return run_prob(prob, out);
        if (wt_cmd->parsed())
            return run_walktree(wt_file, wt_root, wt_order, wt_max_nodes, wt_out, wt_walks, out);
        if (verify_cmd->parsed())
            return run_verify(verify, out);
        if (dyn_cmd->parsed())
            return run_dynamics(dyn, out);
        if (sample_cmd->parsed())
            return run_sample(sample, out);
        if (report_cmd->parsed()) {
            if (report_what != "kahn-gap")
                fail(errc::usage_error, "unknown report '" + report_what + "'");
            return run_report(report, out);
        }
        fail(errc::usage_error, "no subcommand");
    } catch (const Error& e) {
        err << e.what() << "\n";
        return errc_exit_code(e.code());
    } catch (const std::exception& e) {
        err << "InternalError: " << e.what() << "\n";
        return 9;
    }
}

} // namespace hypermatch::cli
