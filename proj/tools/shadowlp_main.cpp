#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>

#include "shadow/feasibility.hpp"
#include "shadow/harness.hpp"
#include "shadow/instance_io.hpp"

using nlohmann::json;
using namespace shadow;

namespace {

// Exit codes: 0 success/feasible, 2 infeasible, 3 unbounded,
// 4 degenerate retries exhausted.
constexpr int kExitOk = 0;
constexpr int kExitInfeasible = 2;
constexpr int kExitUnbounded = 3;
constexpr int kExitDegenerate = 4;

json vec_json(const Vec& v) {
    json out = json::array();
    for (int i = 0; i < v.size(); ++i) out.push_back(to_string(v[i]));
    return out;
}

json basis_json(const Basis& b) {
    json out = json::array();
    for (int i : b) out.push_back(i);
    return out;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    out << text;
}

int cmd_gen(const std::string& kind, int n, int m, std::uint64_t seed, const std::string& out_path) {
    Instance inst = generate_instance(kind, n, m, seed);
    save_instance(inst, out_path);
    json j;
    j["kind"] = inst.kind;
    j["m"] = inst.p.m();
    j["n"] = inst.p.n();
    j["path"] = out_path;
    std::cout << j.dump(2) << std::endl;
    return kExitOk;
}

int cmd_solve(const std::string& instance_path, const std::string& objective,
              const std::string& delta_sq_str, std::uint64_t seed, const std::string& force_x,
              const std::string& basis_str, const std::string& trace_path) {
    Instance inst = load_instance(instance_path);
    const Polyhedron& p = inst.p;
    Vec d = parse_vector(objective);
    if (d.size() != p.n()) throw BadParams("objective dimension mismatch");
    Rational delta_sq = parse_rational(delta_sq_str);
    Rng rng(seed);

    if (!is_bounded_polyhedron(p)) {
        std::cerr << "instance is unbounded; run `bound` first" << std::endl;
        return kExitUnbounded;
    }

    Basis start;
    if (!basis_str.empty()) {
        start = parse_basis(basis_str);
    } else {
        Phase1Result p1 = phase1_global_delta(p, delta_sq, rng);
        if (!p1.feasible()) {
            json j;
            j["status"] = "infeasible";
            j["round"] = p1.infeasible->row;
            j["gamma"] = to_string(p1.infeasible->gamma);
            j["rhs"] = to_string(p1.infeasible->rhs);
            std::cout << j.dump(2) << std::endl;
            return kExitInfeasible;
        }
        start = *p1.basis;
    }

    Phase2Options opts;
    opts.force_zero_x = (force_x == "zero");
    PivotTrace trace;
    opts.trace = &trace;
    Basis opt;
    try {
        opt = phase2_with_delta_search(p, delta_sq, start, d, rng, opts);
    } catch (const RetriesExhausted& e) {
        std::cerr << e.what() << std::endl;
        return kExitDegenerate;
    }
    Vec vertex = p.vertex_of(opt);

    json j;
    j["status"] = "optimal";
    j["basis"] = basis_json(opt);
    j["vertex"] = vec_json(vertex);
    j["value"] = to_string(dot(d, vertex));
    j["pivots"] = trace.pivots();
    if (!trace_path.empty()) {
        write_file(trace_path, trace_to_jsonl(trace));
        j["trace"] = trace_path;
    }
    std::cout << j.dump(2) << std::endl;
    return kExitOk;
}

int cmd_feasible(const std::string& instance_path, const std::string& mode,
                 const std::string& delta_sq_str, const std::string& delta_str,
                 std::uint64_t seed) {
    Instance inst = load_instance(instance_path);
    Rng rng(seed);
    Phase1Result res;
    if (mode == "subdet") {
        Integer Delta = delta_str.empty() ? max_subdeterminant(inst.p.A())
                                          : Integer(delta_str);
        res = phase1_subdeterminant(inst.p, Delta, rng);
    } else if (mode == "global") {
        Rational delta_sq =
            delta_sq_str.empty() ? global_delta_sq(inst.p.A()) : parse_rational(delta_sq_str);
        res = phase1_global_delta(inst.p, delta_sq, rng);
    } else {
        throw BadParams("mode must be subdet or global");
    }

    json j;
    if (res.feasible()) {
        j["status"] = "feasible";
        j["basis"] = basis_json(*res.basis);
        j["vertex"] = vec_json(inst.p.vertex_of(*res.basis));
        j["pivots"] = res.pivots;
        std::cout << j.dump(2) << std::endl;
        return kExitOk;
    }
    j["status"] = "infeasible";
    j["round"] = res.infeasible->row;
    j["gamma"] = to_string(res.infeasible->gamma);
    j["rhs"] = to_string(res.infeasible->rhs);
    j["pivots"] = res.pivots;
    std::cout << j.dump(2) << std::endl;
    return kExitInfeasible;
}

int cmd_bound(const std::string& instance_path, const std::string& mode,
              const std::string& basis_str, const std::string& delta_sq_str,
              const std::string& out_path) {
    Instance inst = load_instance(instance_path);
    Rational delta_sq = delta_sq_str.empty() ? local_delta_sq(inst.p) : parse_rational(delta_sq_str);

    std::pair<Polyhedron, BoundingReport> result = [&]() {
        if (mode == "local") {
            if (basis_str.empty()) throw BadParams("local mode needs --basis i,j,k");
            return bound_local(inst.p, parse_basis(basis_str), delta_sq);
        }
        if (mode == "global") return bound_global(inst.p, delta_sq);
        throw BadParams("mode must be local or global");
    }();

    Instance out{std::move(result.first), inst.kind + "-bounded", inst.meta};
    out.meta["bounded_mode"] = mode;
    out.meta["claimed_delta_sq_after"] = to_string(result.second.claimed_delta_sq_after);
    save_instance(out, out_path);

    json j;
    j["original_m"] = result.second.original_m;
    j["added"] = result.second.added_rows.rows();
    j["b_max_sq"] = to_string(result.second.b_max_sq);
    j["claimed_delta_sq_after"] = to_string(result.second.claimed_delta_sq_after);
    j["out"] = out_path;
    std::cout << j.dump(2) << std::endl;
    return kExitOk;
}

int cmd_certify(const std::string& instance_path, const std::string& what,
                const std::string& basis_str, const std::string& matching_path) {
    json j;
    if (what == "matching") {
        std::ifstream in(matching_path);
        if (!in) throw Error("cannot read " + matching_path);
        json g = json::parse(in);
        MatchingInstance mi;
        mi.num_vertices = g["vertices"].get<int>();
        for (const auto& e : g["edges"]) mi.edges.emplace_back(e[0].get<int>(), e[1].get<int>());
        for (const auto& e : g["matching"]) mi.matching.push_back(e.get<int>());
        MatchingCertificate cert = matching_width_certificate(mi);
        j["w"] = vec_json(cert.w);
        j["w_norm_sq"] = to_string(cert.w_norm_sq);
        j["tau_sq"] = to_string(cert.tau_sq);
        j["tau_sq_floor"] = to_string(cert.tau_sq_floor);
        j["matching_values_ok"] = cert.matching_values_ok;
        j["off_values_ok"] = cert.off_values_ok;
        j["norm_bound_ok"] = cert.norm_bound_ok;
        j["cycle_checks_ok"] = cert.cycle_checks_ok;
        j["cycles_checked"] = cert.cycles_checked;
        std::cout << j.dump(2) << std::endl;
        return kExitOk;
    }

    Instance inst = load_instance(instance_path);
    if (what == "local-delta") {
        Basis witness;
        Rational d = local_delta_sq(inst.p, &witness);
        WidthCertificate cert =
            width_certificate_of_cone(inst.p.A().select_rows(witness.indices()));
        j["delta_sq"] = to_string(d);
        j["tau_sq"] = to_string(cert.tau_sq);
        j["center"] = vec_json(cert.center);
        j["witness_basis"] = basis_json(witness);
    } else if (what == "global-delta") {
        std::vector<int> witness;
        Rational d = global_delta_sq(inst.p.A(), &witness);
        j["delta_sq"] = to_string(d);
        j["witness_basis"] = witness;
    } else if (what == "subdet") {
        SubdetBound sb = delta_from_subdeterminants(inst.p.A());
        j["delta1"] = sb.delta1.get_str();
        j["delta_nm1"] = sb.delta_nm1.get_str();
        j["delta_lb"] = to_string(sb.delta_lb);
        j["tau_lb"] = to_string(sb.tau_lb);
    } else if (what == "width") {
        if (basis_str.empty()) throw BadParams("width certification needs --basis");
        Basis basis = parse_basis(basis_str);
        WidthCertificate cert = width_certificate_of_cone(inst.p.A().select_rows(basis.indices()));
        j["delta_sq"] = to_string(cert.delta_sq);
        j["tau_sq"] = to_string(cert.tau_sq);
        j["radius_sq"] = to_string(cert.radius_sq);
        j["center"] = vec_json(cert.center);
        j["witness_basis"] = basis_json(basis);
        j["valid"] = cert.verify();
    } else if (what == "tau") {
        j["tau_sq"] = to_string(certified_tau_sq(inst.p));
    } else {
        throw BadParams("certify target must be local-delta|global-delta|subdet|width|tau|matching");
    }
    std::cout << j.dump(2) << std::endl;
    return kExitOk;
}

int cmd_diameter(const std::string& instance_path, const std::string& v1_str,
                 const std::string& v2_str, const std::string& tau_sq_str, std::uint64_t seed) {
    Instance inst = load_instance(instance_path);
    Basis v1 = parse_basis(v1_str), v2 = parse_basis(v2_str);
    Rational tau_sq = tau_sq_str.empty() ? certified_tau_sq(inst.p) : parse_rational(tau_sq_str);
    Rng rng(seed);
    DiameterPathResult res;
    try {
        res = diameter_path(inst.p, v1, v2, tau_sq, rng);
    } catch (const RetriesExhausted& e) {
        std::cerr << e.what() << std::endl;
        return kExitDegenerate;
    }
    json j;
    j["vertex_steps"] = res.vertex_steps;
    j["pivots"] = res.trace.pivots();
    j["endpoint_ok"] = res.endpoint_ok;
    j["length_bound"] = res.length_bound;
    json path = json::array();
    for (const auto& b : res.path) path.push_back(basis_json(b));
    j["path"] = std::move(path);
    std::cout << j.dump(2) << std::endl;
    return res.endpoint_ok ? kExitOk : 1;
}

int cmd_experiment(const ExperimentConfig& cfg, const std::string& csv_path) {
    cfg.validate();
    Instance inst = load_instance(cfg.instance_path);
    json j;
    j["kind"] = cfg.kind;
    j["trials"] = cfg.trials;
    j["seed"] = cfg.seed;

    if (cfg.kind == "crossings-shifted" || cfg.kind == "crossings-scaled") {
        if (!cfg.c) throw BadParams("crossing experiments need --c");
        if (cfg.kind == "crossings-shifted" && !cfg.d)
            throw BadParams("the shifted experiment needs --d");
        NormalFan fan = build_normal_fan(inst.p);
        Rational tau_sq = cfg.tau_sq ? *cfg.tau_sq : certified_tau_sq(inst.p);
        CrossingReport report =
            cfg.kind == "crossings-shifted"
                ? crossings_shifted(fan, *cfg.c, *cfg.d, cfg.trials, cfg.seed, tau_sq)
                : crossings_scaled(fan, *cfg.c, *cfg.alpha, cfg.trials, cfg.seed, tau_sq);
        j["tau_sq"] = to_string(tau_sq);
        j["mean"] = report.mean;
        j["stderr"] = report.stderr_mean;
        j["bound"] = report.bound;
        j["retries"] = report.retries;
        j["pass"] = report.pass;
        if (!csv_path.empty()) {
            write_file(csv_path, crossing_report_csv(report));
            j["csv"] = csv_path;
        }
        std::cout << j.dump(2) << std::endl;
        return kExitOk;
    }

    if (cfg.kind == "diameter") {
        if (!cfg.v1 || !cfg.v2) throw BadParams("diameter experiment needs --v1 and --v2");
        Rational tau_sq = cfg.tau_sq ? *cfg.tau_sq : certified_tau_sq(inst.p);
        std::ostringstream csv;
        csv << "trial,vertex_steps,pivots,endpoint_ok\n";
        double total = 0;
        bool all_ok = true;
        double bound = 0;
        for (int t = 0; t < cfg.trials; ++t) {
            Rng rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(t)));
            DiameterPathResult res = diameter_path(inst.p, *cfg.v1, *cfg.v2, tau_sq, rng);
            total += res.vertex_steps;
            all_ok = all_ok && res.endpoint_ok;
            bound = res.length_bound;
            csv << t << "," << res.vertex_steps << "," << res.trace.pivots() << ","
                << res.endpoint_ok << "\n";
        }
        j["tau_sq"] = to_string(tau_sq);
        j["mean_length"] = total / cfg.trials;
        j["length_bound"] = bound;
        j["all_endpoints_ok"] = all_ok;
        j["pass"] = all_ok && total / cfg.trials <= bound;
        if (!csv_path.empty()) {
            write_file(csv_path, csv.str());
            j["csv"] = csv_path;
        }
        std::cout << j.dump(2) << std::endl;
        return kExitOk;
    }

    // phase2-stats: repeated randomized solves with per-level pivot counts.
    if (!cfg.d) throw BadParams("phase2-stats needs --d");
    Rational delta_sq = cfg.delta_sq ? *cfg.delta_sq : local_delta_sq(inst.p);
    std::ostringstream csv;
    csv << "trial,total_pivots,levels\n";
    double total_pivots = 0;
    std::map<int, std::pair<double, double>> per_level;  // dim -> (pivots, bound), summed
    for (int t = 0; t < cfg.trials; ++t) {
        Rng rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(t)));
        Phase1Result p1 = phase1_global_delta(inst.p, delta_sq, rng);
        if (!p1.feasible()) throw Error("phase2-stats expects a feasible instance");
        std::vector<LevelStats> stats;
        Phase2Options opts;
        opts.stats = &stats;
        phase2_with_delta_search(inst.p, delta_sq, *p1.basis, *cfg.d, rng, opts);
        int pivots = 0;
        for (const auto& ls : stats) {
            pivots += ls.pivots;
            per_level[ls.dim].first += ls.pivots;
            per_level[ls.dim].second += ls.pivot_bound;
        }
        total_pivots += pivots;
        csv << t << "," << pivots << "," << stats.size() << "\n";
    }
    j["mean_pivots"] = total_pivots / cfg.trials;
    json levels = json::array();
    bool pass = true;
    for (const auto& [dim, acc] : per_level) {
        json lv;
        lv["dim"] = dim;
        lv["mean_pivots"] = acc.first / cfg.trials;
        lv["mean_bound"] = acc.second / cfg.trials;
        pass = pass && acc.first <= acc.second;
        levels.push_back(std::move(lv));
    }
    j["levels"] = std::move(levels);
    j["pass"] = pass;
    if (!csv_path.empty()) {
        write_file(csv_path, csv.str());
        j["csv"] = csv_path;
    }
    std::cout << j.dump(2) << std::endl;
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact-arithmetic shadow simplex solver and experiment harness"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "Generate a built-in instance");
    std::string gen_kind = "cube", gen_out = "instance.json";
    int gen_n = 3, gen_m = 0;
    std::uint64_t gen_seed = 0;
    gen->add_option("--kind", gen_kind, "cube|simplex|pyramid|tu-interval|random-delta");
    gen->add_option("--n", gen_n, "dimension");
    gen->add_option("--m", gen_m, "constraint count (random-delta)");
    gen->add_option("--seed", gen_seed, "seed");
    gen->add_option("--out", gen_out, "output path")->required();

    // solve
    auto* solve = app.add_subcommand("solve", "Phase-2 optimization");
    std::string s_instance, s_obj, s_delta = "", s_force, s_basis, s_trace;
    std::uint64_t s_seed = 0;
    solve->add_option("--instance", s_instance)->required();
    solve->add_option("--objective", s_obj, "comma-separated rationals")->required();
    solve->add_option("--delta-sq", s_delta, "delta^2 as p/q")->required();
    solve->add_option("--seed", s_seed);
    solve->add_option("--force-x", s_force, "zero: disable randomness (testing)");
    solve->add_option("--basis", s_basis, "start basis i,j,k (default: phase 1)");
    solve->add_option("--trace-out", s_trace, "pivot trace output path (json lines)");

    // feasible
    auto* feas = app.add_subcommand("feasible", "Phase-1 feasibility");
    std::string f_instance, f_mode = "global", f_delta_sq, f_delta;
    std::uint64_t f_seed = 0;
    feas->add_option("--instance", f_instance)->required();
    feas->add_option("--mode", f_mode, "subdet|global");
    feas->add_option("--delta-sq", f_delta_sq, "global delta^2 (default: certified)");
    feas->add_option("--delta", f_delta, "subdeterminant bound (default: computed)");
    feas->add_option("--seed", f_seed);

    // bound
    auto* bnd = app.add_subcommand("bound", "LP-equivalent boundedness transform");
    std::string b_instance, b_mode = "global", b_basis, b_delta_sq, b_out;
    bnd->add_option("--instance", b_instance)->required();
    bnd->add_option("--mode", b_mode, "local|global");
    bnd->add_option("--basis", b_basis, "feasible basis for local mode");
    bnd->add_option("--delta-sq", b_delta_sq, "delta^2 (default: certified local)");
    bnd->add_option("--out", b_out, "output instance path")->required();

    // certify
    auto* cert = app.add_subcommand("certify", "delta/tau/subdet/width/matching certificates");
    std::string c_instance, c_what = "local-delta", c_basis, c_matching;
    cert->add_option("--instance", c_instance);
    cert->add_option("--what", c_what, "local-delta|global-delta|subdet|width|tau|matching");
    cert->add_option("--basis", c_basis);
    cert->add_option("--matching", c_matching, "matching instance JSON path");

    // diameter
    auto* diam = app.add_subcommand("diameter", "three-segment path between vertices");
    std::string d_instance, d_v1, d_v2, d_tau;
    std::uint64_t d_seed = 0;
    diam->add_option("--instance", d_instance)->required();
    diam->add_option("--v1", d_v1, "basis of the start vertex")->required();
    diam->add_option("--v2", d_v2, "basis of the target vertex")->required();
    diam->add_option("--tau-sq", d_tau, "tau^2 (default: certified)");
    diam->add_option("--seed", d_seed);

    // experiment
    auto* exp = app.add_subcommand("experiment", "Monte-Carlo experiments");
    ExperimentConfig cfg;
    std::string e_tau, e_alpha, e_c, e_d, e_v1, e_v2, e_delta_sq, e_csv;
    exp->add_option("--kind", cfg.kind, "diameter|crossings-shifted|crossings-scaled|phase2-stats")
        ->required();
    exp->add_option("--instance", cfg.instance_path)->required();
    exp->add_option("--trials", cfg.trials);
    exp->add_option("--seed", cfg.seed);
    exp->add_option("--tau-sq", e_tau);
    exp->add_option("--alpha", e_alpha);
    exp->add_option("--c", e_c, "segment start objective");
    exp->add_option("--d", e_d, "segment end objective");
    exp->add_option("--v1", e_v1);
    exp->add_option("--v2", e_v2);
    exp->add_option("--delta-sq", e_delta_sq);
    exp->add_option("--csv", e_csv, "per-trial CSV output path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) return cmd_gen(gen_kind, gen_n, gen_m, gen_seed, gen_out);
        if (solve->parsed())
            return cmd_solve(s_instance, s_obj, s_delta, s_seed, s_force, s_basis, s_trace);
        if (feas->parsed()) return cmd_feasible(f_instance, f_mode, f_delta_sq, f_delta, f_seed);
        if (bnd->parsed()) return cmd_bound(b_instance, b_mode, b_basis, b_delta_sq, b_out);
        if (cert->parsed()) return cmd_certify(c_instance, c_what, c_basis, c_matching);
        if (diam->parsed()) return cmd_diameter(d_instance, d_v1, d_v2, d_tau, d_seed);
        if (exp->parsed()) {
            if (!e_tau.empty()) cfg.tau_sq = parse_rational(e_tau);
            if (!e_alpha.empty()) cfg.alpha = parse_rational(e_alpha);
            if (!e_c.empty()) cfg.c = parse_vector(e_c);
            if (!e_d.empty()) cfg.d = parse_vector(e_d);
            if (!e_v1.empty()) cfg.v1 = parse_basis(e_v1);
            if (!e_v2.empty()) cfg.v2 = parse_basis(e_v2);
            if (!e_delta_sq.empty()) cfg.delta_sq = parse_rational(e_delta_sq);
            return cmd_experiment(cfg, e_csv);
        }
    } catch (const UnboundedDirection& e) {
        std::cerr << e.what() << std::endl;
        return kExitUnbounded;
    } catch (const Unbounded& e) {
        std::cerr << e.what() << std::endl;
        return kExitUnbounded;
    } catch (const RetriesExhausted& e) {
        std::cerr << e.what() << std::endl;
        return kExitDegenerate;
    } catch (const std::exception& e) {
        std::cerr << e.what() << std::endl;
        return 1;
    }
    return kExitOk;
}
