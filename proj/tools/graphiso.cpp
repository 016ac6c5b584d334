// graphiso -- command-line front end: graph generation, spectral constants,
// the inequality chain, isoperimetric profiles, set geometry, the
// lamplighter counterexample, transport checks, Foelner radii, random-walk
// series and the acceptance suite.
#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "graphiso/family.hpp"
#include "graphiso/isoperimetry.hpp"
#include "graphiso/lazy_graph.hpp"
#include "graphiso/operators.hpp"
#include "graphiso/report.hpp"
#include "graphiso/spectral.hpp"
#include "graphiso/suite.hpp"
#include "graphiso/transport.hpp"
#include "graphiso/walks.hpp"

namespace {

using namespace graphiso;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitError = 2;

int emit_error(const std::string& type, const std::string& message) {
    Json j;
    j["artifact"] = "graphiso";
    j["version"] = kArtifactVersion;
    j["error"] = Json{{"type", type}, {"message", message}};
    std::cout << j.dump(2) << "\n";
    return kExitError;
}

struct Options {
    RunConfig cfg;
    std::uint32_t threads_flag = 0;
    std::vector<std::string> tol_kv;
    std::string format = "json";

    void finalize(const std::string& subcommand) {
        cfg.subcommand = subcommand;
        cfg.threads = resolve_threads(threads_flag);
        for (const auto& kv : tol_kv) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos)
                throw CLI::ValidationError("--tol expects name=value, got: " + kv);
            cfg.tolerances[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
        }
    }
    double tol(const std::string& name, double fallback) const {
        const auto it = cfg.tolerances.find(name);
        return it == cfg.tolerances.end() ? fallback : it->second;
    }
};

void add_common(CLI::App* sub, Options& o) {
    sub->add_option("--p", o.cfg.p, "exponents p (default 2)")->capture_default_str();
    sub->add_option("--seed", o.cfg.seed, "random seed")->capture_default_str();
    sub->add_option("--threads", o.threads_flag, "thread count (0 = env/hardware)");
    sub->add_option("--budget-vertices", o.cfg.budget_vertices, "materialization budget")
        ->capture_default_str();
    sub->add_option("--tol", o.tol_kv, "tolerance overrides, name=value");
    sub->add_option("--out", o.cfg.out, "output path (default stdout)");
    sub->add_option("--format", o.format, "json|csv (walk series only)")
        ->check(CLI::IsMember({"json", "csv"}));
}

std::vector<Vertex> parse_set(const std::string& csv) {
    std::vector<Vertex> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        out.push_back(static_cast<Vertex>(std::stoul(tok)));
    }
    if (out.empty()) throw std::invalid_argument("empty vertex set");
    return out;
}

// A lazy graph selected by spec: the built-in infinite families, or any
// finite family wrapped. Keeps the backing finite graph alive.
struct LazyPick {
    std::unique_ptr<FiniteGraph> finite;
    std::unique_ptr<LazyGraph> lazy;
    std::string origin;
};

LazyPick pick_lazy(const std::string& spec) {
    LazyPick out;
    if (spec == "lamplighter") {
        out.lazy = std::make_unique<LamplighterLazy>();
        out.origin = LamplighterLazy::encode(LampState{});
    } else if (spec == "line") {
        out.lazy = std::make_unique<LineLazy>();
        out.origin = LineLazy::encode(0);
    } else if (spec.rfind("grid-lazy:", 0) == 0) {
        const auto dim = static_cast<std::uint32_t>(std::stoul(spec.substr(10)));
        auto g = std::make_unique<GridLazy>(dim);
        out.origin = g->encode(std::vector<std::int64_t>(dim, 0));
        out.lazy = std::move(g);
    } else {
        out.finite = std::make_unique<FiniteGraph>(generate_family(spec));
        out.lazy = std::make_unique<WrappedFinite>(*out.finite);
        out.origin = WrappedFinite::encode(0);
    }
    return out;
}

int finish(const Options& o, Json payload, bool checks_pass) {
    write_report(o.cfg, make_report(o.cfg, std::move(payload)));
    return checks_pass ? kExitOk : kExitCheckFailed;
}

int cmd_gen(const Options& o) {
    const FiniteGraph g = generate_family(o.cfg.graph);
    Json edges = Json::array();
    for (std::uint32_t e = 0; e < g.edge_count(); ++e) {
        const auto [u, v] = g.edge_endpoints(e);
        edges.push_back(Json::array({u, v}));
    }
    Json j{{"vertex_count", g.vertex_count()},
           {"edge_count", g.edge_count()},
           {"regular", g.is_regular()},
           {"max_degree", g.max_degree()},
           {"connected", g.is_connected()},
           {"edges", std::move(edges)}};
    return finish(o, std::move(j), true);
}

int cmd_constants(const Options& o) {
    const FiniteGraph g = generate_family(o.cfg.graph);
    Json j;
    j["lambda2"] = lambda2_exact(g);
    const bool small = g.vertex_count() <= 20;
    const CheegerResult ch = small ? cheeger_exact(g) : cheeger_heuristic(g);
    j["kappa1"] = to_json(ch);
    Json per_p = Json::array();
    for (double p : o.cfg.p) {
        Json jp{{"p", p}};
        jp["kappa_p"] = to_json(kappa_p_estimate(g, p, 32, o.cfg.seed));
        jp["lambda_p"] = to_json(lambda_p_estimate(g, p, 32, o.cfg.seed));
        per_p.push_back(std::move(jp));
    }
    j["per_p"] = std::move(per_p);
    return finish(o, std::move(j), true);
}

int cmd_verify_chain(const Options& o) {
    const FiniteGraph g = generate_family(o.cfg.graph);
    const double tol = o.tol("chain", 1e-6);
    Json reports = Json::array();
    bool all = true;
    for (double p : o.cfg.p) {
        const ChainReport rep = verify_chain(g, p, 32, o.cfg.seed, tol);
        all = all && rep.all_hold;
        reports.push_back(to_json(rep));
    }
    return finish(o, Json{{"chains", std::move(reports)}, {"all_hold", all}}, all);
}

int cmd_profile(const Options& o, std::uint32_t max_size, bool witnesses) {
    const FiniteGraph g = generate_family(o.cfg.graph);
    const Profile prof =
        g.vertex_count() <= 20
            ? profile_exact(g)
            : profile_small_sets(g, max_size > 0 ? max_size
                                                 : std::min<std::uint32_t>(
                                                       12, g.vertex_count() / 2));
    Json j;
    j["profile"] = to_json(prof, witnesses);
    j["optimal_sets"] = to_json(optimal_sets(prof));
    j["fit"] = to_json(classify_profile(prof));
    return finish(o, std::move(j), true);
}

int cmd_geometry(const Options& o, const std::string& set_csv, double K, double k) {
    const FiniteGraph g = generate_family(o.cfg.graph);
    const VertexSubset F(g, parse_set(set_csv));
    const GeometryReport geo = set_geometry(g, F);
    const WrappedFinite wrap(g);
    const GrowthTable growth = volume_growth(wrap, WrappedFinite::encode(F.members().front()),
                                             geo.inradius, o.cfg.budget_vertices);
    std::optional<double> kappa1_induced;
    std::uint32_t induced_max_degree = 0;
    if (geo.induced_connected) {
        const InducedSubgraph ind = induced_subgraph(F);
        induced_max_degree = ind.graph.max_degree();
        kappa1_induced = (ind.graph.vertex_count() <= 20 ? cheeger_exact(ind.graph)
                                                         : cheeger_heuristic(ind.graph))
                             .value;
    }
    Json checks = Json::array();
    bool all = true;
    for (const auto& b : geometry_bound_checks(geo, growth, kappa1_induced, induced_max_degree)) {
        // The inradius-vs-mean comparison is reported, not asserted.
        if (b.applicable && b.name.rfind("inrad <= mean", 0) != 0) all = all && b.holds;
        checks.push_back(to_json(b));
    }
    Json j;
    j["geometry"] = to_json(geo);
    j["growth"] = to_json(growth);
    j["bound_checks"] = std::move(checks);
    j["radial"] = to_json(radial_check(geo, K, k));
    return finish(o, std::move(j), all);
}

int cmd_counterexample(const Options& o, std::uint32_t n, std::uint32_t j_param) {
    const Counterexample ce = counterexample_build(n, j_param, o.cfg.budget_vertices);
    const auto& r = ce.report;
    const std::uint64_t want_translates = (std::uint64_t{n} / j_param) << (n - j_param);
    const double fn = std::ldexp(static_cast<double>(n), static_cast<int>(n));
    const bool size_ok = static_cast<double>(r.fnj_size) >=
                         fn * (1.0 - 9.0 * std::ldexp(1.0, -static_cast<int>(j_param)));
    const bool bnd_ok =
        static_cast<double>(r.fnj_boundary) <=
        std::ldexp(2.0 + 27.0 * n * std::ldexp(1.0, -static_cast<int>(j_param)),
                   static_cast<int>(n));
    const bool ok = r.translates == want_translates && size_ok && bnd_ok &&
                    r.fnj_inradius <= 4 * j_param && r.complement_connected;
    Json j;
    j["report"] = to_json(r);
    j["checks"] = Json{{"translates_formula", r.translates == want_translates},
                       {"size_lower_bound", size_ok},
                       {"boundary_upper_bound", bnd_ok},
                       {"inradius_le_4j", r.fnj_inradius <= 4 * j_param},
                       {"complement_connected", r.complement_connected}};
    return finish(o, std::move(j), ok);
}

int cmd_transport(const Options& o, int instances) {
    const FiniteGraph g = generate_family(o.cfg.graph);
    const double pairing_tol = o.tol("pairing", 1e-9);
    const double residual_tol = o.tol("residual", 1e-10);
    std::mt19937_64 rng(o.cfg.seed);
    std::uniform_real_distribution<double> ud(-1.0, 1.0);
    int pairing_fail = 0, potential_fail = 0;
    Json sample;
    for (int i = 0; i < instances; ++i) {
        const double p = o.cfg.p[static_cast<std::size_t>(i) % o.cfg.p.size()];
        VertexFunction fn(g);
        for (auto& x : fn.values()) x = ud(rng);
        EdgeFunction tau(g);
        for (auto& x : tau.values()) x = ud(rng);
        const Measure div = Measure::from_function(divergence(tau));
        const auto [plus, minus] = split_measure(div);
        const TransportPattern pat = make_pattern(tau, minus, plus);
        const PairingBound b = pairing_bound(fn, pat, p);
        const double scale =
            std::max({std::abs(b.exact_diff), std::abs(b.gradient_pairing), 1.0});
        const bool ok = std::abs(b.exact_diff - b.gradient_pairing) <= pairing_tol * scale &&
                        b.exact_diff <= b.bound + pairing_tol * scale;
        if (!ok) ++pairing_fail;
        if (i == 0) sample["pairing_example"] = to_json(b);
    }
    // One potential pattern on a deterministic half-size connected set.
    {
        std::vector<Vertex> members;
        std::vector<Vertex> stack{0};
        VertexSubset F(g);
        while (!stack.empty() && F.size() < std::max<std::uint64_t>(2, g.vertex_count() / 2)) {
            const Vertex v = stack.back();
            stack.pop_back();
            if (F.contains(v)) continue;
            F.insert(v);
            for (Vertex u : g.neighbors(v)) stack.push_back(u);
        }
        const auto mem = F.members();
        Measure load;
        load.add(mem.front(), 1.0);
        load.add(mem.back(), -1.0);
        const PotentialPattern pp =
            potential_pattern(g, F, load, o.cfg.p.front(), g.common_degree());
        if (pp.residual >= residual_tol) ++potential_fail;
        sample["potential_pattern"] = to_json(pp);
    }
    const bool ok = pairing_fail == 0 && potential_fail == 0;
    Json j{{"instances", instances},
           {"pairing_failures", pairing_fail},
           {"potential_failures", potential_fail}};
    j.update(sample);
    return finish(o, std::move(j), ok);
}

int cmd_folner(const Options& o, const std::string& set_csv, std::vector<double> eps_list,
               std::uint32_t max_r) {
    const FiniteGraph g = generate_family(o.cfg.graph);
    const WrappedFinite wrap(g);
    const Window w = materialize_ball(wrap, WrappedFinite::encode(0), g.vertex_count(),
                                      2 * std::uint64_t{g.vertex_count()} + 16);
    VertexSubset F(w.graph);
    for (Vertex v : parse_set(set_csv)) {
        const auto idx = w.index_of(WrappedFinite::encode(v));
        if (idx < 0) throw std::invalid_argument("set vertex outside the graph");
        F.insert(static_cast<Vertex>(idx));
    }
    if (eps_list.empty()) eps_list = {0.1, 0.25, 0.5, 0.75};
    Json radii = Json::array();
    bool all = true;
    for (double eps : eps_list) {
        Json je{{"eps", eps}};
        if (const auto res = folner_radius(w, F, eps, max_r)) {
            je["r"] = res->r;
            je["lemma_holds"] = res->lemma_holds;
            all = all && res->lemma_holds;
        } else {
            je["r"] = nullptr;
        }
        radii.push_back(std::move(je));
    }
    Json j{{"radii", std::move(radii)}, {"crossing", to_json(eps0_r0(w, F, max_r))}};
    return finish(o, std::move(j), all);
}

int cmd_walk(const Options& o, std::uint32_t k_max, std::uint32_t fit_min,
             std::uint32_t fit_max, double prune, std::uint64_t max_support) {
    const LazyPick pick = pick_lazy(o.cfg.graph);
    WalkConfig cfg;
    cfg.prune_below = prune;
    cfg.max_support = max_support;
    cfg.loss_tolerance = o.tol("loss", 1e-6);
    const RhoSeries rs = return_probability(*pick.lazy, pick.origin, k_max, cfg);
    if (fit_max == 0) fit_max = k_max;
    if (fit_min == 0) fit_min = std::max<std::uint32_t>(4, k_max / 4);
    const DecayFit fit = fit_gamma(rs.rho, fit_min, fit_max);

    const std::string csv = rho_series_csv(rs);
    if (o.format == "csv") {
        if (o.cfg.out.empty()) {
            std::cout << csv;
            std::cout << to_json(fit).dump(2) << "\n";
        } else {
            std::ofstream f(o.cfg.out);
            if (!f) throw std::runtime_error("cannot open output file: " + o.cfg.out);
            f << csv;
            std::ofstream jf(o.cfg.out + ".fit.json");
            jf << make_report(o.cfg, to_json(fit)).dump(2) << "\n";
        }
        return rs.degraded ? kExitCheckFailed : kExitOk;
    }
    Json j;
    j["fit"] = to_json(fit);
    j["degraded"] = rs.degraded;
    j["series_csv"] = csv;
    return finish(o, std::move(j), !rs.degraded);
}

int cmd_suite(const Options& o, bool quick, std::vector<int> ids) {
    const auto results = run_criteria(ids, quick, o.cfg.budget_vertices);
    Json arr = Json::array();
    bool all = true;
    for (const auto& r : results) {
        std::cerr << (r.pass ? "[PASS]" : "[FAIL]") << " criterion " << r.id << ": " << r.name
                  << " -- " << r.detail << "\n";
        all = all && r.pass;
        arr.push_back(Json{{"id", r.id},
                           {"name", r.name},
                           {"pass", r.pass},
                           {"detail", r.detail},
                           {"seconds", r.seconds}});
    }
    return finish(o, Json{{"criteria", std::move(arr)}, {"all_pass", all}}, all);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"isoperimetric profiles, lp-spectral constants and transport patterns"};
    app.require_subcommand(1);
    Options o;

    auto* gen = app.add_subcommand("gen", "generate a graph family member");
    gen->add_option("spec", o.cfg.graph, "family descriptor")->required();
    add_common(gen, o);

    auto* constants = app.add_subcommand("constants", "lambda2, kappa1, kappa_p, lambda_p");
    constants->add_option("spec", o.cfg.graph)->required();
    add_common(constants, o);

    auto* chain = app.add_subcommand("verify-chain", "the inequality chain per p");
    chain->add_option("spec", o.cfg.graph)->required();
    add_common(chain, o);

    auto* profile = app.add_subcommand("profile", "isoperimetric profile and classification");
    profile->add_option("spec", o.cfg.graph)->required();
    std::uint32_t max_size = 0;
    bool witnesses = false;
    profile->add_option("--max-size", max_size, "small-set sweep limit (large graphs)");
    profile->add_flag("--witnesses", witnesses, "include witness sets in the report");
    add_common(profile, o);

    auto* geometry = app.add_subcommand("geometry", "geometry of one vertex set");
    geometry->add_option("spec", o.cfg.graph)->required();
    std::string set_csv;
    double radial_K = 1.0, radial_k = 1.0;
    geometry->add_option("--set", set_csv, "comma-separated vertex ids")->required();
    geometry->add_option("--radial-K", radial_K, "radial constant K")->capture_default_str();
    geometry->add_option("--radial-k", radial_k, "radial exponent k")->capture_default_str();
    add_common(geometry, o);

    auto* counter = app.add_subcommand("counterexample", "lamplighter F_{n;j} construction");
    std::uint32_t ce_n = 10, ce_j = 5;
    counter->add_option("--n", ce_n, "window parameter n")->capture_default_str();
    counter->add_option("--j", ce_j, "tile parameter j (j | n, n >= 2j)")->capture_default_str();
    add_common(counter, o);

    auto* transport = app.add_subcommand("transport", "randomized pairing/potential checks");
    transport->add_option("spec", o.cfg.graph)->required();
    int instances = 100;
    transport->add_option("--instances", instances, "randomized instances")
        ->capture_default_str();
    add_common(transport, o);

    auto* folner = app.add_subcommand("folner", "Foelner radii and the eps0/r0 crossing");
    folner->add_option("spec", o.cfg.graph)->required();
    std::string folner_set;
    std::vector<double> eps_list;
    std::uint32_t max_r = 64;
    folner->add_option("--set", folner_set, "comma-separated vertex ids")->required();
    folner->add_option("--eps", eps_list, "eps values (default 0.1 0.25 0.5 0.75)");
    folner->add_option("--max-r", max_r, "radius cap")->capture_default_str();
    add_common(folner, o);

    auto* walk = app.add_subcommand("walk", "return-probability series and decay fit");
    walk->add_option("spec", o.cfg.graph,
                     "lazy spec: lamplighter | line | grid-lazy:D | finite family")
        ->required();
    std::uint32_t k_max = 100, fit_min = 0, fit_max = 0;
    double prune = 0.0;
    std::uint64_t max_support = std::uint64_t{1} << 22;
    walk->add_option("--k-max", k_max, "series length")->capture_default_str();
    walk->add_option("--fit-min", fit_min, "fit range start (default k_max/4)");
    walk->add_option("--fit-max", fit_max, "fit range end (default k_max)");
    walk->add_option("--prune", prune, "pruning threshold")->capture_default_str();
    walk->add_option("--max-support", max_support, "front support cap")->capture_default_str();
    add_common(walk, o);

    auto* suite = app.add_subcommand("suite", "the acceptance battery");
    bool quick = false;
    std::vector<int> criteria;
    suite->add_flag("--quick", quick, "small-instance battery");
    suite->add_option("--criteria", criteria, "criterion ids (default all)");
    add_common(suite, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        return emit_error("usage", e.what());
    }

    try {
        if (gen->parsed()) { o.finalize("gen"); return cmd_gen(o); }
        if (constants->parsed()) { o.finalize("constants"); return cmd_constants(o); }
        if (chain->parsed()) { o.finalize("verify-chain"); return cmd_verify_chain(o); }
        if (profile->parsed()) { o.finalize("profile"); return cmd_profile(o, max_size, witnesses); }
        if (geometry->parsed()) {
            o.finalize("geometry");
            return cmd_geometry(o, set_csv, radial_K, radial_k);
        }
        if (counter->parsed()) {
            o.finalize("counterexample");
            o.cfg.graph = "lamplighter";
            return cmd_counterexample(o, ce_n, ce_j);
        }
        if (transport->parsed()) { o.finalize("transport"); return cmd_transport(o, instances); }
        if (folner->parsed()) {
            o.finalize("folner");
            return cmd_folner(o, folner_set, eps_list, max_r);
        }
        if (walk->parsed()) {
            o.finalize("walk");
            return cmd_walk(o, k_max, fit_min, fit_max, prune, max_support);
        }
        if (suite->parsed()) { o.finalize("suite"); return cmd_suite(o, quick, criteria); }
        return emit_error("usage", "no subcommand");
    } catch (const ResourceError& e) {
        return emit_error("resource", e.what());
    } catch (const CLI::ValidationError& e) {
        return emit_error("usage", e.what());
    } catch (const std::invalid_argument& e) {
        return emit_error("usage", e.what());
    } catch (const std::exception& e) {
        return emit_error("internal", e.what());
    }
}
