#include "graphiso/report.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace graphiso {

std::uint32_t resolve_threads(std::uint32_t flag_value) {
    if (flag_value > 0) return flag_value;
    if (const char* env = std::getenv("GRAPHISO_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<std::uint32_t>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

Json to_json(const RunConfig& c) {
    Json j;
    j["subcommand"] = c.subcommand;
    j["graph"] = c.graph;
    j["p"] = c.p;
    j["seed"] = c.seed;
    j["threads"] = c.threads;
    j["budget_vertices"] = c.budget_vertices;
    j["out"] = c.out.empty() ? "-" : c.out;
    j["tolerances"] = c.tolerances;
    return j;
}

Json make_report(const RunConfig& c, Json payload) {
    Json j;
    j["artifact"] = "graphiso";
    j["version"] = kArtifactVersion;
    const auto now = std::chrono::system_clock::now();
    j["timestamp_unix_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(now.time_since_epoch()).count();
    j["config"] = to_json(c);
    j["result"] = std::move(payload);
    return j;
}

std::string write_report(const RunConfig& c, const Json& report) {
    if (c.out.empty()) {
        std::cout << report.dump(2) << "\n";
        return "-";
    }
    std::ofstream f(c.out);
    if (!f) throw std::runtime_error("cannot open output file: " + c.out);
    f << report.dump(2) << "\n";
    return c.out;
}

Json to_json(const ChainItem& it) {
    return Json{{"name", it.name},
                {"lhs", it.lhs},
                {"rhs", it.rhs},
                {"slack", it.slack},
                {"holds", it.holds}};
}

Json to_json(const ChainReport& r) {
    Json items = Json::array();
    for (const auto& it : r.items) items.push_back(to_json(it));
    return Json{{"p", r.p},          {"degree", r.degree},
                {"lambda2", r.lambda2}, {"kappa1", r.kappa1},
                {"kappa_p", r.kappa_p}, {"lambda_p", r.lambda_p},
                {"items", std::move(items)}, {"all_hold", r.all_hold}};
}

Json to_json(const CheegerResult& r) {
    return Json{{"value", r.value},
                {"boundary", r.boundary},
                {"set_size", r.set_size},
                {"witness", r.witness.members()},
                {"exact", r.exact}};
}

Json to_json(const VariationalResult& r) {
    return Json{{"value", r.value},
                {"p", r.p},
                {"restarts", r.restarts},
                {"iterations", r.iterations}};
}

Json to_json(const Profile& p, bool include_witnesses) {
    Json entries = Json::array();
    for (const auto& e : p.entries) {
        Json je{{"size", e.size}, {"boundary", e.boundary},
                {"ratio", e.ratio}, {"exact", e.exact}};
        if (include_witnesses) je["witness"] = e.witness.members();
        entries.push_back(std::move(je));
    }
    return Json{{"entries", std::move(entries)}, {"envelope", p.envelope}};
}

Json to_json(const OptimalSets& s) {
    return Json{{"sizes", s.sizes},
                {"doubling_consistent", s.doubling_consistent},
                {"doubling_violations", s.doubling_violations}};
}

Json to_json(const ProfileFit& f) {
    const char* cls = f.cls == ProfileClass::StrongIsoperimetry ? "strong"
                      : f.cls == ProfileClass::Radial           ? "radial"
                                                                : "degenerate";
    return Json{{"class", cls},
                {"c_strong", f.c_strong},
                {"radial_K", f.radial_K},
                {"radial_k", f.radial_k},
                {"rss", f.rss}};
}

Json to_json(const GeometryReport& g) {
    return Json{{"size", g.size},
                {"boundary", g.boundary},
                {"inradius", g.inradius},
                {"mean_dist_boundary", g.mean_dist_boundary},
                {"diameter", g.diameter},
                {"induced_connected", g.induced_connected}};
}

Json to_json(const BoundCheck& b) {
    return Json{{"name", b.name},
                {"lhs", b.lhs},
                {"rhs", b.rhs},
                {"holds", b.holds},
                {"applicable", b.applicable}};
}

Json to_json(const RadialCheck& r) {
    return Json{{"K", r.constant_K},
                {"k", r.exponent_k},
                {"ratio", r.ratio},
                {"holds", r.holds}};
}

Json to_json(const GrowthTable& t) {
    return Json{{"ball_sizes", t.ball_sizes}, {"sphere_sizes", t.sphere_sizes}};
}

Json to_json(const CounterexampleReport& r) {
    return Json{{"n", r.n},
                {"j", r.j},
                {"fn_size", r.fn_size},
                {"fn_boundary", r.fn_boundary},
                {"translates", r.translates},
                {"tree_edges", r.tree_edges},
                {"removed", r.removed},
                {"max_path_len", r.max_path_len},
                {"fnj_size", r.fnj_size},
                {"fnj_boundary", r.fnj_boundary},
                {"fnj_inradius", r.fnj_inradius},
                {"complement_connected", r.complement_connected},
                {"translate_diameter", r.translate_diameter},
                {"size_ratio", r.size_ratio},
                {"boundary_ratio", r.boundary_ratio},
                {"isoperimetric_ratio", r.isoperimetric_ratio}};
}

Json to_json(const Measure& m) {
    Json j = Json::array();
    for (const auto& [v, x] : m.entries()) j.push_back(Json{{"vertex", v}, {"mass", x}});
    return j;
}

Json to_json(const PairingBound& b) {
    return Json{{"exact_diff", b.exact_diff},
                {"gradient_pairing", b.gradient_pairing},
                {"bound", b.bound},
                {"holds", b.holds}};
}

Json to_json(const PotentialPattern& p) {
    return Json{{"residual", p.residual},
                {"iterations", p.iterations},
                {"tau_norm", p.tau_norm},
                {"load_norm", p.load_norm},
                {"lambda_p", p.lambda_p},
                {"norm_bound", p.norm_bound}};
}

Json to_json(const FolnerRadiusResult& r) {
    return Json{{"r", r.r}, {"lemma_holds", r.lemma_holds}};
}

Json to_json(const FolnerRecord& r) {
    Json grid = Json::array();
    for (std::size_t i = 0; i < r.eps_grid.size(); ++i) {
        Json je{{"eps", r.eps_grid[i]}};
        if (r.r_of[i])
            je["r"] = *r.r_of[i];
        else
            je["r"] = nullptr;
        grid.push_back(std::move(je));
    }
    return Json{{"grid", std::move(grid)},
                {"eps0", r.eps0},
                {"eps_hi", r.eps_hi},
                {"r0", r.r0},
                {"monotone", r.monotone},
                {"cube_bound_holds", r.cube_bound_holds}};
}

Json to_json(const DecayFit& f) {
    return Json{{"gamma", f.gamma},
                {"K1", f.K1},
                {"K2", f.K2},
                {"residual", f.residual},
                {"k_range", Json::array({f.k_min, f.k_max})}};
}

Json to_json(const PipelineReport& r) {
    return Json{{"mode", r.mode == PipelineMode::Radial ? "radial" : "folner"},
                {"r_steps", r.r_steps},
                {"r0", r.r0},
                {"eps0", r.eps0},
                {"escaped_mass", r.escaped_mass},
                {"tau_in_norm", r.tau_in_norm},
                {"tau_out_norm", r.tau_out_norm},
                {"tau_total_norm", r.tau_total_norm},
                {"escaped_l1_cost", r.escaped_l1_cost},
                {"escaped_l1_budget", r.escaped_l1_budget},
                {"g_norm", r.g_norm},
                {"return_prob", r.return_prob},
                {"g_bound", r.g_bound},
                {"kappa1", r.kappa1},
                {"kappa1_exact", r.kappa1_exact},
                {"norm_bound", r.norm_bound},
                {"norm_bound_q", r.norm_bound_q},
                {"norm_bound_holds", r.norm_bound_holds}};
}

std::string rho_series_csv(const RhoSeries& s) {
    std::ostringstream out;
    out << "k,rho,loss\n";
    out.precision(17);
    for (std::size_t k = 0; k < s.rho.size(); ++k)
        out << k << "," << s.rho[k] << "," << s.loss[k] << "\n";
    return out.str();
}

}  // namespace graphiso
