#include "graphiso/suite.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <stdexcept>

#include "graphiso/family.hpp"
#include "graphiso/isoperimetry.hpp"
#include "graphiso/lazy_graph.hpp"
#include "graphiso/operators.hpp"
#include "graphiso/spectral.hpp"
#include "graphiso/transport.hpp"
#include "graphiso/walks.hpp"

namespace graphiso {

namespace {

struct Failures {
    std::vector<std::string> items;
    int checks = 0;

    void require(bool ok, const std::string& what) {
        ++checks;
        if (!ok) items.push_back(what);
    }
    bool pass() const { return items.empty(); }
    std::string summary(const std::string& ok_note) const {
        if (items.empty()) {
            std::ostringstream s;
            s << checks << " checks; " << ok_note;
            return s.str();
        }
        std::ostringstream s;
        s << items.size() << "/" << checks << " checks failed: " << items.front();
        for (std::size_t i = 1; i < std::min<std::size_t>(items.size(), 3); ++i)
            s << "; " << items[i];
        if (items.size() > 3) s << "; ...";
        return s.str();
    }
};

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

// A finite graph wrapped as a fully materialized window (no truncation).
struct HostWindow {
    WrappedFinite lazy;
    Window window;

    explicit HostWindow(const FiniteGraph& g)
        : lazy(g),
          window(materialize_ball(lazy, WrappedFinite::encode(0), g.vertex_count(),
                                  2 * std::uint64_t{g.vertex_count()} + 16)) {}

    // Subset of the window graph matching `members` of the original graph.
    VertexSubset subset(const std::vector<Vertex>& members) const {
        VertexSubset F(window.graph);
        for (Vertex v : members) {
            const auto idx = window.index_of(WrappedFinite::encode(v));
            if (idx < 0) throw std::logic_error("suite: vertex missing from window");
            F.insert(static_cast<Vertex>(idx));
        }
        return F;
    }
};

VertexSubset random_connected_subset(const FiniteGraph& g, std::mt19937_64& rng) {
    const Vertex n = g.vertex_count();
    std::uniform_int_distribution<Vertex> vd(0, n - 1);
    std::uniform_int_distribution<std::uint64_t> sd(1, n - 1);
    const std::uint64_t target = sd(rng);
    VertexSubset F(g);
    const Vertex start = vd(rng);
    F.insert(start);
    std::vector<Vertex> frontier;
    for (Vertex u : g.neighbors(start)) frontier.push_back(u);
    while (F.size() < target && !frontier.empty()) {
        std::uniform_int_distribution<std::size_t> fd(0, frontier.size() - 1);
        const std::size_t i = fd(rng);
        const Vertex v = frontier[i];
        frontier[i] = frontier.back();
        frontier.pop_back();
        if (F.contains(v)) continue;
        F.insert(v);
        for (Vertex u : g.neighbors(v))
            if (!F.contains(u)) frontier.push_back(u);
    }
    return F;
}

// ---- criterion bodies -----------------------------------------------------

// The kappa/lambda inequality chain on every suite graph and exponent,
// plus the analytic K2 case where the table form of the conductance/gap
// comparison fails while the lemma form holds.
void crit_chain(Failures& f, bool quick) {
    const std::vector<double> ps = quick ? std::vector<double>{2.0, 3.0}
                                         : std::vector<double>{1.5, 2.0, 3.0, 5.0};
    const std::uint32_t restarts = quick ? 8 : 32;
    for (const auto& spec : suite_graph_specs()) {
        const FiniteGraph g = generate_family(spec);
        for (double p : ps) {
            const ChainReport rep = verify_chain(g, p, restarts, 1, 1e-6);
            for (const auto& it : rep.items) {
                const bool equality_item = it.name.rfind("kappa_2^2", 0) == 0;
                const double tol = equality_item ? 1e-5 : 1e-6;
                f.require(it.slack >= -tol, spec + " p=" + fmt(p) + " " + it.name +
                                                " slack=" + fmt(it.slack));
            }
        }
    }

    // K2: kappa_p = 2^{1-1/p}, lambda_p = 2, d = 1. The table form
    // kappa_p >= d^{1/p} lambda_p fails for every p > 1 while the lemma
    // form kappa_p >= d^{1/p}/2 lambda_p holds.
    const FiniteGraph k2 = generate_family("complete:2");
    for (double p : ps) {
        const double kp = kappa_p_estimate(k2, p, 8, 1).value;
        const double lp = lambda_p_estimate(k2, p, 8, 1).value;
        const double kp_exact = std::pow(2.0, 1.0 - 1.0 / p);
        f.require(std::abs(kp - kp_exact) < 1e-6,
                  "K2 kappa_p p=" + fmt(p) + " got " + fmt(kp));
        f.require(std::abs(lp - 2.0) < 1e-6, "K2 lambda_p p=" + fmt(p) + " got " + fmt(lp));
        f.require(kp_exact < lp - 1e-9, "K2 table form unexpectedly holds p=" + fmt(p));
        f.require(kp_exact >= 0.5 * lp - 1e-9, "K2 lemma form fails p=" + fmt(p));
    }
}

// Cheeger inequality with exact rational kappa_1 and eigensolved lambda_2.
void crit_cheeger(Failures& f, bool) {
    for (const auto& spec : suite_graph_specs()) {
        const FiniteGraph g = generate_family(spec);
        const double d = g.common_degree();
        const CheegerResult ch = cheeger_exact(g);
        const double l2 = lambda2_exact(g);
        const double k1 = static_cast<double>(ch.boundary) / static_cast<double>(ch.set_size);
        f.require(ch.exact, spec + " kappa1 not exact");
        f.require(k1 * k1 / (2.0 * d * d) <= l2 + 1e-9,
                  spec + " lower cheeger fails: " + fmt(k1 * k1 / (2 * d * d)) + " > " +
                      fmt(l2));
        f.require(l2 <= 2.0 * k1 / d + 1e-9,
                  spec + " upper cheeger fails: " + fmt(l2) + " > " + fmt(2 * k1 / d));
    }
}

// |F_n| = n 2^n and |dF_n| = 2^{n+1}, exact counts.
void crit_folner_counts(Failures& f, bool quick, std::uint64_t budget) {
    const std::uint32_t n_max = quick ? 8 : 12;
    for (std::uint32_t n = 1; n <= n_max; ++n) {
        const Window w = lamplighter_window(n, 1, budget);
        const std::uint64_t want_size = std::uint64_t{n} << n;
        const std::uint64_t want_bnd = std::uint64_t{1} << (n + 1);
        f.require(w.core.size() == want_size,
                  "n=" + std::to_string(n) + " |F_n|=" + std::to_string(w.core.size()));
        const std::uint64_t bnd = edge_boundary_size(w.core);
        f.require(bnd == want_bnd, "n=" + std::to_string(n) + " |dF_n|=" + std::to_string(bnd));
    }
}

// The counterexample sets F_{n;j}: paving counts, size and boundary bounds,
// small inner radius, and the decreasing radial ratio along n.
void crit_counterexample(Failures& f, bool quick, std::uint64_t budget) {
    const std::vector<std::pair<std::uint32_t, std::uint32_t>> cases =
        quick ? std::vector<std::pair<std::uint32_t, std::uint32_t>>{{10, 5}}
              : std::vector<std::pair<std::uint32_t, std::uint32_t>>{
                    {10, 5}, {15, 5}, {20, 5}};
    std::vector<double> ratios;
    for (const auto& [n, j] : cases) {
        const Counterexample ce = counterexample_build(n, j, budget);
        const auto& r = ce.report;
        const std::string tag = "(n=" + std::to_string(n) + ",j=" + std::to_string(j) + ") ";
        const std::uint64_t want_translates = (std::uint64_t{n} / j) << (n - j);
        f.require(r.translates == want_translates,
                  tag + "translates=" + std::to_string(r.translates));
        const double fn = std::ldexp(static_cast<double>(n), static_cast<int>(n));
        f.require(static_cast<double>(r.fnj_size) >= fn * (1.0 - 9.0 * std::ldexp(1.0, -int(j))),
                  tag + "|F_{n;j}| too small: " + std::to_string(r.fnj_size));
        const double bnd_cap =
            std::ldexp(2.0 + 27.0 * n * std::ldexp(1.0, -int(j)), static_cast<int>(n));
        f.require(static_cast<double>(r.fnj_boundary) <= bnd_cap,
                  tag + "|dF_{n;j}|=" + std::to_string(r.fnj_boundary) + " > " + fmt(bnd_cap));
        f.require(r.fnj_inradius <= 4 * j,
                  tag + "inradius=" + std::to_string(r.fnj_inradius));
        // Radial ratio |dA| (1 + inrad(A)) / |A| at K = k = 1, with the
        // certified inradius cap 4j. The exact inradius fluctuates with the
        // path layout (4, 7, 8 across this sweep), so the trend statement
        // uses the cap, exactly as the violation argument does.
        ratios.push_back(static_cast<double>(r.fnj_boundary) * (1.0 + 4.0 * j) /
                         static_cast<double>(r.fnj_size));
    }
    for (std::size_t i = 1; i < ratios.size(); ++i)
        f.require(ratios[i] < ratios[i - 1],
                  "radial ratio not decreasing: " + fmt(ratios[i - 1]) + " -> " +
                      fmt(ratios[i]));
}

// Foelner lemma 2 r |dF| >= d eps |F| for the computed minimal radius, in
// exact arithmetic, over randomized connected subsets. Radii that do not
// exist below the cap (bipartite oscillation) are vacuous.
void crit_folner_lemma(Failures& f, bool quick, std::uint64_t seed) {
    const std::vector<double> eps_list =
        quick ? std::vector<double>{0.25, 0.5} : std::vector<double>{0.1, 0.25, 0.5, 0.75};
    const int n_sets = quick ? 10 : 50;
    int existing = 0, skipped = 0;
    for (const auto& spec : suite_graph_specs()) {
        const FiniteGraph g = generate_family(spec);
        const HostWindow hw(g);
        std::mt19937_64 rng(seed ^ std::hash<std::string>{}(spec));
        for (int i = 0; i < n_sets; ++i) {
            const VertexSubset Fg = random_connected_subset(g, rng);
            const VertexSubset F = hw.subset(Fg.members());
            for (double eps : eps_list) {
                const auto res = folner_radius(hw.window, F, eps, 64);
                if (!res) {
                    ++skipped;
                    continue;
                }
                ++existing;
                f.require(res->lemma_holds, spec + " set#" + std::to_string(i) +
                                                " eps=" + fmt(eps) +
                                                " r=" + std::to_string(res->r) +
                                                " violates the lemma");
            }
        }
    }
    f.require(existing > 0, "no Foelner radius existed anywhere");
    (void)skipped;
}

// Pairing identity and Hoelder bound on randomized (f, tau) instances, and
// divergence residuals of potential patterns.
void crit_transport(Failures& f, bool quick, std::uint64_t seed) {
    const auto& specs = suite_graph_specs();
    std::vector<FiniteGraph> graphs;
    for (const auto& s : specs) graphs.push_back(generate_family(s));
    const std::vector<double> ps{1.5, 2.0, 3.0, 5.0};
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ud(-1.0, 1.0);

    const int n_pairing = quick ? 100 : 1000;
    for (int i = 0; i < n_pairing; ++i) {
        const FiniteGraph& g = graphs[i % graphs.size()];
        const double p = ps[i % ps.size()];
        VertexFunction fn(g);
        for (auto& x : fn.values()) x = ud(rng);
        EdgeFunction tau(g);
        for (auto& x : tau.values()) x = ud(rng);
        const Measure div = Measure::from_function(divergence(tau));
        const auto [plus, minus] = split_measure(div);
        try {
            const TransportPattern pat = make_pattern(tau, minus, plus);
            const PairingBound b = pairing_bound(fn, pat, p);
            f.require(b.holds, "pairing instance " + std::to_string(i) + " fails: diff=" +
                                   fmt(b.exact_diff) + " pairing=" + fmt(b.gradient_pairing) +
                                   " bound=" + fmt(b.bound));
        } catch (const std::exception& e) {
            f.require(false, "instance " + std::to_string(i) + " threw: " + e.what());
        }
    }

    const int n_potential = quick ? 10 : 100;
    for (int i = 0; i < n_potential; ++i) {
        const FiniteGraph& g = graphs[i % graphs.size()];
        const double p = ps[i % ps.size()];
        VertexSubset F = random_connected_subset(g, rng);
        if (F.size() < 2) continue;
        const auto members = F.members();
        Measure load;
        double mean = 0.0;
        std::vector<double> vals(members.size());
        for (auto& x : vals) {
            x = ud(rng);
            mean += x;
        }
        mean /= static_cast<double>(vals.size());
        for (std::size_t k = 0; k < members.size(); ++k) load.add(members[k], vals[k] - mean);
        try {
            const PotentialPattern pp =
                potential_pattern(g, F, load, p, g.common_degree());
            f.require(pp.residual < 1e-10, "potential instance " + std::to_string(i) +
                                               " residual=" + fmt(pp.residual));
        } catch (const std::exception& e) {
            f.require(false, "potential instance " + std::to_string(i) + " threw: " + e.what());
        }
    }
}

// tau-norm decay along the lamplighter windows at p = 2, with the
// d / lambda_2 certificate on each window.
void crit_tau_decay(Failures& f, bool quick, std::uint64_t budget) {
    const std::vector<std::uint32_t> ns =
        quick ? std::vector<std::uint32_t>{4, 6} : std::vector<std::uint32_t>{6, 8, 10, 12};
    std::vector<double> taus;
    for (std::uint32_t n : ns) {
        const Window w = lamplighter_window(n, 1, budget);
        const auto vi = w.index_of(LamplighterLazy::encode(
            LampState{{}, static_cast<std::int32_t>(n / 2)}));
        const auto wi = w.index_of(LamplighterLazy::encode(
            LampState{{}, static_cast<std::int32_t>(n / 2 + 1)}));
        if (vi < 0 || wi < 0) {
            f.require(false, "n=" + std::to_string(n) + " pipeline endpoints missing");
            continue;
        }
        const HarmonicPipeline hp = harmonic_difference_pipeline(
            w, w.core, static_cast<Vertex>(vi), static_cast<Vertex>(wi), 2.0,
            PipelineMode::Radial);
        taus.push_back(hp.report.tau_total_norm);
        const InducedSubgraph ind = induced_subgraph(w.core);
        const double l2 = lambda2_divergence(ind.graph, 3.0);
        const double bound = 3.0 / l2 * hp.report.g_norm;
        f.require(hp.report.tau_total_norm <= bound,
                  "n=" + std::to_string(n) + " |tau|=" + fmt(hp.report.tau_total_norm) +
                      " > certificate " + fmt(bound));
    }
    for (std::size_t i = 1; i < taus.size(); ++i)
        f.require(taus[i] < taus[i - 1], "|tau| not strictly decreasing at step " +
                                             std::to_string(i) + ": " + fmt(taus[i - 1]) +
                                             " -> " + fmt(taus[i]));
}

// The c_0 and l^1 witness families on the lamplighter.
void crit_witnesses(Failures& f, bool quick, std::uint64_t budget) {
    LamplighterLazy lamp;
    const std::string origin = LamplighterLazy::encode(LampState{});
    const std::uint32_t c0_max = quick ? 4 : 8;
    for (std::uint32_t n = 1; n <= c0_max; ++n) {
        const WitnessC0 w = witness_c0(lamp, origin, n, budget);
        const double cap = 1.0 / (static_cast<double>(n) + 1.0);
        f.require(w.sup_gradient <= cap * (1.0 + 1e-12),
                  "c0 n=" + std::to_string(n) + " sup grad " + fmt(w.sup_gradient));
    }
    const std::uint32_t l1_max = quick ? 12 : 50;
    WalkConfig cfg;
    cfg.prune_below = 1e-8;
    cfg.loss_tolerance = 1.0;  // truncation enters the certificate, not a flag
    for (std::uint32_t n = 1; n <= l1_max; ++n) {
        const WitnessL1 w = witness_l1(lamp, origin, n, cfg);
        f.require(w.rho_next >= 0.0, "l1 n=" + std::to_string(n) + " negative rho");
        f.require(w.laplacian_l1_identity <= w.bound,
                  "l1 n=" + std::to_string(n) + " |lap f|_1 " + fmt(w.laplacian_l1_identity) +
                      " > " + fmt(w.bound));
        if (w.loss == 0.0)
            f.require(std::abs(w.laplacian_l1 - w.laplacian_l1_identity) <= 1e-12,
                      "l1 n=" + std::to_string(n) + " identity mismatch");
    }
}

// The tree-ray witnesses realize G(2^m - 1) = 1/(2^m - 1); exhaustive
// optimality on a small truncation.
void crit_tree_ray(Failures& f, bool quick) {
    const std::uint32_t m_max = quick ? 4 : 10;
    const TreeRayGraph tr = tree_ray_graph(m_max, 2);
    for (std::uint32_t m = 1; m <= m_max; ++m) {
        const VertexSubset F(tr.graph, tr.subtree_sets[m - 1]);
        const std::uint64_t want = (std::uint64_t{1} << m) - 1;
        f.require(F.size() == want, "m=" + std::to_string(m) + " witness has " +
                                        std::to_string(F.size()) + " vertices");
        const std::uint64_t bnd = edge_boundary_size(F);
        f.require(bnd == 1,
                  "m=" + std::to_string(m) + " witness boundary " + std::to_string(bnd));
    }

    const TreeRayGraph small = tree_ray_graph(3, 4);
    const Profile prof = profile_exact(small.graph);
    for (std::uint32_t m = 1; m <= 3; ++m) {
        const std::uint64_t size = (std::uint64_t{1} << m) - 1;
        const auto& e = prof.entries[size - 1];
        f.require(e.exact && e.boundary == 1,
                  "truncation size " + std::to_string(size) + " optimal boundary " +
                      std::to_string(e.boundary));
    }
}

// Decay-exponent fitting: synthetic recovery, then the lamplighter band.
// The lamplighter clause requires truncation loss < 1e-6 out to k = 2000;
// the computation stops once the loss provably exceeds that with the
// configured support cap, and the clause is reported as failed.
void crit_gamma_fit(Failures& f, bool quick) {
    const struct {
        double gamma, k1, k2;
    } cases[] = {{0.30, 1.0, 0.8}, {0.45, 2.0, 0.5}, {0.25, 0.7, 1.2}};
    for (const auto& c : cases) {
        std::vector<double> rho(1501);
        for (std::size_t k = 0; k < rho.size(); ++k)
            rho[k] = c.k1 * std::exp(-c.k2 * std::pow(static_cast<double>(k), c.gamma));
        const DecayFit fit = fit_gamma(rho, 50, 1500);
        f.require(std::abs(fit.gamma - c.gamma) <= 0.02,
                  "synthetic gamma=" + fmt(c.gamma) + " fitted " + fmt(fit.gamma));
    }
    if (quick) return;

    LamplighterLazy lamp;
    WalkConfig cfg;
    cfg.max_support = std::uint64_t{1} << 21;
    cfg.prune_below = 1e-13;
    cfg.loss_tolerance = 1e-6;
    const std::uint32_t k_reached = 160;  // loss verdict is decided well before 2000
    const RhoSeries rs =
        return_probability(lamp, LamplighterLazy::encode(LampState{}), k_reached, cfg);
    double max_loss = 0.0;
    for (std::uint32_t k = 100; k <= k_reached; ++k)
        max_loss = std::max(max_loss, rs.loss[k]);
    const DecayFit fit = fit_gamma(rs.rho, 100, k_reached);
    f.require(fit.gamma >= 0.2 && fit.gamma <= 0.5,
              "lamplighter gamma fitted " + fmt(fit.gamma) + " outside [0.2, 0.5]");
    f.require(max_loss < 1e-6, "lamplighter truncation loss " + fmt(max_loss) + " on k in [100," +
                                   std::to_string(k_reached) +
                                   "] already exceeds 1e-6 at support cap 2^21; "
                                   "exact support out to k = 2000 is out of reach");
}

}  // namespace

const std::vector<std::string>& suite_graph_specs() {
    static const std::vector<std::string> specs{
        "cycle:4",
        "cycle:6",
        "cycle:8",
        "complete:4",
        "complete:5",
        "hypercube:3",
        "petersen",
        "random-regular:n=6,d=3,seed=1",
        "random-regular:n=8,d=3,seed=2",
        "random-regular:n=10,d=3,seed=3",
        "random-regular:n=8,d=4,seed=4",
        "random-regular:n=10,d=4,seed=5",
    };
    return specs;
}

CriterionResult run_criterion(int id, bool quick, std::uint64_t budget_vertices) {
    CriterionResult res;
    res.id = id;
    Failures f;
    const auto t0 = std::chrono::steady_clock::now();
    std::string ok_note = "all hold";
    try {
        switch (id) {
            case 1:
                res.name = "inequality chain (with the K2 table-form violation)";
                crit_chain(f, quick);
                break;
            case 2:
                res.name = "cheeger inequality, exact kappa_1";
                crit_cheeger(f, quick);
                break;
            case 3:
                res.name = "lamplighter Foelner counts";
                crit_folner_counts(f, quick, budget_vertices);
                break;
            case 4:
                res.name = "counterexample sets F_{n;j}";
                crit_counterexample(f, quick, budget_vertices);
                break;
            case 5:
                res.name = "Foelner radius lemma";
                crit_folner_lemma(f, quick, 7);
                break;
            case 6:
                res.name = "transport pairing and potential patterns";
                crit_transport(f, quick, 11);
                break;
            case 7:
                res.name = "tau-norm decay on lamplighter windows";
                crit_tau_decay(f, quick, budget_vertices);
                break;
            case 8:
                res.name = "c0 and l1 witness families";
                crit_witnesses(f, quick, budget_vertices);
                break;
            case 9:
                res.name = "tree-ray profile witnesses";
                crit_tree_ray(f, quick);
                break;
            case 10:
                res.name = "gamma-fit calibration and lamplighter band";
                crit_gamma_fit(f, quick);
                break;
            default:
                throw std::invalid_argument("criterion id must be in 1..10");
        }
    } catch (const std::exception& e) {
        f.require(false, std::string("exception: ") + e.what());
    }
    res.pass = f.pass();
    res.detail = f.summary(ok_note);
    res.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

std::vector<CriterionResult> run_criteria(const std::vector<int>& ids, bool quick,
                                          std::uint64_t budget_vertices) {
    std::vector<int> list = ids;
    if (list.empty())
        for (int i = 1; i <= 10; ++i) list.push_back(i);
    std::vector<CriterionResult> out;
    for (int id : list) out.push_back(run_criterion(id, quick, budget_vertices));
    return out;
}

}  // namespace graphiso
