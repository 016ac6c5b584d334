#include "graphiso/walks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "graphiso/operators.hpp"

namespace graphiso {

namespace {

// Sparse probability front over ordered keys; one step multiplies by P with
// deterministic sort-merge, pruning and budget mass going into `loss`.
template <typename Key, typename Expand>
struct Front {
    std::vector<std::pair<Key, double>> t;
    double loss = 0.0;

    void step(const Expand& expand, const WalkConfig& cfg) {
        std::vector<std::pair<Key, double>> out;
        out.reserve(t.size() * 3);
        for (const auto& [key, p] : t) expand(key, p, out, loss);
        std::sort(out.begin(), out.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        std::vector<std::pair<Key, double>> merged;
        merged.reserve(out.size());
        for (auto& e : out) {
            if (!merged.empty() && merged.back().first == e.first)
                merged.back().second += e.second;
            else
                merged.push_back(std::move(e));
        }
        if (cfg.prune_below > 0.0) {
            std::vector<std::pair<Key, double>> kept;
            kept.reserve(merged.size());
            for (auto& e : merged) {
                if (e.second < cfg.prune_below) loss += e.second;
                else kept.push_back(std::move(e));
            }
            merged.swap(kept);
        }
        if (merged.size() > cfg.max_support) {
            // Drop the smallest probabilities (ties by key) into the loss.
            std::sort(merged.begin(), merged.end(), [](const auto& a, const auto& b) {
                if (a.second != b.second) return a.second > b.second;
                return a.first < b.first;
            });
            for (std::size_t i = cfg.max_support; i < merged.size(); ++i)
                loss += merged[i].second;
            merged.resize(cfg.max_support);
            std::sort(merged.begin(), merged.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
        }
        t.swap(merged);
    }

    double value(const Key& key) const {
        auto it = std::lower_bound(
            t.begin(), t.end(), key,
            [](const auto& e, const Key& k) { return e.first < k; });
        return it != t.end() && it->first == key ? it->second : 0.0;
    }
};

struct PackedExpand {
    void operator()(const Key128& key, double p,
                    std::vector<std::pair<Key128, double>>& out, double& loss) const {
        std::array<Key128, 3> nbrs;
        int count = 0, oow = 0;
        LamplighterLazy::packed_neighbors(key, nbrs, count, oow);
        const double share = p / 3.0;
        for (int i = 0; i < count; ++i) out.emplace_back(nbrs[i], share);
        loss += share * oow;
    }
};

struct LabelExpand {
    const LazyGraph* g;
    void operator()(const std::string& key, double p,
                    std::vector<std::pair<std::string, double>>& out, double&) const {
        auto nbrs = g->neighbors(key);
        const double share = p / static_cast<double>(nbrs.size());
        for (auto& nb : nbrs) out.emplace_back(std::move(nb), share);
    }
};

bool is_lamplighter(const LazyGraph& g) {
    return dynamic_cast<const LamplighterLazy*>(&g) != nullptr;
}

}  // namespace

double SparseDistribution::total() const {
    KahanSum s;
    for (const auto& [l, p] : table) s.add(p);
    return s.value();
}

double SparseDistribution::value(const std::string& label) const {
    auto it = std::lower_bound(
        table.begin(), table.end(), label,
        [](const auto& e, const std::string& l) { return e.first < l; });
    return it != table.end() && it->first == label ? it->second : 0.0;
}

SparseDistribution walk_distribution(const LazyGraph& g, const std::string& x,
                                     std::uint32_t k, const WalkConfig& cfg) {
    SparseDistribution out;
    out.k = k;
    if (is_lamplighter(g)) {
        auto packed = LamplighterLazy::pack(LamplighterLazy::decode(x));
        if (!packed)
            throw std::invalid_argument("walk_distribution: start outside packed window");
        Front<Key128, PackedExpand> front;
        front.t.emplace_back(*packed, 1.0);
        for (std::uint32_t i = 0; i < k; ++i) front.step(PackedExpand{}, cfg);
        out.table.reserve(front.t.size());
        for (const auto& [key, p] : front.t)
            out.table.emplace_back(LamplighterLazy::encode(LamplighterLazy::unpack(key)), p);
        std::sort(out.table.begin(), out.table.end());
        out.loss = front.loss;
    } else {
        Front<std::string, LabelExpand> front;
        front.t.emplace_back(x, 1.0);
        for (std::uint32_t i = 0; i < k; ++i) front.step(LabelExpand{&g}, cfg);
        out.table = std::move(front.t);
        out.loss = front.loss;
    }
    out.degraded = out.loss > cfg.loss_tolerance;
    return out;
}

RhoSeries return_probability(const LazyGraph& g, const std::string& x,
                             std::uint32_t k_max, const WalkConfig& cfg) {
    RhoSeries out;
    out.rho.reserve(k_max + 1);
    out.loss.reserve(k_max + 1);
    auto record = [&](double rho, double loss) {
        out.rho.push_back(rho);
        out.loss.push_back(loss);
    };
    if (is_lamplighter(g)) {
        auto packed = LamplighterLazy::pack(LamplighterLazy::decode(x));
        if (!packed)
            throw std::invalid_argument("return_probability: start outside packed window");
        Front<Key128, PackedExpand> front;
        front.t.emplace_back(*packed, 1.0);
        record(1.0, 0.0);
        for (std::uint32_t k = 1; k <= k_max; ++k) {
            front.step(PackedExpand{}, cfg);
            record(front.value(*packed), front.loss);
        }
        out.degraded = front.loss > cfg.loss_tolerance;
    } else {
        Front<std::string, LabelExpand> front;
        front.t.emplace_back(x, 1.0);
        record(1.0, 0.0);
        for (std::uint32_t k = 1; k <= k_max; ++k) {
            front.step(LabelExpand{&g}, cfg);
            record(front.value(x), front.loss);
        }
        out.degraded = front.loss > cfg.loss_tolerance;
    }
    for (std::size_t k = 1; k < out.rho.size(); k += 2)
        if (out.rho[k] != 0.0) return out;
    out.has_odd_zeros = out.rho.size() > 1;
    return out;
}

namespace {

// Linear LS of y = log(-log(rho/K1)) on t = log k; returns (gamma, logK2,
// mean squared residual), or nullopt when K1 <= some rho.
struct FitTrial {
    double gamma = 0.0, log_k2 = 0.0, residual = 0.0;
};

std::optional<FitTrial> try_k1(const std::vector<std::pair<std::uint32_t, double>>& pts,
                               double k1) {
    double st = 0, sy = 0, stt = 0, sty = 0;
    std::vector<std::pair<double, double>> ty;
    ty.reserve(pts.size());
    for (const auto& [k, rho] : pts) {
        if (rho >= k1) return std::nullopt;
        const double inner = -std::log(rho / k1);
        const double y = std::log(inner);
        const double t = std::log(static_cast<double>(k));
        ty.emplace_back(t, y);
        st += t;
        sy += y;
        stt += t * t;
        sty += t * y;
    }
    const double m = static_cast<double>(ty.size());
    const double denom = m * stt - st * st;
    if (denom == 0.0) return std::nullopt;
    FitTrial f;
    f.gamma = (m * sty - st * sy) / denom;
    f.log_k2 = (sy - f.gamma * st) / m;
    for (const auto& [t, y] : ty) {
        const double r = y - (f.log_k2 + f.gamma * t);
        f.residual += r * r;
    }
    f.residual /= m;
    return f;
}

}  // namespace

DecayFit fit_gamma(const std::vector<double>& rho, std::uint32_t k_min,
                   std::uint32_t k_max) {
    if (k_max >= rho.size() || k_min > k_max)
        throw std::invalid_argument("fit_gamma: range outside the series");
    DecayFit fit;
    fit.k_min = k_min;
    fit.k_max = k_max;
    bool has_zero = false;
    for (std::uint32_t k = std::max(k_min, 1u); k <= k_max; ++k) {
        if (rho[k] < 0.0) throw std::invalid_argument("fit_gamma: negative entry");
        if (rho[k] == 0.0) has_zero = true;
    }
    for (std::uint32_t k = std::max(k_min, 1u); k <= k_max; ++k) {
        if (has_zero && k % 2 == 1) continue;  // bipartite parity
        if (rho[k] == 0.0)
            throw std::invalid_argument("fit_gamma: zero entry at even k");
        fit.used.emplace_back(k, rho[k]);
    }
    if (fit.used.size() < 3)
        throw std::invalid_argument("fit_gamma: fewer than three usable points");

    double rho_max = 0.0;
    for (const auto& [k, r] : fit.used) rho_max = std::max(rho_max, r);

    // Profile K1 = rho_max * exp(e) on a grid, then refine by ternary
    // search; the grid is relative to rho_max so the fit is scale-free.
    auto eval = [&](double e) {
        auto f = try_k1(fit.used, rho_max * std::exp(e));
        return f ? f->residual : std::numeric_limits<double>::infinity();
    };
    double best_e = 1e-9, best_res = eval(best_e);
    for (int i = 0; i <= 400; ++i) {
        const double e = 1e-9 + (20.0 - 1e-9) * i / 400.0;
        const double r = eval(e);
        if (r < best_res) {
            best_res = r;
            best_e = e;
        }
    }
    double lo = std::max(1e-9, best_e - 0.05), hi = best_e + 0.05;
    for (int i = 0; i < 60; ++i) {
        const double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
        if (eval(m1) <= eval(m2)) hi = m2;
        else lo = m1;
    }
    best_e = 0.5 * (lo + hi);
    fit.K1 = rho_max * std::exp(best_e);
    auto f = try_k1(fit.used, fit.K1);
    if (!f) throw std::logic_error("fit_gamma: profiling failed");
    fit.gamma = f->gamma;
    fit.K2 = std::exp(f->log_k2);
    fit.residual = f->residual;
    return fit;
}

WitnessC0 witness_c0(const LazyGraph& g, const std::string& root, std::uint32_t n,
                     std::uint64_t budget_vertices) {
    WitnessC0 out;
    out.window = materialize_ball(g, root, n + 1, budget_vertices);
    const FiniteGraph& wg = out.window.graph;
    // Distance layers from the root via BFS; f = (n + 1 - dist)/(n + 1).
    std::vector<std::uint32_t> dist(wg.vertex_count(), UINT32_MAX);
    const auto root_idx = out.window.index_of(root);
    if (root_idx < 0) throw std::logic_error("witness_c0: root not materialized");
    std::vector<Vertex> queue{static_cast<Vertex>(root_idx)};
    dist[static_cast<Vertex>(root_idx)] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const Vertex v = queue[head];
        for (Vertex u : wg.neighbors(v))
            if (dist[u] == UINT32_MAX) {
                dist[u] = dist[v] + 1;
                queue.push_back(u);
            }
    }
    out.f.assign(wg.vertex_count(), 0.0);
    const double denom = static_cast<double>(n) + 1.0;
    for (Vertex v = 0; v < wg.vertex_count(); ++v)
        if (dist[v] <= n) out.f[v] = (denom - dist[v]) / denom;
    out.root_value = out.f[static_cast<Vertex>(root_idx)];
    for (Vertex v = 0; v < wg.vertex_count(); ++v)
        for (Vertex u : wg.neighbors(v))
            if (u > v)
                out.sup_gradient = std::max(out.sup_gradient, std::abs(out.f[u] - out.f[v]));
    return out;
}

WitnessL1 witness_l1(const LazyGraph& g, const std::string& x, std::uint32_t n,
                     const WalkConfig& cfg) {
    WitnessL1 out;
    out.bound = 2.0 / (static_cast<double>(n) + 1.0);
    const double denom = static_cast<double>(n) + 1.0;

    // f_n support accumulates along the iteration; only |f_n|_1 and
    // (I-P) f_n = (delta_x - P^{n+1} delta_x)/(n+1) are needed, so track the
    // running sum sparsely in the same key space as the front.
    auto run = [&](auto& front, const auto& expand, const auto& start_key) {
        using Entry = std::decay_t<decltype(front.t.front())>;
        std::vector<Entry> sum = front.t;  // i = 0 term
        for (std::uint32_t i = 1; i <= n + 1; ++i) {
            front.step(expand, cfg);
            if (i == n + 1) break;
            std::vector<Entry> merged;
            merged.reserve(sum.size() + front.t.size());
            std::size_t a = 0, b = 0;
            while (a < sum.size() || b < front.t.size()) {
                if (b == front.t.size() ||
                    (a < sum.size() && sum[a].first < front.t[b].first))
                    merged.push_back(sum[a++]);
                else if (a == sum.size() || front.t[b].first < sum[a].first)
                    merged.push_back(front.t[b++]);
                else {
                    merged.emplace_back(sum[a].first, sum[a].second + front.t[b].second);
                    ++a;
                    ++b;
                }
            }
            sum.swap(merged);
        }
        KahanSum l1;
        for (const auto& [key, p] : sum) l1.add(p / denom);
        out.l1_norm = l1.value();
        out.support = sum.size();
        // |delta_x - P^{n+1} delta_x|_1 / (n+1)
        const double rho = front.value(start_key);
        KahanSum lap;
        lap.add(std::abs(1.0 - rho) / denom);
        for (const auto& [key, p] : front.t)
            if (!(key == start_key)) lap.add(p / denom);
        out.laplacian_l1 = lap.value();
        out.loss = front.loss;
        out.laplacian_l1_upper = out.laplacian_l1 + 2.0 * front.loss / denom;
        out.rho_next = rho;
        // Mass conservation in the ambient graph: the off-x part of
        // P^{n+1} delta_x has total mass exactly 1 - rho_{n+1}, so the true
        // norm is 2 (1 - rho_{n+1})/(n+1). The computed rho only misses lost
        // mass, hence this stays an upper bound under truncation.
        out.laplacian_l1_identity = 2.0 * (1.0 - rho) / denom;
    };

    if (is_lamplighter(g)) {
        auto packed = LamplighterLazy::pack(LamplighterLazy::decode(x));
        if (!packed)
            throw std::invalid_argument("witness_l1: start outside packed window");
        Front<Key128, PackedExpand> front;
        front.t.emplace_back(*packed, 1.0);
        run(front, PackedExpand{}, *packed);
    } else {
        Front<std::string, LabelExpand> front;
        front.t.emplace_back(x, 1.0);
        run(front, LabelExpand{&g}, x);
    }
    return out;
}

}  // namespace graphiso
