#include "graphiso/operators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace graphiso {

VertexFunction::VertexFunction(const FiniteGraph& host, std::vector<double> values)
    : host_(&host), values_(std::move(values)) {
    if (values_.size() != host.vertex_count())
        throw std::invalid_argument("vertex function length mismatch");
    for (double v : values_)
        if (!std::isfinite(v)) throw std::invalid_argument("non-finite vertex value");
}

double VertexFunction::sum() const {
    KahanSum s;
    for (double v : values_) s.add(v);
    return s.value();
}

void VertexFunction::project_zero_sum() {
    if (values_.empty()) return;
    const double mean = sum() / static_cast<double>(values_.size());
    for (double& v : values_) v -= mean;
}

EdgeFunction gradient(const VertexFunction& f) {
    const FiniteGraph& g = f.host();
    EdgeFunction out(g);
    for (std::uint32_t e = 0; e < g.edge_count(); ++e) {
        auto [u, v] = g.edge_endpoints(e);
        out[e] = f[v] - f[u];
    }
    return out;
}

VertexFunction divergence(const EdgeFunction& t) {
    const FiniteGraph& g = t.host();
    VertexFunction out(g);
    for (std::uint32_t e = 0; e < g.edge_count(); ++e) {
        auto [u, v] = g.edge_endpoints(e);
        // t flows u -> v with value t[e]: it leaves u and arrives at v.
        out[v] += t[e];
        out[u] -= t[e];
    }
    return out;
}

std::vector<double> plus_gradient(const VertexFunction& phi) {
    const FiniteGraph& g = phi.host();
    std::vector<double> out(g.edge_count());
    for (std::uint32_t e = 0; e < g.edge_count(); ++e) {
        auto [u, v] = g.edge_endpoints(e);
        out[e] = phi[u] + phi[v];
    }
    return out;
}

VertexFunction walk_apply(const VertexFunction& f) {
    const FiniteGraph& g = f.host();
    VertexFunction out(g);
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        const auto nb = g.neighbors(v);
        if (nb.empty()) throw std::invalid_argument("walk operator needs degrees > 0");
        KahanSum s;
        for (Vertex w : nb) s.add(f[w]);
        out[v] = s.value() / static_cast<double>(nb.size());
    }
    return out;
}

VertexFunction laplacian_apply(const VertexFunction& f, LaplacianConvention c) {
    if (c == LaplacianConvention::Walk) {
        VertexFunction pf = walk_apply(f);
        VertexFunction out(f.host());
        for (Vertex v = 0; v < f.host().vertex_count(); ++v) out[v] = f[v] - pf[v];
        return out;
    }
    return divergence(gradient(f));
}

double lp_norm(const std::vector<double>& values, double p) {
    if (p == kInfinity) {
        double m = 0.0;
        for (double v : values) m = std::max(m, std::abs(v));
        return m;
    }
    if (p < 1.0) throw std::invalid_argument("lp_norm requires p >= 1");
    KahanSum s;
    if (p == 1.0) {
        for (double v : values) s.add(std::abs(v));
        return s.value();
    }
    if (p == 2.0) {
        for (double v : values) s.add(v * v);
        return std::sqrt(s.value());
    }
    for (double v : values) s.add(std::pow(std::abs(v), p));
    return std::pow(s.value(), 1.0 / p);
}

double conjugate_exponent(double p) {
    if (p < 1.0) throw std::invalid_argument("exponent must be >= 1");
    if (p == 1.0) return kInfinity;
    if (p == kInfinity) return 1.0;
    return p / (p - 1.0);
}

double pairing(const VertexFunction& f, const VertexFunction& g) {
    if (f.size() != g.size()) throw std::invalid_argument("pairing size mismatch");
    KahanSum s;
    for (std::size_t i = 0; i < f.size(); ++i) s.add(f.values()[i] * g.values()[i]);
    return s.value();
}

double pairing(const EdgeFunction& s, const EdgeFunction& t) {
    if (s.size() != t.size()) throw std::invalid_argument("pairing size mismatch");
    KahanSum acc;
    for (std::size_t i = 0; i < s.size(); ++i) acc.add(s.values()[i] * t.values()[i]);
    return acc.value();
}

}  // namespace graphiso
