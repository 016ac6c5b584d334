// operators.hpp -- functions on vertices and oriented edges, gradient,
// divergence, random-walk operator, Laplacian conventions, lp norms.
#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "graphiso/finite_graph.hpp"

namespace graphiso {

// Compensated (Kahan) accumulator.
class KahanSum {
public:
    void add(double x) {
        const double y = x - c_;
        const double t = s_ + y;
        c_ = (t - s_) - y;
        s_ = t;
    }
    double value() const { return s_; }

private:
    double s_ = 0.0, c_ = 0.0;
};

class VertexFunction {
public:
    VertexFunction() = default;
    explicit VertexFunction(const FiniteGraph& host, double fill = 0.0)
        : host_(&host), values_(host.vertex_count(), fill) {}
    VertexFunction(const FiniteGraph& host, std::vector<double> values);

    const FiniteGraph& host() const { return *host_; }
    double& operator[](Vertex v) { return values_[v]; }
    double operator[](Vertex v) const { return values_[v]; }
    std::size_t size() const { return values_.size(); }
    const std::vector<double>& values() const { return values_; }
    std::vector<double>& values() { return values_; }

    double sum() const;
    // Subtracts the mean so the result sums to zero.
    void project_zero_sum();

private:
    const FiniteGraph* host_ = nullptr;
    std::vector<double> values_;
};

// Antisymmetric function on oriented edges; one value stored per unordered
// edge, oriented from the lower-index endpoint to the higher one.
class EdgeFunction {
public:
    EdgeFunction() = default;
    explicit EdgeFunction(const FiniteGraph& host, double fill = 0.0)
        : host_(&host), values_(host.edge_count(), fill) {}

    const FiniteGraph& host() const { return *host_; }
    double& operator[](std::uint32_t e) { return values_[e]; }
    double operator[](std::uint32_t e) const { return values_[e]; }
    std::size_t size() const { return values_.size(); }
    const std::vector<double>& values() const { return values_; }
    std::vector<double>& values() { return values_; }

    // Oriented value t(u, v); sign flips with orientation.
    double value(Vertex u, Vertex v) const {
        const std::uint32_t e = host_->edge_id(std::min(u, v), std::max(u, v));
        return u < v ? values_[e] : -values_[e];
    }
    void set(Vertex u, Vertex v, double val) {
        const std::uint32_t e = host_->edge_id(std::min(u, v), std::max(u, v));
        values_[e] = u < v ? val : -val;
    }
    void add(Vertex u, Vertex v, double val) {
        const std::uint32_t e = host_->edge_id(std::min(u, v), std::max(u, v));
        values_[e] += u < v ? val : -val;
    }

private:
    const FiniteGraph* host_ = nullptr;
    std::vector<double> values_;
};

enum class LaplacianConvention {
    Walk,        // Delta = I - P
    Divergence,  // Delta = div grad  (= d (I - P) on d-regular graphs)
};

// grad f(x,y) = f(y) - f(x), stored along the lower->higher orientation.
EdgeFunction gradient(const VertexFunction& f);

// div t(x) = sum over neighbors y of t(y, x); adjoint of the gradient
// under the once-per-unordered-edge pairing.
VertexFunction divergence(const EdgeFunction& t);

// Symmetric edge table (phi(x) + phi(y)); not an EdgeFunction since it is
// not antisymmetric. Indexed by edge id.
std::vector<double> plus_gradient(const VertexFunction& phi);

// (P f)(x) = mean of f over the neighbors of x. Requires degrees > 0.
VertexFunction walk_apply(const VertexFunction& f);

VertexFunction laplacian_apply(const VertexFunction& f, LaplacianConvention c);

// Standard p-norm; p = infinity() returns the max absolute value.
// Rejects p < 1.
double lp_norm(const std::vector<double>& values, double p);
inline double lp_norm(const VertexFunction& f, double p) { return lp_norm(f.values(), p); }
inline double lp_norm(const EdgeFunction& t, double p) { return lp_norm(t.values(), p); }

// Hoelder conjugate: p' = p/(p-1); 1 <-> infinity.
double conjugate_exponent(double p);

// <f | g> over vertices, compensated summation.
double pairing(const VertexFunction& f, const VertexFunction& g);
// <s | t> over unordered edges (each edge counted once).
double pairing(const EdgeFunction& s, const EdgeFunction& t);

constexpr double kInfinity = std::numeric_limits<double>::infinity();

}  // namespace graphiso
