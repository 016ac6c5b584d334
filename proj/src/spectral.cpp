#include "graphiso/spectral.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>
#include <stdexcept>

namespace graphiso {

namespace {

using Vec = std::vector<double>;

double dot(const Vec& a, const Vec& b) {
    KahanSum s;
    for (std::size_t i = 0; i < a.size(); ++i) s.add(a[i] * b[i]);
    return s.value();
}

double norm2(const Vec& a) { return std::sqrt(dot(a, a)); }

void project_zero_sum(Vec& x) {
    KahanSum s;
    for (double v : x) s.add(v);
    const double mean = s.value() / static_cast<double>(x.size());
    for (double& v : x) v -= mean;
}

// y = (div grad x) on g; equals d (I - P) x on d-regular graphs.
void apply_div_grad(const FiniteGraph& g, const Vec& x, Vec& y) {
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        double s = 0.0;
        for (Vertex u : g.neighbors(v)) s += x[v] - x[u];
        y[v] = s;
    }
}

// Conjugate gradient for a symmetric PSD operator restricted to the
// zero-sum subspace. Solves op(x) = b with b zero-sum.
Vec cg_zero_sum(const std::function<void(const Vec&, Vec&)>& op, const Vec& b,
                double rel_tol, std::uint32_t max_iters) {
    const std::size_t n = b.size();
    Vec x(n, 0.0), r = b, p = b, ap(n);
    project_zero_sum(r);
    p = r;
    double rr = dot(r, r);
    const double b2 = std::sqrt(rr);
    if (b2 == 0.0) return x;
    for (std::uint32_t it = 0; it < max_iters; ++it) {
        op(p, ap);
        project_zero_sum(ap);
        const double pap = dot(p, ap);
        if (pap <= 0.0) break;
        const double alpha = rr / pap;
        for (std::size_t i = 0; i < n; ++i) x[i] += alpha * p[i];
        for (std::size_t i = 0; i < n; ++i) r[i] -= alpha * ap[i];
        const double rr_new = dot(r, r);
        if (std::sqrt(rr_new) <= rel_tol * b2) break;
        const double beta = rr_new / rr;
        rr = rr_new;
        for (std::size_t i = 0; i < n; ++i) p[i] = r[i] + beta * p[i];
    }
    project_zero_sum(x);
    return x;
}

// Inverse power iteration for the smallest nonzero eigenvalue of a
// symmetric PSD operator whose kernel is the constants. Returns the final
// Rayleigh quotient (an upper bound on lambda_2) and the iterate.
std::pair<double, Vec> smallest_nonzero_eig(const std::function<void(const Vec&, Vec&)>& op,
                                            std::size_t n) {
    std::mt19937_64 rng(12345);
    std::normal_distribution<double> gauss;
    Vec x(n);
    for (double& v : x) v = gauss(rng);
    project_zero_sum(x);
    double nx = norm2(x);
    for (double& v : x) v /= nx;
    Vec ox(n);
    double rq_prev = 0.0;
    for (int it = 0; it < 400; ++it) {
        Vec y = cg_zero_sum(op, x, 1e-13, static_cast<std::uint32_t>(40 * n + 1000));
        project_zero_sum(y);
        const double ny = norm2(y);
        if (ny == 0.0) break;
        for (double& v : y) v /= ny;
        x = y;
        op(x, ox);
        const double rq = dot(x, ox);
        if (it > 4 && std::abs(rq - rq_prev) <= 1e-14 * std::max(rq, 1e-300)) {
            rq_prev = rq;
            break;
        }
        rq_prev = rq;
    }
    return {rq_prev, x};
}

}  // namespace

double lambda2_exact(const FiniteGraph& g) {
    const Vertex n = g.vertex_count();
    if (n < 2) throw std::invalid_argument("lambda2 needs at least 2 vertices");
    if (n > 4096) throw std::invalid_argument("lambda2_exact: graph too large for dense solve");
    if (!g.is_connected()) throw std::invalid_argument("lambda2 requires a connected graph");
    // I - D^{-1/2} A D^{-1/2} is symmetric and similar to I - P.
    Eigen::MatrixXd m = Eigen::MatrixXd::Identity(n, n);
    for (Vertex v = 0; v < n; ++v) {
        const double dv = g.degree(v);
        for (Vertex u : g.neighbors(v)) m(v, u) = -1.0 / std::sqrt(dv * g.degree(u));
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
    return solver.eigenvalues()(1);
}

double lambda2_divergence(const FiniteGraph& g, double ambient_degree,
                          std::uint32_t dense_limit) {
    const Vertex n = g.vertex_count();
    if (n < 2) throw std::invalid_argument("lambda2 needs at least 2 vertices");
    if (ambient_degree <= 0.0) throw std::invalid_argument("ambient degree must be positive");
    if (!g.is_connected()) throw std::invalid_argument("lambda2 requires a connected graph");
    if (n <= dense_limit) {
        Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
        for (Vertex v = 0; v < n; ++v) {
            m(v, v) = g.degree(v) / ambient_degree;
            for (Vertex u : g.neighbors(v)) m(v, u) = -1.0 / ambient_degree;
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
        return solver.eigenvalues()(1);
    }
    auto op = [&g](const Vec& x, Vec& y) { apply_div_grad(g, x, y); };
    auto [rq, vec] = smallest_nonzero_eig(op, n);
    (void)vec;
    return rq / ambient_degree;
}

namespace {

// Gray-code sweep over all subsets; calls visit(mask, size, boundary) for
// each nonempty subset. n <= 26.
template <typename Visit>
void sweep_subsets(const FiniteGraph& g, Visit&& visit) {
    const Vertex n = g.vertex_count();
    std::uint32_t mask = 0;
    std::uint64_t boundary = 0;
    std::uint32_t size = 0;
    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t i = 1; i < total; ++i) {
        const Vertex v = static_cast<Vertex>(std::countr_zero(i));
        std::uint32_t inside = 0;
        for (Vertex u : g.neighbors(v)) inside += (mask >> u) & 1u;
        if ((mask >> v) & 1u) {  // removing v
            mask ^= 1u << v;
            --size;
            boundary -= g.degree(v);
            boundary += 2 * inside;
            // inside counted v's in-set neighbors before removal; removing v
            // turns its (deg - inside) boundary edges into outside edges and
            // its inside edges into boundary edges.
        } else {
            mask ^= 1u << v;
            ++size;
            boundary += g.degree(v);
            boundary -= 2 * inside;
        }
        visit(mask, size, boundary);
    }
}

// Same order as VertexSubset::lex_less: the set containing the lowest
// differing vertex sorts first.
bool mask_lex_less(std::uint32_t a, std::uint32_t b) {
    const std::uint32_t diff = a ^ b;
    if (diff == 0) return false;
    const int v = std::countr_zero(diff);
    return (a >> v) & 1u;
}

CheegerResult result_from_mask(const FiniteGraph& g, std::uint32_t mask,
                               std::uint64_t boundary, std::uint32_t size, bool exact) {
    CheegerResult r;
    r.boundary = boundary;
    r.set_size = size;
    r.value = static_cast<double>(boundary) / static_cast<double>(size);
    r.witness = VertexSubset(g);
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if ((mask >> v) & 1u) r.witness.insert(v);
    r.exact = exact;
    return r;
}

}  // namespace

CheegerResult cheeger_exact(const FiniteGraph& g, std::uint32_t max_vertices) {
    const Vertex n = g.vertex_count();
    if (n < 2) throw std::invalid_argument("cheeger needs at least 2 vertices");
    if (max_vertices > 26) throw std::invalid_argument("cheeger_exact: hard cap is 26 vertices");
    if (n > max_vertices) throw std::invalid_argument("cheeger_exact: graph too large");
    std::uint32_t best_mask = 1;
    std::uint64_t best_b = g.degree(0);
    std::uint32_t best_size = 1;
    sweep_subsets(g, [&](std::uint32_t mask, std::uint32_t size, std::uint64_t boundary) {
        if (size == 0 || 2 * std::uint64_t{size} > n) return;
        const std::uint64_t l = boundary * best_size;
        const std::uint64_t r = best_b * size;
        if (l > r) return;
        if (l == r) {
            if (size > best_size) return;
            if (size == best_size && !mask_lex_less(mask, best_mask)) return;
        }
        best_mask = mask;
        best_b = boundary;
        best_size = size;
    });
    return result_from_mask(g, best_mask, best_b, best_size, true);
}

CheegerResult cheeger_heuristic(const FiniteGraph& g) {
    const Vertex n = g.vertex_count();
    if (n < 2) throw std::invalid_argument("cheeger needs at least 2 vertices");
    if (!g.is_connected()) throw std::invalid_argument("cheeger requires a connected graph");
    auto op = [&g](const Vec& x, Vec& y) { apply_div_grad(g, x, y); };
    auto [rq, fiedler] = smallest_nonzero_eig(op, n);
    (void)rq;

    std::vector<Vertex> order(n);
    std::iota(order.begin(), order.end(), Vertex{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Vertex a, Vertex b) { return fiedler[a] < fiedler[b]; });

    std::vector<char> in(n, 0);
    std::uint64_t boundary = 0;
    std::uint64_t best_b = UINT64_MAX;
    std::uint32_t best_size = 1;
    std::uint32_t prefix_best = 0;
    for (Vertex k = 0; k + 1 < n; ++k) {
        const Vertex v = order[k];
        std::uint64_t inside = 0;
        for (Vertex u : g.neighbors(v)) inside += in[u];
        boundary += g.degree(v);
        boundary -= 2 * inside;
        in[v] = 1;
        const std::uint32_t size = std::min(k + 1, n - (k + 1));
        // A prefix larger than half stands for its complement (same cut).
        if (best_b == UINT64_MAX || boundary * best_size < best_b * size ||
            (boundary * best_size == best_b * size && size < best_size)) {
            best_b = boundary;
            best_size = size;
            prefix_best = k + 1;
        }
    }

    // Rebuild the best cut side as a vertex set.
    std::fill(in.begin(), in.end(), 0);
    for (Vertex k = 0; k < prefix_best; ++k) in[order[k]] = 1;
    if (2 * std::uint64_t{prefix_best} > n)
        for (Vertex v = 0; v < n; ++v) in[v] = !in[v];
    std::uint32_t size = 0;
    boundary = 0;
    for (Vertex v = 0; v < n; ++v) {
        size += in[v];
        if (in[v])
            for (Vertex u : g.neighbors(v)) boundary += !in[u];
    }

    // Greedy single-vertex moves.
    bool moved = true;
    std::uint32_t steps = 0;
    while (moved && steps < 10 * n) {
        moved = false;
        for (Vertex v = 0; v < n && steps < 10 * n; ++v) {
            std::uint64_t inside = 0;
            for (Vertex u : g.neighbors(v)) inside += in[u];
            std::uint64_t nb;
            std::uint32_t ns;
            if (in[v]) {
                if (size == 1) continue;
                nb = boundary - g.degree(v) + 2 * inside;
                ns = size - 1;
            } else {
                if (2 * (std::uint64_t{size} + 1) > n) continue;
                nb = boundary + g.degree(v) - 2 * inside;
                ns = size + 1;
            }
            if (nb * size < boundary * ns) {
                in[v] = !in[v];
                boundary = nb;
                size = ns;
                moved = true;
                ++steps;
            }
        }
    }

    CheegerResult r;
    r.boundary = boundary;
    r.set_size = size;
    r.value = static_cast<double>(boundary) / static_cast<double>(size);
    r.witness = VertexSubset(g);
    for (Vertex v = 0; v < n; ++v)
        if (in[v]) r.witness.insert(v);
    r.exact = false;
    return r;
}

namespace {

// Quotient minimization J(x) = ||A x||_p / ||x||_p over zero-sum x by
// spectral-projected gradient descent with Barzilai-Borwein steps.
struct QuotientProblem {
    std::function<void(const Vec&, Vec&)> apply;    // y = A x  (size m)
    std::function<void(const Vec&, Vec&)> adjoint;  // g = A^T s (size n)
    std::size_t n = 0, m = 0;
};

Vec p_dual(const Vec& y, double p) {
    Vec out(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double a = std::abs(y[i]);
        out[i] = y[i] == 0.0 ? 0.0 : std::copysign(p == 2.0 ? a : std::pow(a, p - 1.0), y[i]);
    }
    return out;
}

double quotient(const QuotientProblem& prob, const Vec& x, double p, Vec& ax) {
    prob.apply(x, ax);
    return lp_norm(ax, p) / lp_norm(x, p);
}

VariationalResult minimize_quotient(const QuotientProblem& prob, double p,
                                    std::uint32_t restarts, std::uint64_t seed) {
    if (p < 1.0) throw std::invalid_argument("p >= 1 required");
    VariationalResult best;
    best.p = p;
    best.restarts = restarts;
    best.value = kInfinity;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    Vec ax(prob.m), grad(prob.n), grad_prev(prob.n), x_prev(prob.n);

    for (std::uint32_t r = 0; r < restarts; ++r) {
        Vec x(prob.n);
        for (double& v : x) v = gauss(rng);
        project_zero_sum(x);
        double nx = norm2(x);
        if (nx == 0.0) continue;
        for (double& v : x) v /= nx;

        double step = 0.1;
        double j = quotient(prob, x, p, ax);
        bool have_prev = false;
        std::uint32_t stall = 0;
        for (std::uint32_t it = 0; it < 40000; ++it) {
            // grad log J = A^T phi(Ax)/||Ax||_p^p - phi(x)/||x||_p^p
            const double np = lp_norm(ax, p);
            const double dp = lp_norm(x, p);
            Vec phi_ax = p_dual(ax, p);
            prob.adjoint(phi_ax, grad);
            const Vec phi_x = p_dual(x, p);
            const double cn = std::pow(np, p), cd = std::pow(dp, p);
            for (std::size_t i = 0; i < prob.n; ++i)
                grad[i] = grad[i] / cn - phi_x[i] / cd;
            project_zero_sum(grad);
            const double gn = norm2(grad);
            if (gn < 1e-16) break;

            if (have_prev) {  // BB1 step
                double sy = 0.0, ss = 0.0;
                for (std::size_t i = 0; i < prob.n; ++i) {
                    const double s = x[i] - x_prev[i];
                    sy += s * (grad[i] - grad_prev[i]);
                    ss += s * s;
                }
                if (sy > 1e-300) step = std::clamp(ss / sy, 1e-12, 1e6);
            }
            x_prev = x;
            grad_prev = grad;

            // Backtracking on the normalized iterate.
            double trial_step = step;
            bool accepted = false;
            for (int bt = 0; bt < 50; ++bt) {
                Vec xt(prob.n);
                for (std::size_t i = 0; i < prob.n; ++i) xt[i] = x[i] - trial_step * grad[i];
                project_zero_sum(xt);
                const double nt = norm2(xt);
                if (nt > 0.0) {
                    for (double& v : xt) v /= nt;
                    const double jt = quotient(prob, xt, p, ax);
                    if (jt < j) {
                        if (j - jt < 1e-16 * std::max(j, 1e-300)) ++stall;
                        else stall = 0;
                        x = std::move(xt);
                        j = jt;
                        accepted = true;
                        break;
                    }
                }
                trial_step *= 0.25;
            }
            if (!accepted || stall > 40) break;
        }
        // Recompute the quotient of the final iterate (ax may be stale).
        j = quotient(prob, x, p, ax);
        best.iterations += 1;
        if (j < best.value) {
            best.value = j;
            best.witness = x;
        }
    }
    return best;
}

QuotientProblem gradient_problem(const FiniteGraph& g) {
    QuotientProblem prob;
    prob.n = g.vertex_count();
    prob.m = static_cast<std::size_t>(g.edge_count());
    prob.apply = [&g](const Vec& x, Vec& y) {
        for (std::uint32_t e = 0; e < g.edge_count(); ++e) {
            auto [u, v] = g.edge_endpoints(e);
            y[e] = x[v] - x[u];
        }
    };
    prob.adjoint = [&g](const Vec& s, Vec& out) {
        std::fill(out.begin(), out.end(), 0.0);
        for (std::uint32_t e = 0; e < g.edge_count(); ++e) {
            auto [u, v] = g.edge_endpoints(e);
            out[v] += s[e];
            out[u] -= s[e];
        }
    };
    return prob;
}

QuotientProblem walk_laplacian_problem(const FiniteGraph& g) {
    QuotientProblem prob;
    prob.n = g.vertex_count();
    prob.m = g.vertex_count();
    prob.apply = [&g](const Vec& x, Vec& y) {
        for (Vertex v = 0; v < g.vertex_count(); ++v) {
            double s = 0.0;
            for (Vertex u : g.neighbors(v)) s += x[u];
            y[v] = x[v] - s / g.degree(v);
        }
    };
    prob.adjoint = [&g](const Vec& s, Vec& out) {
        for (Vertex v = 0; v < g.vertex_count(); ++v) {
            double acc = 0.0;
            for (Vertex u : g.neighbors(v)) acc += s[u] / g.degree(u);
            out[v] = s[v] - acc;
        }
    };
    return prob;
}

QuotientProblem divergence_laplacian_problem(const FiniteGraph& g, double d) {
    QuotientProblem prob;
    prob.n = g.vertex_count();
    prob.m = g.vertex_count();
    prob.apply = [&g, d](const Vec& x, Vec& y) {
        apply_div_grad(g, x, y);
        for (double& v : y) v /= d;
    };
    prob.adjoint = prob.apply;  // self-adjoint
    return prob;
}

}  // namespace

VariationalResult kappa_p_estimate(const FiniteGraph& g, double p,
                                   std::uint32_t restarts, std::uint64_t seed) {
    if (!g.is_connected()) throw std::invalid_argument("kappa_p requires a connected graph");
    return minimize_quotient(gradient_problem(g), p, restarts, seed);
}

VariationalResult lambda_p_estimate(const FiniteGraph& g, double p,
                                    std::uint32_t restarts, std::uint64_t seed) {
    if (!g.is_connected()) throw std::invalid_argument("lambda_p requires a connected graph");
    return minimize_quotient(walk_laplacian_problem(g), p, restarts, seed);
}

VariationalResult lambda_p_divergence_estimate(const FiniteGraph& g, double p,
                                               double ambient_degree,
                                               std::uint32_t restarts, std::uint64_t seed) {
    if (!g.is_connected()) throw std::invalid_argument("lambda_p requires a connected graph");
    if (ambient_degree <= 0.0) throw std::invalid_argument("ambient degree must be positive");
    return minimize_quotient(divergence_laplacian_problem(g, ambient_degree), p, restarts, seed);
}

namespace {

// Certified grid bracket on the zero-sum unit sphere for graphs with at
// most 4 vertices (zero-sum dimension <= 3).
GridBracket grid_oracle(const FiniteGraph& g, const QuotientProblem& prob, double p,
                        std::uint32_t grid) {
    const std::size_t n = g.vertex_count();
    if (n < 2 || n > 4) throw std::invalid_argument("grid oracle needs 2..4 vertices");
    const std::size_t k = n - 1;

    // Orthonormal basis of the zero-sum subspace.
    Eigen::MatrixXd basis(n, k);
    for (std::size_t j = 0; j < k; ++j) {
        Eigen::VectorXd col = Eigen::VectorXd::Zero(n);
        col(j) = 1.0;
        col(j + 1) = -1.0;
        basis.col(j) = col;
    }
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(basis);
    Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, k);

    // Lipschitz constant of R on the unit sphere of the subspace.
    // ||A||_F over the effective operator; p-to-2 norm comparison factors.
    Vec col_in(n), col_out(prob.m);
    double frob2 = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t i = 0; i < n; ++i) col_in[i] = q(i, j);
        prob.apply(col_in, col_out);
        for (double v : col_out) frob2 += v * v;
    }
    const double sigma = std::sqrt(frob2);
    const double mfac = std::pow(static_cast<double>(prob.m), std::max(0.0, 1.0 / p - 0.5));
    const double nfac = std::pow(static_cast<double>(n), std::max(0.0, 1.0 / p - 0.5));
    const double dmin = std::pow(static_cast<double>(n), std::min(0.0, 1.0 / p - 0.5));
    const double ln = sigma * mfac;         // Lipschitz bound for ||Ax||_p
    const double rmax = ln / dmin;
    const double lip = (ln + rmax * nfac) / dmin;

    auto eval = [&](const Eigen::VectorXd& u) {
        for (std::size_t i = 0; i < n; ++i) col_in[i] = (q * u)(i);
        prob.apply(col_in, col_out);
        return lp_norm(col_out, p) / lp_norm(col_in, p);
    };

    GridBracket out;
    out.upper = kInfinity;
    double h = 0.0;  // covering radius of the grid (geodesic)
    const double pi = std::acos(-1.0);
    std::vector<double> best_angles;
    if (k == 1) {
        Eigen::VectorXd u(1);
        u(0) = 1.0;
        out.upper = eval(u);
        out.lower = out.upper;  // R(x) = R(-x): the sphere is two points
        return out;
    }
    auto point2 = [](const std::vector<double>& a) {
        Eigen::VectorXd u(2);
        u(0) = std::cos(a[0]);
        u(1) = std::sin(a[0]);
        return u;
    };
    auto point3 = [](const std::vector<double>& a) {
        Eigen::VectorXd u(3);
        u(0) = std::sin(a[0]) * std::cos(a[1]);
        u(1) = std::sin(a[0]) * std::sin(a[1]);
        u(2) = std::cos(a[0]);
        return u;
    };
    double refine_step = 0.0;
    if (k == 2) {
        const double dt = pi / grid;  // antipodal symmetry halves the circle
        h = dt / 2.0;
        refine_step = dt;
        for (std::uint32_t i = 0; i < grid; ++i) {
            const double v = eval(point2({i * dt}));
            if (v < out.upper) {
                out.upper = v;
                best_angles = {i * dt};
            }
        }
    } else {
        const std::uint32_t gt = std::max<std::uint32_t>(64, grid / 8);
        const std::uint32_t gp = std::max<std::uint32_t>(128, grid / 4);
        const double dt = pi / gt, dphi = 2.0 * pi / gp;
        h = (dt + dphi) / 2.0;
        refine_step = std::max(dt, dphi);
        for (std::uint32_t i = 0; i <= gt; ++i)
            for (std::uint32_t jj = 0; jj < gp; ++jj) {
                const double v = eval(point3({i * dt, jj * dphi}));
                if (v < out.upper) {
                    out.upper = v;
                    best_angles = {i * dt, jj * dphi};
                }
            }
    }
    out.lower = std::max(0.0, out.upper - 2.0 * lip * h);

    // Pattern-search polish of the upper bound (the lower bound keeps the
    // certificate from the full sweep).
    double step = refine_step;
    for (int round = 0; round < 200 && step > 1e-14; ++round) {
        bool improved = false;
        for (std::size_t d = 0; d < best_angles.size(); ++d)
            for (double sgn : {-1.0, 1.0}) {
                auto trial = best_angles;
                trial[d] += sgn * step;
                const double v = k == 2 ? eval(point2(trial)) : eval(point3(trial));
                if (v < out.upper) {
                    out.upper = v;
                    best_angles = trial;
                    improved = true;
                }
            }
        if (!improved) step *= 0.5;
    }
    return out;
}

}  // namespace

GridBracket grid_oracle_kappa(const FiniteGraph& g, double p, std::uint32_t grid) {
    return grid_oracle(g, gradient_problem(g), p, grid);
}

GridBracket grid_oracle_lambda(const FiniteGraph& g, double p, std::uint32_t grid) {
    return grid_oracle(g, walk_laplacian_problem(g), p, grid);
}

ChainReport verify_chain(const FiniteGraph& g, double p, std::uint32_t restarts,
                         std::uint64_t seed, double tol) {
    if (!g.is_regular())
        throw std::invalid_argument("verify_chain requires a regular graph");
    if (!g.is_connected())
        throw std::invalid_argument("verify_chain requires a connected graph");
    if (p < 1.0 || p == kInfinity)
        throw std::invalid_argument("verify_chain requires finite p >= 1");
    const double d = g.common_degree();
    ChainReport rep;
    rep.p = p;
    rep.degree = g.common_degree();
    rep.lambda2 = lambda2_exact(g);
    rep.kappa1 = cheeger_exact(g).value;
    rep.kappa_p = kappa_p_estimate(g, p, restarts, seed).value;
    rep.lambda_p = lambda_p_estimate(g, p, restarts, seed).value;
    const double kappa2 = p == 2.0 ? rep.kappa_p
                                   : kappa_p_estimate(g, 2.0, restarts, seed).value;
    const double pbar = std::max(p, conjugate_exponent(p));

    auto push = [&](const std::string& name, double lhs, double rhs) {
        ChainItem item;
        item.name = name;
        item.lhs = lhs;
        item.rhs = rhs;
        item.slack = (lhs - rhs) / std::max({std::abs(lhs), std::abs(rhs), 1.0});
        item.holds = item.slack >= -tol;
        rep.items.push_back(item);
    };

    // kappa_p and lambda_p enter as variational upper bounds; items where
    // the estimate sits on the dominated side are conservative, items where
    // it sits on the dominating side rely on the optimizer being tight.
    push("2^{p-1} kappa1 >= kappa_p^p", std::pow(2.0, p - 1.0) * rep.kappa1,
         std::pow(rep.kappa_p, p));
    push("kappa_2^2 = d lambda2 (>=)", kappa2 * kappa2, d * rep.lambda2);
    push("kappa_2^2 = d lambda2 (<=)", d * rep.lambda2, kappa2 * kappa2);
    push("max{2,p} d^{(p-1)/p} kappa_p >= 2^{(p-1)/p} kappa1",
         std::max(2.0, p) * std::pow(d, (p - 1.0) / p) * rep.kappa_p,
         std::pow(2.0, (p - 1.0) / p) * rep.kappa1);
    push("kappa_p >= d^{1/p}/2 lambda_p",
         rep.kappa_p, 0.5 * std::pow(d, 1.0 / p) * rep.lambda_p);
    push("pbar lambda_p >= 2 lambda2", pbar * rep.lambda_p, 2.0 * rep.lambda2);
    // Refined interpolation bound; only meaningful while 1 - lambda2 >= 0.
    if (rep.lambda2 <= 1.0)
        push("lambda_p >= 1-(1-lambda2)^{2/pbar}", rep.lambda_p,
             1.0 - std::pow(1.0 - rep.lambda2, 2.0 / pbar));
    push("lambda_p >= kappa1^2/(d^2 pbar)", rep.lambda_p,
         rep.kappa1 * rep.kappa1 / (d * d * pbar));
    push("4 d kappa1 >= 2 d^2 lambda2", 4.0 * d * rep.kappa1, 2.0 * d * d * rep.lambda2);
    push("2 d^2 lambda2 >= kappa1^2", 2.0 * d * d * rep.lambda2, rep.kappa1 * rep.kappa1);
    push("cheeger upper: lambda2 <= 2 kappa1 / d", 2.0 * rep.kappa1 / d, rep.lambda2);
    push("cheeger lower: lambda2 >= kappa1^2/(2 d^2)", rep.lambda2,
         rep.kappa1 * rep.kappa1 / (2.0 * d * d));

    rep.all_hold = std::all_of(rep.items.begin(), rep.items.end(),
                               [](const ChainItem& i) { return i.holds; });
    return rep;
}

}  // namespace graphiso
