#include "episource/mean_field.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "episource/errors.hpp"

namespace episource {

MeanFieldSystem::MeanFieldSystem(std::vector<node_id> nodes, std::vector<double> u,
                                 std::vector<double> z)
    : nodes_(std::move(nodes)), u_(std::move(u)), z_(std::move(z)) {}

void MeanFieldSystem::set_sparse(std::vector<std::int64_t> offsets, std::vector<int> cols,
                                 std::vector<double> vals, bool include_rank_one) {
    offsets_ = std::move(offsets);
    cols_ = std::move(cols);
    vals_ = std::move(vals);
    rank_one_ = include_rank_one;
}

void MeanFieldSystem::apply(const std::vector<double>& x, std::vector<double>& y) const {
    const int k = dim();
    y.assign(static_cast<std::size_t>(k), 0.0);
    for (int i = 0; i < k; ++i) {
        double acc = 0.0;
        for (std::int64_t t = offsets_[static_cast<std::size_t>(i)];
             t < offsets_[static_cast<std::size_t>(i) + 1]; ++t)
            acc += vals_[static_cast<std::size_t>(t)] * x[static_cast<std::size_t>(cols_[static_cast<std::size_t>(t)])];
        y[static_cast<std::size_t>(i)] = acc;
    }
    if (rank_one_) {
        double ux = 0.0;
        for (int i = 0; i < k; ++i) ux += u_[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)];
        for (int i = 0; i < k; ++i) y[static_cast<std::size_t>(i)] += u_[static_cast<std::size_t>(i)] * ux;
    }
}

std::vector<double> MeanFieldSystem::dense() const {
    const int k = dim();
    std::vector<double> m(static_cast<std::size_t>(k) * static_cast<std::size_t>(k), 0.0);
    for (int i = 0; i < k; ++i)
        for (std::int64_t t = offsets_[static_cast<std::size_t>(i)];
             t < offsets_[static_cast<std::size_t>(i) + 1]; ++t)
            m[static_cast<std::size_t>(i) * static_cast<std::size_t>(k) +
              static_cast<std::size_t>(cols_[static_cast<std::size_t>(t)])] +=
                vals_[static_cast<std::size_t>(t)];
    if (rank_one_)
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j)
                m[static_cast<std::size_t>(i) * static_cast<std::size_t>(k) + static_cast<std::size_t>(j)] +=
                    u_[static_cast<std::size_t>(i)] * u_[static_cast<std::size_t>(j)];
    return m;
}

std::vector<double> MeanFieldSystem::diagonal() const {
    const int k = dim();
    std::vector<double> d(static_cast<std::size_t>(k), 0.0);
    for (int i = 0; i < k; ++i) {
        for (std::int64_t t = offsets_[static_cast<std::size_t>(i)];
             t < offsets_[static_cast<std::size_t>(i) + 1]; ++t)
            if (cols_[static_cast<std::size_t>(t)] == i) d[static_cast<std::size_t>(i)] += vals_[static_cast<std::size_t>(t)];
        if (rank_one_) d[static_cast<std::size_t>(i)] += u_[static_cast<std::size_t>(i)] * u_[static_cast<std::size_t>(i)];
    }
    return d;
}

std::vector<MeanFieldSystem::Triplet> MeanFieldSystem::sparse_triplets() const {
    std::vector<Triplet> out;
    for (int i = 0; i < dim(); ++i)
        for (std::int64_t t = offsets_[static_cast<std::size_t>(i)];
             t < offsets_[static_cast<std::size_t>(i) + 1]; ++t)
            if (i <= cols_[static_cast<std::size_t>(t)])
                out.push_back({i, cols_[static_cast<std::size_t>(t)], vals_[static_cast<std::size_t>(t)]});
    return out;
}

namespace {

// Dense scaled normal equations for tiny snapshots, reused by build_system
// (|O| <= 3) and by the brute-force oracle.
NormalEquations normal_equations_enumerated(const Graph& g, const NodeSet& snapshot) {
    const int k = static_cast<int>(snapshot.size());
    const auto& nodes = snapshot.members();
    std::vector<std::int64_t> deg(static_cast<std::size_t>(k));
    std::vector<std::uint64_t> adj(static_cast<std::size_t>(k), 0);
    for (int i = 0; i < k; ++i) {
        node_id v = nodes[static_cast<std::size_t>(i)];
        g.check_node(v);
        deg[static_cast<std::size_t>(i)] = g.degree(v);
        for (node_id nb : g.neighbors(v)) {
            auto it = std::lower_bound(nodes.begin(), nodes.end(), nb);
            if (it != nodes.end() && *it == nb)
                adj[static_cast<std::size_t>(i)] |= std::uint64_t{1} << (it - nodes.begin());
        }
    }
    NormalEquations ne{k,
                       std::vector<double>(static_cast<std::size_t>(k) * static_cast<std::size_t>(k), 0.0),
                       std::vector<double>(static_cast<std::size_t>(k), 0.0)};
    std::vector<double> qrow(static_cast<std::size_t>(k));
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
        // r_I = vol(I, I^c); Q_{I,j} = vol(I, j) for j outside I.
        std::int64_t r = 0;
        for (int i = 0; i < k; ++i)
            if (mask >> i & 1)
                r += deg[static_cast<std::size_t>(i)] -
                     std::popcount(adj[static_cast<std::size_t>(i)] & mask);
        for (int j = 0; j < k; ++j)
            qrow[static_cast<std::size_t>(j)] =
                (mask >> j & 1) ? 0.0
                                : static_cast<double>(std::popcount(adj[static_cast<std::size_t>(j)] & mask));
        for (int a = 0; a < k; ++a) {
            if (qrow[static_cast<std::size_t>(a)] == 0.0) continue;
            ne.qtr[static_cast<std::size_t>(a)] += qrow[static_cast<std::size_t>(a)] * static_cast<double>(r);
            for (int b = 0; b < k; ++b)
                ne.qtq[static_cast<std::size_t>(a) * static_cast<std::size_t>(k) + static_cast<std::size_t>(b)] +=
                    qrow[static_cast<std::size_t>(a)] * qrow[static_cast<std::size_t>(b)];
        }
    }
    return ne;
}

} // namespace

MeanFieldSystem build_system(const Graph& g, const NodeSet& snapshot) {
    if (snapshot.empty()) throw std::invalid_argument("build_system: empty snapshot");
    const int k = static_cast<int>(snapshot.size());
    const auto& nodes = snapshot.members();

    if (k <= 3) {
        // Direct least-squares assembly, scaled to the 2^(|O|-4) convention.
        NormalEquations ne = normal_equations_enumerated(g, snapshot);
        const double scale = std::pow(2.0, 4 - k);
        std::vector<double> u(static_cast<std::size_t>(k), 0.0), z(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i)
            z[static_cast<std::size_t>(i)] = ne.qtr[static_cast<std::size_t>(i)] * scale;
        MeanFieldSystem sys(nodes, std::move(u), std::move(z));
        std::vector<std::int64_t> offsets(static_cast<std::size_t>(k) + 1, 0);
        std::vector<int> cols;
        std::vector<double> vals;
        for (int i = 0; i < k; ++i) {
            for (int j = 0; j < k; ++j) {
                double val = ne.qtq[static_cast<std::size_t>(i) * static_cast<std::size_t>(k) +
                                    static_cast<std::size_t>(j)] * scale;
                if (val != 0.0) {
                    cols.push_back(j);
                    vals.push_back(val);
                }
            }
            offsets[static_cast<std::size_t>(i) + 1] = static_cast<std::int64_t>(cols.size());
        }
        sys.set_sparse(std::move(offsets), std::move(cols), std::move(vals),
                       /*include_rank_one=*/false);
        return sys;
    }

    // u_j = deg of j within O; v_j = deg of j outside O.
    std::vector<double> u(static_cast<std::size_t>(k), 0.0), v(static_cast<std::size_t>(k), 0.0);
    std::vector<std::vector<int>> adj_local(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        node_id nd = nodes[static_cast<std::size_t>(i)];
        g.check_node(nd);
        for (node_id nb : g.neighbors(nd)) {
            auto it = std::lower_bound(nodes.begin(), nodes.end(), nb);
            if (it != nodes.end() && *it == nb)
                adj_local[static_cast<std::size_t>(i)].push_back(static_cast<int>(it - nodes.begin()));
        }
        u[static_cast<std::size_t>(i)] = static_cast<double>(adj_local[static_cast<std::size_t>(i)].size());
        v[static_cast<std::size_t>(i)] =
            static_cast<double>(g.degree(nd)) - u[static_cast<std::size_t>(i)];
    }

    // z = (1'u + 2 1'v) u - 2 v .* u + 2 (A_OO v + u)
    const double sum_u = std::accumulate(u.begin(), u.end(), 0.0);
    const double sum_v = std::accumulate(v.begin(), v.end(), 0.0);
    std::vector<double> z(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        double av = 0.0;
        for (int nb : adj_local[static_cast<std::size_t>(i)]) av += v[static_cast<std::size_t>(nb)];
        z[static_cast<std::size_t>(i)] = (sum_u + 2.0 * sum_v) * u[static_cast<std::size_t>(i)] -
                                         2.0 * v[static_cast<std::size_t>(i)] * u[static_cast<std::size_t>(i)] +
                                         2.0 * (av + u[static_cast<std::size_t>(i)]);
    }

    MeanFieldSystem sys(nodes, u, std::move(z));

    // Sparse part: A_OO + A_OO^2 - A_OO .* (u 1' + 1 u'), plus the Xi diagonal
    // boost u + u.*u (the u.*u piece is the doubled diagonal of u u'; the
    // rank-one term itself stays factored).
    std::vector<std::int64_t> offsets(static_cast<std::size_t>(k) + 1, 0);
    std::vector<int> cols;
    std::vector<double> vals;
    std::vector<double> row_acc(static_cast<std::size_t>(k), 0.0);
    std::vector<int> touched;
    const auto& uu = sys.u();
    for (int i = 0; i < k; ++i) {
        touched.clear();
        auto bump = [&](int j, double val) {
            if (row_acc[static_cast<std::size_t>(j)] == 0.0) touched.push_back(j);
            row_acc[static_cast<std::size_t>(j)] += val;
        };
        for (int r : adj_local[static_cast<std::size_t>(i)]) {
            bump(r, 1.0 - (uu[static_cast<std::size_t>(i)] + uu[static_cast<std::size_t>(r)]));
            for (int j2 : adj_local[static_cast<std::size_t>(r)]) bump(j2, 1.0);  // two-paths
        }
        bump(i, uu[static_cast<std::size_t>(i)] + uu[static_cast<std::size_t>(i)] * uu[static_cast<std::size_t>(i)]);
        std::sort(touched.begin(), touched.end());
        for (int j : touched) {
            if (row_acc[static_cast<std::size_t>(j)] != 0.0) {
                cols.push_back(j);
                vals.push_back(row_acc[static_cast<std::size_t>(j)]);
            }
            row_acc[static_cast<std::size_t>(j)] = 0.0;
        }
        offsets[static_cast<std::size_t>(i) + 1] = static_cast<std::int64_t>(cols.size());
    }
    sys.set_sparse(std::move(offsets), std::move(cols), std::move(vals), /*include_rank_one=*/true);
    return sys;
}

NormalEquations brute_force_normal_equations(const Graph& g, const NodeSet& snapshot,
                                             int max_size) {
    if (snapshot.empty())
        throw std::invalid_argument("brute_force_normal_equations: empty snapshot");
    if (static_cast<int>(snapshot.size()) > max_size)
        throw infeasible_error("brute_force_normal_equations: 2^|O| row enumeration; limit is "
                               "|O| <= " + std::to_string(max_size));
    return normal_equations_enumerated(g, snapshot);
}

namespace {

struct CgOutcome {
    int iterations = 0;
    bool converged = false;
};

// Conjugate gradients with Jacobi (diagonal) preconditioning, from x = 0.
// The system is consistent by construction (z lies in the range of S), so
// this converges for singular PSD systems as well.
CgOutcome conjugate_gradient(const MeanFieldSystem& sys, std::vector<double>& x) {
    const int k = sys.dim();
    const auto& z = sys.z();
    x.assign(static_cast<std::size_t>(k), 0.0);
    std::vector<double> inv_diag = sys.diagonal();
    for (auto& d : inv_diag) d = d > 1e-300 ? 1.0 / d : 1.0;
    auto dot = [&](const std::vector<double>& a, const std::vector<double>& b) {
        double s = 0.0;
        for (int i = 0; i < k; ++i) s += a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(i)];
        return s;
    };
    std::vector<double> r = z, pre(static_cast<std::size_t>(k)), p(static_cast<std::size_t>(k)),
        sp(static_cast<std::size_t>(k));
    const double zz = dot(z, z);
    if (zz == 0.0) return {0, true};
    const double tol2 = 1e-26 * zz;
    for (int i = 0; i < k; ++i)
        p[static_cast<std::size_t>(i)] = pre[static_cast<std::size_t>(i)] =
            inv_diag[static_cast<std::size_t>(i)] * r[static_cast<std::size_t>(i)];
    double rz = dot(r, pre);
    CgOutcome out;
    const int max_iter = std::max(200, 4 * k);
    for (out.iterations = 0; out.iterations < max_iter; ++out.iterations) {
        if (dot(r, r) <= tol2) {
            out.converged = true;
            break;
        }
        sys.apply(p, sp);
        const double psp = dot(p, sp);
        if (psp <= 0.0) break;  // numerical null-space direction
        const double alpha = rz / psp;
        for (int i = 0; i < k; ++i) {
            x[static_cast<std::size_t>(i)] += alpha * p[static_cast<std::size_t>(i)];
            r[static_cast<std::size_t>(i)] -= alpha * sp[static_cast<std::size_t>(i)];
        }
        for (int i = 0; i < k; ++i)
            pre[static_cast<std::size_t>(i)] =
                inv_diag[static_cast<std::size_t>(i)] * r[static_cast<std::size_t>(i)];
        const double rz_next = dot(r, pre);
        const double beta = rz_next / rz;
        for (int i = 0; i < k; ++i)
            p[static_cast<std::size_t>(i)] =
                pre[static_cast<std::size_t>(i)] + beta * p[static_cast<std::size_t>(i)];
        rz = rz_next;
    }
    if (dot(r, r) <= tol2) out.converged = true;
    return out;
}

// In-place LDL' factorization of a dense symmetric PSD matrix.
// Returns false on a non-positive pivot (singular / indefinite input).
bool ldlt_solve(std::vector<double> a, int k, const std::vector<double>& rhs,
                std::vector<double>& x) {
    double max_diag = 0.0;
    for (int i = 0; i < k; ++i)
        max_diag = std::max(max_diag, std::abs(a[static_cast<std::size_t>(i) * static_cast<std::size_t>(k) + static_cast<std::size_t>(i)]));
    const double pivot_tol = std::max(max_diag, 1.0) * 1e-12;
    std::vector<double> d(static_cast<std::size_t>(k), 0.0);
    auto at = [&](int r, int c) -> double& {
        return a[static_cast<std::size_t>(r) * static_cast<std::size_t>(k) + static_cast<std::size_t>(c)];
    };
    for (int i = 0; i < k; ++i) {
        double di = at(i, i);
        for (int m = 0; m < i; ++m) di -= at(i, m) * at(i, m) * d[static_cast<std::size_t>(m)];
        if (di <= pivot_tol) return false;
        d[static_cast<std::size_t>(i)] = di;
        for (int j = i + 1; j < k; ++j) {
            double v = at(j, i);
            for (int m = 0; m < i; ++m) v -= at(j, m) * at(i, m) * d[static_cast<std::size_t>(m)];
            at(j, i) = v / di;
        }
    }
    x = rhs;
    for (int i = 0; i < k; ++i)
        for (int m = 0; m < i; ++m) x[static_cast<std::size_t>(i)] -= at(i, m) * x[static_cast<std::size_t>(m)];
    for (int i = 0; i < k; ++i) x[static_cast<std::size_t>(i)] /= d[static_cast<std::size_t>(i)];
    for (int i = k - 1; i >= 0; --i)
        for (int j = i + 1; j < k; ++j) x[static_cast<std::size_t>(i)] -= at(j, i) * x[static_cast<std::size_t>(j)];
    return true;
}

} // namespace

MfaSolution mfa_solve(const Graph& g, const NodeSet& snapshot) {
    MeanFieldSystem sys = build_system(g, snapshot);
    const int k = sys.dim();
    MfaSolution sol;
    sol.nodes = sys.nodes();
    double zz = 0.0;
    for (double v : sys.z()) zz += v * v;
    sol.z_norm = std::sqrt(zz);

    if (k <= kMfaDenseLimit) {
        if (ldlt_solve(sys.dense(), k, sys.z(), sol.b)) {
            sol.solver = "ldlt";
        } else {
            // Singular pivot: fall back to CG, which yields a least-squares
            // solution of the consistent system. Flag the result.
            conjugate_gradient(sys, sol.b);
            sol.solver = "cg-fallback";
            sol.flagged = true;
        }
    } else {
        conjugate_gradient(sys, sol.b);  // matrix-free path for large snapshots
        sol.solver = "pcg";
    }

    std::vector<double> sb;
    sys.apply(sol.b, sb);
    double rn = 0.0;
    for (int i = 0; i < k; ++i) {
        const double d = sb[static_cast<std::size_t>(i)] - sys.z()[static_cast<std::size_t>(i)];
        rn += d * d;
    }
    sol.residual_norm = std::sqrt(rn);
    if (sol.residual_norm > 1e-8 * std::max(sol.z_norm, 1e-300)) sol.flagged = true;
    return sol;
}

Ranking mfa_rank(const Graph& g, const NodeSet& snapshot) {
    if (snapshot.empty()) throw std::invalid_argument("mfa_rank: empty snapshot");
    MfaSolution sol = mfa_solve(g, snapshot);
    // Entries of b that are equal in exact arithmetic come back a few ulps
    // apart from the factorization; snap such groups to their leading value
    // so symmetric nodes share a midrank.
    const int k = static_cast<int>(sol.b.size());
    std::vector<int> order(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) order[static_cast<std::size_t>(i)] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (sol.b[static_cast<std::size_t>(a)] != sol.b[static_cast<std::size_t>(b)])
            return sol.b[static_cast<std::size_t>(a)] > sol.b[static_cast<std::size_t>(b)];
        return a < b;
    });
    std::vector<double> snapped(static_cast<std::size_t>(k));
    int i = 0;
    while (i < k) {
        const double head = sol.b[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])];
        const double tol = 1e-9 * std::max(1.0, std::abs(head));
        int j = i;
        while (j < k &&
               head - sol.b[static_cast<std::size_t>(order[static_cast<std::size_t>(j)])] <= tol)
            ++j;
        for (int t = i; t < j; ++t)
            snapped[static_cast<std::size_t>(order[static_cast<std::size_t>(t)])] = head;
        i = j;
    }
    return make_ranking(sol.nodes, snapped, /*descending=*/true);
}

} // namespace episource
