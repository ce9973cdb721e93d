#pragma once

#include <cstdint>
#include <vector>

#include "episource/graph.hpp"
#include "episource/ranking.hpp"

namespace episource {

/// The symmetric positive-semidefinite system S b = z whose solution scores
/// snapshot nodes by their mean-field likelihood factor.
///
/// For |O| >= 4, S and z come from the closed form
///   S = Xi(A_OO + A_OO^2 - A_OO .* (u 1' + 1 u') + u u'),
///   z = (1'u + 2 1'v) u - 2 v .* u + 2 (A_OO v + u),
/// with u = within-snapshot degrees, v = boundary degrees, and Xi doubling
/// the diagonal. S is held as a sparse part plus the rank-one u u' term, so
/// products cost O(nnz + |O|). For |O| <= 3 the combinatorial counting
/// behind the closed form runs out of free subset positions, so S and z are
/// assembled directly from the underlying least-squares design, scaled to
/// the same 2^(|O|-4) convention.
class MeanFieldSystem {
public:
    MeanFieldSystem(std::vector<node_id> nodes, std::vector<double> u, std::vector<double> z);

    int dim() const { return static_cast<int>(nodes_.size()); }
    const std::vector<node_id>& nodes() const { return nodes_; }
    const std::vector<double>& z() const { return z_; }
    const std::vector<double>& u() const { return u_; }

    /// y = S x.
    void apply(const std::vector<double>& x, std::vector<double>& y) const;
    /// Full matrix, row-major (small systems / tests).
    std::vector<double> dense() const;
    std::vector<double> diagonal() const;

    /// Sparse triplets of the non-rank-one part (row <= col), for dumps.
    struct Triplet {
        int row, col;
        double value;
    };
    std::vector<Triplet> sparse_triplets() const;

    // Assembly (see build_system).
    void set_sparse(std::vector<std::int64_t> offsets, std::vector<int> cols,
                    std::vector<double> vals, bool include_rank_one);

private:
    std::vector<node_id> nodes_;
    std::vector<double> u_, z_;
    std::vector<std::int64_t> offsets_;
    std::vector<int> cols_;
    std::vector<double> vals_;
    bool rank_one_ = true;  // add u u' on top of the sparse part
};

MeanFieldSystem build_system(const Graph& g, const NodeSet& snapshot);

/// Exact normal equations Q'Q, Q'r of the underlying least-squares problem,
/// by explicit enumeration of all subsets of O. Test oracle; exponential.
struct NormalEquations {
    int dim;
    std::vector<double> qtq;  // dim x dim, row-major
    std::vector<double> qtr;  // dim
};
NormalEquations brute_force_normal_equations(const Graph& g, const NodeSet& snapshot,
                                             int max_size = 12);

struct MfaSolution {
    std::vector<node_id> nodes;
    std::vector<double> b;
    double residual_norm = 0.0;  // ||S b - z||
    double z_norm = 0.0;
    /// Set when the direct factorization hit a (near-)singular pivot and the
    /// solve fell back to least squares, or the residual check failed.
    bool flagged = false;
    const char* solver = "";
};

/// Dimension threshold between the dense factorization and conjugate
/// gradients on the matrix-free form.
inline constexpr int kMfaDenseLimit = 2000;

MfaSolution mfa_solve(const Graph& g, const NodeSet& snapshot);

/// Ranking of O by descending mean-field factor b, midrank ties.
Ranking mfa_rank(const Graph& g, const NodeSet& snapshot);

} // namespace episource
