#pragma once

#include "g2cent/block.hpp"
#include "g2cent/bratteli.hpp"
#include "g2cent/numeric.hpp"
#include "g2cent/weight.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace g2cent {

/**
 * @brief The affine braid group acting on the length-n path spaces over
 *        lambda. For each level-n vertex nu the bundle holds the path basis
 *        of W_nu (lexicographic), the diagonal loop generator T and the
 *        braid generators A_1..A_{n-1}, all numeric at the context point.
 *
 * A_i moves a path only at position i, inside the two-step space
 * W(t(i-1), t(i+1)); the bundle assembles those local blocks along the
 * grouping of paths that agree everywhere else. T multiplies a path by
 * the loop eigenvalue of its first step.
 */
struct RepBundle {
    Weight lambda;
    long long n = 0;
    NumericContext ctx;
    std::vector<Weight> nus;                        // level-n vertices, sorted
    std::vector<std::vector<Path>> paths;           // per nu, lexicographic
    std::vector<Mat> T;                             // per nu, diagonal
    std::vector<std::vector<Mat>> A;                // A[i-1][k] = A_i on nus[k]
    std::map<std::pair<Weight, Weight>, Block> blocks;    // every block used

    long long nu_index(Weight nu) const;            // -1 when absent
    long long dim(std::size_t k) const { return (long long)paths[k].size(); }
    long long total_dim() const;
};

/// Builds every needed two-step block and assembles the generators.
/// n = 0 yields the one-path bundle with T = (1) and no braid generators.
/// Block construction failures propagate with the (delta,nu) pair named.
RepBundle assemble(Weight lambda, long long n, const NumericContext& ctx);

/// The projection onto the trivial channel of the last two steps, one
/// matrix per nu: the analogue of A_{n-1} with the t(n-2) = t(n) blocks
/// replaced by their trivial-channel projection and all others by zero.
/// Requires n >= 2.
std::vector<Mat> last_two_projection(const RepBundle& bundle);

/**
 * @brief Maximum relative residuals of the defining relations, one field
 *        per family. Vacuous families (too few generators) report zero.
 */
struct RelationReport {
    Real braid = Real(0);           // A_i A_{i+1} A_i = A_{i+1} A_i A_{i+1}
    Real far_commute = Real(0);     // A_i A_j = A_j A_i for |i-j| >= 2
    Real loop_braid = Real(0);      // T A_1 T A_1 = A_1 T A_1 T
    Real loop_commute = Real(0);    // T A_i = A_i T for i >= 2
    Real tata_scalar_blocks = Real(0);    // T A_1 T A_1 = diag of per-t(2) scalars
    Real eigen_relation = Real(0);  // prod over present channels (A_i - ev) = 0

    Real max() const;
    bool passed(const Real& tol) const { return max() <= tol; }
};

RelationReport verify_relations(const RepBundle& bundle);

/// Span-closure outcome on one W_nu.
struct SpanResult {
    Weight nu;
    long long mult = 0;             // dimension of W_nu = m(nu, n)
    long long target = 0;           // mult^2, the full matrix algebra
    long long achieved = 0;         // dimension of the generated algebra
    bool ambiguous = false;         // a rank decision fell within 10x of tol
};

/**
 * @brief Certificate that the generated algebra is all of End(V_lambda (x)
 *        V^(x)n): per nu the achieved closure dimension against m(nu,n)^2,
 *        and the totals. ambiguous asks for a retry at higher precision.
 */
struct SurjectivityReport {
    Weight lambda;
    long long n = 0;
    mpq_class q;
    unsigned digits = 0;
    double tolerance = 0;
    std::vector<SpanResult> per_nu;
    long long total_target = 0;
    long long total_achieved = 0;
    bool ambiguous = false;

    bool passed() const { return !ambiguous && total_achieved == total_target; }
};

/// Dimension of the algebra generated by {T, A_1..A_{n-1}} on each W_nu:
/// iterated products re-orthonormalized by modified Gram-Schmidt, rank
/// decisions at the given relative tolerance, closure stopped at the
/// structural bound m^2.
SurjectivityReport algebra_dimension(const RepBundle& bundle, double tol);

/// assemble + algebra_dimension; when a rank decision is ambiguous the
/// whole computation is redone once at doubled precision.
SurjectivityReport certify_surjectivity(Weight lambda, long long n,
                                        NumericContext ctx, double tol);

/**
 * @brief Check that the level-(n-1) generators together with the trivial
 *        projection on the last two slots generate the full algebra on
 *        every vertex already present at level n-2, and that the
 *        projection itself lies in the algebra generated by all of
 *        {T, A_i}. q_membership is the worst span-membership residual.
 */
struct OldPartReport {
    Weight lambda;
    long long n = 0;
    std::vector<Weight> old_vertices;
    std::vector<SpanResult> closure;    // one entry per old vertex
    Real q_membership = Real(0);
    bool ambiguous = false;

    bool passed(double tol) const;
};

OldPartReport old_part_check(const RepBundle& bundle, double tol);

} // namespace g2cent
