#pragma once

#include "g2cent/block.hpp"

#include <utility>
#include <vector>

namespace g2cent {

/**
 * @brief Instance data for the projection-constrained block solve.
 *
 * The block matrix is tied to the rank-1 projections by the entry relation
 *   (1 - q^{e(s)+e(t)}) a_{st} = ((q - q^{-1}) I - C P - C0 Q)_{st},
 * which determines every entry except at "pole pairs" e(s)+e(t) = 0, where
 * it instead forces the right-hand side to vanish and leaves a_{st} free.
 * Q = u u^T is fixed; P is the unknown rank-1 idempotent (P = x x^T in the
 * symmetric gauge), plus one unknown per pole entry.
 */
struct BlockSolveProblem {
    std::vector<HalfInt> e;
    std::vector<Real> u;                 // empty when the block has no trivial channel
    std::vector<Real> d_init;            // starting diagonal for P (ignored without L1)
    bool has_p = true;                   // L1 channel present
    bool symmetric = false;              // restrict the search to symmetric matrices
    std::vector<Real> eigenvalues;       // full target spectrum, one per channel
    std::vector<long long> mults;        // matching multiplicities
};

struct SolverResult {
    Mat A, P;
    Real residual = Real(0);             // final max-norm of the constraint stack
    long long iterations = 0;
};

/// Entry-relation assembly: a_{st} = M_{st} / (1 - q^{e(s)+e(t)}) away from
/// pole pairs; pole entries are taken from `poles` in row-major (s,t) order.
Mat assemble_entries(const std::vector<HalfInt>& e, const Mat& m,
                     const std::vector<std::pair<int, int>>& pole_pairs,
                     const std::vector<Real>& poles, const NumericContext& ctx);

/// All (s,t) with e(s)+e(t) = 0, row-major.
std::vector<std::pair<int, int>> pole_pairs_of(const std::vector<HalfInt>& e);

/**
 * Levenberg-Marquardt solve for the block matrix. The residual stack drives
 * A u = q^{-13} u, the balanced involution (S A S)^2 = I with S = diag(s^{e(t)})
 * (equivalent to the loop-exchange relation T A T A = scalar), the minimal
 * polynomial and power traces of the target spectrum, and the vanishing of the
 * entry-relation numerator at pole pairs. Symmetric problems parametrize
 * P = x x^T by its generating vector and enumerate the component signs of the
 * seed; the entry relation then holds by construction. Deterministic: fixed
 * seeds, damped steps, no randomness. Throws std::runtime_error if no seed
 * reaches the context-precision target.
 */
SolverResult solve_block(const BlockSolveProblem& problem, const NumericContext& ctx);

} // namespace g2cent
