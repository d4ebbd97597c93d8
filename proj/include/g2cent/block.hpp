#pragma once

#include "g2cent/halfint.hpp"
#include "g2cent/numeric.hpp"
#include "g2cent/qscalar.hpp"
#include "g2cent/weight.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace g2cent {

/// Numeric evaluation point and working precision shared by all matrix-level
/// construction and verification.
struct NumericContext {
    mpq_class q = mpq_class(13, 10);     // real evaluation point, q > 1
    unsigned digits = 50;
};

/// Applies the context precision and returns q (resp. s = sqrt(q)) as a Real.
Real q_real(const NumericContext& ctx);
Real s_real(const NumericContext& ctx);
/// Exact scalar evaluated at the context point.
Real eval(const QScalar& x, const NumericContext& ctx);

/**
 * @brief Decomposition channels of the two-step space W(delta,nu): each
 *        summand V_kappa of V (x) V through which a path delta -> nu can
 *        factor, with its multiplicity and the braid eigenvalue attached
 *        to that channel.
 */
struct Channel {
    Weight kappa;
    long long mult = 0;
    QScalar eigenvalue;
};

struct BlockSpectrum {
    std::vector<Channel> channels;       // fixed order 2L1, L2, L1, 0; mult > 0 only
    long long size() const;              // sum of multiplicities
    long long mult_of(Weight kappa) const;
    bool has(Weight kappa) const { return mult_of(kappa) > 0; }
};

/// Braid eigenvalue attached to a channel: q for 2L1, -q^{-1} for L2,
/// -q^{-7} for L1, q^{-13} for the trivial channel.
QScalar channel_eigenvalue(Weight kappa);

BlockSpectrum block_spectrum(Weight delta, Weight nu);

/**
 * @brief Exponents of the diagonal loop generator on W(delta,nu), indexed by
 *        the sorted middle weights: e(t) = c_mu - (c_delta + c_nu)/2 + 1
 *        (normalized) and f(t) = c_mu - c_delta - c_V (plain); f - e is
 *        constant on a block. Both e-formulas (Casimir form and step-weight
 *        form) are computed and cross-asserted.
 */
struct Exponents {
    std::vector<HalfInt> e;
    std::vector<long long> f;
};

Exponents exponents(Weight delta, Weight nu);

/// r = -q^7: the third braid eigenvalue is r^{-1}.
QScalar r_value();
/// m = (r - r^{-1})/(q - q^{-1}); equals -[7].
QScalar m_parameter();
/// Coupling of the rank-1 projection in the entry relation:
/// r - r^{-1} + q - q^{-1}.
QScalar braid_coupling();
/// Coupling of the trivial-channel projection: q^{13} - q^{-13} + q - q^{-1}.
QScalar trivial_coupling();
/// Scalar of T A T A on W(delta,nu): q^{c_nu - c_delta - 2 c_V - 2}.
QScalar tata_scalar(Weight delta, Weight nu);

/// Eigenvalue of the loop generator on the edge lambda -> lambda + omega:
/// q^{2(lambda+rho,omega)-10} for omega != 0, q^{-12} for omega = 0.
/// Asserted equal to q^{c_{lambda+omega} - c_lambda - c_V}.
QScalar t_eigenvalue(Weight lambda, Weight omega);

/// Structure coefficient c(lambda,nu) of the loop-conjugated projection:
/// q^{-5}[(q+q^{-1})(q^{2(lambda+rho,beta1)} + q^{2(lambda+rho,beta2)})
///        + q^{2(lambda+rho,beta)+1} + q^{-1}],  beta = beta1 + beta2.
/// beta1, beta2, beta must all be short roots.
QScalar c_lambda_nu(Weight lambda, Weight beta1, Weight beta2);

/// Raised when the product-form diagonal entries do not apply to a block
/// (missing L1 channel, truncated support, repeated exponents).
struct ClosedFormInapplicable : std::runtime_error {
    explicit ClosedFormInapplicable(const std::string& what) : std::runtime_error(what) {}
};

/**
 * Diagonal entries d_s of the rank-1 projection onto the L1 channel,
 * in product form:
 *   d_s = [e(s)+1]/([7]-1) * prod_{t != s} [(e(s)+e(t))/2]/[(e(s)-e(t))/2],
 * the overall orientation being pinned by trace(P) = 1 and self-checked
 * against the defining linear system before returning.
 * Requires the L1 channel with multiplicity 1, sum e(t) = 6 and distinct
 * exponents; throws ClosedFormInapplicable otherwise.
 */
std::vector<QScalar> diag_entries(Weight delta, Weight nu);

/**
 * Same d_s from the defining linear system instead of the product form:
 * with H_{ts} = 1/(1 - q^{e(t)+e(s)}), every row t must satisfy
 *   (q - q^{-1}) H_{tt} - (r - r^{-1} + q - q^{-1}) sum_s H_{ts} d_s = r^{-1}.
 * Works on truncated blocks where the product form's hypothesis fails.
 * Requires the L1 channel and delta != nu.
 */
std::vector<QScalar> diag_entries_linear(Weight delta, Weight nu);

/// Exact dense Gaussian elimination over the scalar field; throws
/// std::domain_error on a singular system.
std::vector<QScalar> solve_qlinear(std::vector<std::vector<QScalar>> a,
                                   std::vector<QScalar> b);

/**
 * @brief Fully constructed local data on W(delta,nu). Matrices are numeric
 *        at the context point; exact data (exponents, spectrum, d) is kept
 *        alongside. backend records how A was obtained.
 */
struct Block {
    Weight delta, nu;
    std::vector<Weight> middles;         // sorted; empty means no paths
    std::vector<HalfInt> e;
    std::vector<long long> f;
    BlockSpectrum spectrum;
    std::vector<QScalar> d;              // diag of P; empty without L1 channel
    Mat T, A, P, Q;                      // Q nonempty only when nu == delta
    std::string backend;                 // "exact-closed-form" | "numeric-solver"
    Real solver_residual = Real(0);

    bool empty() const { return middles.empty(); }
    long long size() const { return (long long)middles.size(); }
};

/// Rank-1 idempotent in the square-root gauge: P = v w^T with
/// v_s = sqrt(|d_s|), w_s = sign(d_s) sqrt(|d_s|); diagonal is d, and
/// p_{st} p_{ts} = d_s d_t independently of the signs.
Mat rank1_from_diag(const std::vector<Real>& d);

/// Projection onto the trivial channel of W(delta,delta):
/// Q_{st} = sqrt(qd(mu_s) qd(mu_t)) / (qd(delta) qd(V)), entrywise positive
/// at real q > 1; rank-1 idempotent because the quantum dimensions of the
/// middles sum to qd(delta) qd(V) exactly.
Mat build_Q(Weight delta, const NumericContext& ctx);

/// Constructs T, A, P (and Q when nu == delta) on W(delta,nu), choosing the
/// backend by block shape; verifies spectrum/TATA internally and records
/// the residual. Returns an empty Block when there are no paths.
Block build_block(Weight delta, Weight nu, const NumericContext& ctx);

struct EValueViolation {
    Weight delta, nu, middle;
    HalfInt e;
};

struct EValueReport {
    long long bound = 0;
    long long blocks_checked = 0;
    long long skipped_equal = 0;          // delta == nu
    long long skipped_single = 0;         // fewer than two middles
    std::vector<EValueViolation> violations;
    bool passed() const { return violations.empty(); }
};

/// Scans every block with delta != nu, at least two middles and delta_1 <=
/// bound for exponents e(t) = +-1; violations are collected, not fatal.
EValueReport check_e_values(long long bound);

struct CIdentityReport {
    Weight lambda, nu;
    bool applicable = false;              // full 4-middle block with L1 channel
    long long middle_count = 0;
    bool sum_e_six = false;               // sum e(t) = 6
    bool sum_d_one = false;               // sum d_s = 1
    bool e_weighted = false;              // ([7]-1) sum q^{e}d = q^7 sum [e(t)]
    bool f_weighted = false;              // ([7]-1) sum q^{f}d = c(lambda,nu)
    bool ptp_diagonal = false;            // ([7]-1) (PTP)_ss = c d_s for all s
    std::string detail;                   // both sides on first failure
    bool passed() const {
        return applicable && sum_e_six && sum_d_one && e_weighted && f_weighted &&
               ptp_diagonal;
    }
};

/// Exact verification of the structure-coefficient identities on the block
/// delta = lambda, nu = lambda + beta1 + beta2. All equalities are checked
/// in the exact scalar field; no tolerances.
CIdentityReport verify_c_identities(Weight lambda, Weight beta1, Weight beta2);

} // namespace g2cent
