#pragma once

#include "g2cent/qscalar.hpp"

#include <boost/multiprecision/mpfr.hpp>

#include <vector>

namespace g2cent {

// Arbitrary-precision real; precision is set per computation, not per thread.
using Real = boost::multiprecision::mpfr_float;

/// Sets the default mpfr precision (decimal digits) for newly created Reals.
void set_precision_digits(unsigned digits);
unsigned precision_digits();

Real to_real(const mpq_class& r);
Real pow_int(const Real& base, long long e);

/// Evaluates at a positive real s. Exact sparse Horner over exponent gaps.
Real eval_laurent(const LaurentS& p, const Real& s);

/// num(s)/den(s); throws std::domain_error when the denominator vanishes
/// at s (|den(s)| below the working-precision floor).
Real eval_qscalar(const QScalar& x, const Real& s);

/// Convenience: evaluate at q, i.e. s = sqrt(q). Requires q > 0.
Real eval_at_q(const QScalar& x, const Real& q);

/**
 * @brief Minimal dense real matrix. Sizes here are tiny (block sizes <= 7,
 *        path-space dimensions <= a few dozen), so clarity beats BLAS.
 */
class Mat {
public:
    Mat() = default;
    Mat(std::size_t r, std::size_t c) : r_(r), c_(c), a_(r * c, Real(0)) {}
    static Mat identity(std::size_t n);

    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }
    bool empty() const { return a_.empty(); }
    Real& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
    const Real& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

    Mat& operator+=(const Mat& o);
    Mat& operator-=(const Mat& o);
    friend Mat operator+(Mat a, const Mat& b) { return a += b; }
    friend Mat operator-(Mat a, const Mat& b) { return a -= b; }
    friend Mat operator*(const Mat& a, const Mat& b);
    Mat scaled(const Real& c) const;
    Mat transposed() const;

    Real frobenius() const;
    Real max_abs() const;

private:
    std::size_t r_ = 0, c_ = 0;
    std::vector<Real> a_;
};

/// Solves A x = b by Gaussian elimination with partial pivoting.
/// Throws std::domain_error on a (numerically) singular system.
std::vector<Real> solve_linear(Mat a, std::vector<Real> b);

/// Least-squares solution of A x ~ b (rows >= cols) via modified
/// Gram-Schmidt QR. Rank deficiency throws.
std::vector<Real> least_squares(const Mat& a, const std::vector<Real>& b);

struct EigenSym {
    std::vector<Real> values;
    Mat vectors;                          // eigenvectors as columns, orthonormal
};

/// Full eigendecomposition of a symmetric matrix by cyclic Jacobi sweeps.
/// Deterministic; converges to working precision.
EigenSym eigen_sym(Mat a);

} // namespace g2cent
