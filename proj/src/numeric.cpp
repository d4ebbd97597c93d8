#include "g2cent/numeric.hpp"

#include <stdexcept>

namespace g2cent {

void set_precision_digits(unsigned digits) {
    Real::default_precision(digits);
}

unsigned precision_digits() { return unsigned(Real::default_precision()); }

Real to_real(const mpq_class& r) {
    Real n(r.get_num().get_str());
    Real d(r.get_den().get_str());
    return n / d;
}

Real pow_int(const Real& base, long long e) {
    if (e >= 0) return pow(base, (unsigned long long)e);
    return 1 / pow(base, (unsigned long long)(-e));
}

Real eval_laurent(const LaurentS& p, const Real& s) {
    if (p.is_zero()) return Real(0);
    // Horner over descending exponents, sparse gaps bridged by powers
    Real acc(0);
    bool started = false;
    long long prev = 0;
    const auto& t = p.terms();
    for (auto it = t.rbegin(); it != t.rend(); ++it) {
        long long e = it->first;
        if (started) acc *= pow_int(s, prev - e);
        acc += to_real(it->second);
        prev = e;
        started = true;
    }
    return acc * pow_int(s, prev);
}

Real eval_qscalar(const QScalar& x, const Real& s) {
    Real d = eval_laurent(x.den(), s);
    // working-precision floor relative to the denominator's coefficient scale
    Real floor_ = pow(Real(10), -(long long)precision_digits() + 5);
    if (abs(d) < floor_)
        throw std::domain_error("QScalar: denominator vanishes at evaluation point");
    return eval_laurent(x.num(), s) / d;
}

Real eval_at_q(const QScalar& x, const Real& q) {
    if (q <= 0) throw std::domain_error("QScalar: evaluation requires q > 0");
    return eval_qscalar(x, sqrt(q));
}

Mat Mat::identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Mat& Mat::operator+=(const Mat& o) {
    if (r_ != o.r_ || c_ != o.c_) throw std::domain_error("Mat: shape mismatch");
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
}

Mat& Mat::operator-=(const Mat& o) {
    if (r_ != o.r_ || c_ != o.c_) throw std::domain_error("Mat: shape mismatch");
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
}

Mat operator*(const Mat& a, const Mat& b) {
    if (a.cols() != b.rows()) throw std::domain_error("Mat: shape mismatch");
    Mat r(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Real& aik = a(i, k);
            if (aik == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) r(i, j) += aik * b(k, j);
        }
    return r;
}

Mat Mat::scaled(const Real& c) const {
    Mat r = *this;
    for (auto& x : r.a_) x *= c;
    return r;
}

Mat Mat::transposed() const {
    Mat r(c_, r_);
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t j = 0; j < c_; ++j) r(j, i) = (*this)(i, j);
    return r;
}

Real Mat::frobenius() const {
    Real s(0);
    for (const auto& x : a_) s += x * x;
    return sqrt(s);
}

Real Mat::max_abs() const {
    Real m(0);
    for (const auto& x : a_)
        if (abs(x) > m) m = abs(x);
    return m;
}

std::vector<Real> solve_linear(Mat a, std::vector<Real> b) {
    const std::size_t n = a.rows();
    if (a.cols() != n || b.size() != n) throw std::domain_error("solve_linear: shape mismatch");
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (abs(a(i, k)) > abs(a(piv, k))) piv = i;
        if (a(piv, k) == 0) throw std::domain_error("solve_linear: singular matrix");
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
            std::swap(b[k], b[piv]);
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            Real f = a(i, k) / a(k, k);
            if (f == 0) continue;
            for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
            b[i] -= f * b[k];
        }
    }
    std::vector<Real> x(n, Real(0));
    for (std::size_t ii = n; ii-- > 0;) {
        Real s = b[ii];
        for (std::size_t j = ii + 1; j < n; ++j) s -= a(ii, j) * x[j];
        if (a(ii, ii) == 0) throw std::domain_error("solve_linear: singular matrix");
        x[ii] = s / a(ii, ii);
    }
    return x;
}

std::vector<Real> least_squares(const Mat& a, const std::vector<Real>& b) {
    const std::size_t m = a.rows(), n = a.cols();
    if (b.size() != m || m < n) throw std::domain_error("least_squares: shape mismatch");
    // modified Gram-Schmidt thin QR
    Mat q = a, r(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        Real nrm(0);
        for (std::size_t i = 0; i < m; ++i) nrm += q(i, j) * q(i, j);
        nrm = sqrt(nrm);
        if (nrm == 0) throw std::domain_error("least_squares: rank deficient");
        r(j, j) = nrm;
        for (std::size_t i = 0; i < m; ++i) q(i, j) /= nrm;
        for (std::size_t k = j + 1; k < n; ++k) {
            Real dot(0);
            for (std::size_t i = 0; i < m; ++i) dot += q(i, j) * q(i, k);
            r(j, k) = dot;
            for (std::size_t i = 0; i < m; ++i) q(i, k) -= dot * q(i, j);
        }
    }
    // x = R^{-1} Q^T b
    std::vector<Real> qtb(n, Real(0));
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < m; ++i) qtb[j] += q(i, j) * b[i];
    std::vector<Real> x(n, Real(0));
    for (std::size_t jj = n; jj-- > 0;) {
        Real s = qtb[jj];
        for (std::size_t k = jj + 1; k < n; ++k) s -= r(jj, k) * x[k];
        x[jj] = s / r(jj, jj);
    }
    return x;
}

EigenSym eigen_sym(Mat a) {
    const std::size_t n = a.rows();
    if (a.cols() != n) throw std::domain_error("eigen_sym: not square");
    Mat v = Mat::identity(n);
    const Real eps = pow_int(Real(10), -(long long)precision_digits() + 5);
    const Real floor_scale = a.max_abs() + 1;
    for (int sweep = 0; sweep < 200; ++sweep) {
        Real off(0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) off += a(i, j) * a(i, j);
        if (sqrt(off) < eps * floor_scale) break;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                if (abs(a(i, j)) < eps * eps * floor_scale) continue;
                Real theta = (a(j, j) - a(i, i)) / (2 * a(i, j));
                Real t = 1 / (abs(theta) + sqrt(theta * theta + 1));
                if (theta < 0) t = -t;
                Real c = 1 / sqrt(t * t + 1), s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    Real aki = a(k, i), akj = a(k, j);
                    a(k, i) = c * aki - s * akj;
                    a(k, j) = s * aki + c * akj;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    Real aik = a(i, k), ajk = a(j, k);
                    a(i, k) = c * aik - s * ajk;
                    a(j, k) = s * aik + c * ajk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    Real vki = v(k, i), vkj = v(k, j);
                    v(k, i) = c * vki - s * vkj;
                    v(k, j) = s * vki + c * vkj;
                }
            }
    }
    EigenSym out;
    out.vectors = v;
    for (std::size_t i = 0; i < n; ++i) out.values.push_back(a(i, i));
    return out;
}

} // namespace g2cent
