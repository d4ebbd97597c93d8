#pragma once

#include "g2cent/halfint.hpp"
#include "g2cent/laurent.hpp"

#include <string>
#include <vector>

namespace g2cent {

/**
 * @brief Element of the field Q(s): a reduced ratio of Laurent polynomials
 *        in s = q^{1/2}.
 *
 * Canonical form: numerator and denominator share no polynomial factor,
 * the denominator is an ordinary polynomial with nonzero constant term,
 * and its lowest-degree (constant) coefficient is 1. Any stray s-power is
 * absorbed into the numerator. Equality is structural.
 */
class QScalar {
public:
    QScalar() = default;                         // 0
    QScalar(long long c) : num_(c), den_(1) {}
    QScalar(const mpq_class& c) : num_(c), den_(1) {}
    explicit QScalar(const LaurentS& n) : num_(n), den_(1) {}
    QScalar(const LaurentS& n, const LaurentS& d);   // throws on d == 0

    const LaurentS& num() const { return num_; }
    const LaurentS& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_one(); }

    QScalar& operator+=(const QScalar& o);
    QScalar& operator-=(const QScalar& o);
    QScalar& operator*=(const QScalar& o);
    QScalar& operator/=(const QScalar& o);       // throws on division by zero
    QScalar operator-() const;
    friend QScalar operator+(QScalar a, const QScalar& b) { return a += b; }
    friend QScalar operator-(QScalar a, const QScalar& b) { return a -= b; }
    friend QScalar operator*(QScalar a, const QScalar& b) { return a *= b; }
    friend QScalar operator/(QScalar a, const QScalar& b) { return a /= b; }
    bool operator==(const QScalar& o) const { return num_ == o.num_ && den_ == o.den_; }

    /// Rendered in q-powers (half-integral exponents as e.g. q^(3/2)).
    std::string str() const;

private:
    void reduce();

    LaurentS num_;                               // zero by default
    LaurentS den_ = LaurentS(1);
};

/// q^e as an exact monomial (s^{2e}).
QScalar qpow(HalfInt e);
/// s^k as an exact monomial.
QScalar spow(long long k);
/// Quantum bracket in base q: [x] = (q^x - q^{-x})/(q - q^{-1}).
/// A Laurent polynomial for integral x, a genuine ratio for half-integral x.
QScalar bracket(HalfInt x);

/// Exact polynomial quotient; throws std::domain_error unless b divides a.
LaurentS exact_quotient(const LaurentS& a, const LaurentS& b);

} // namespace g2cent
