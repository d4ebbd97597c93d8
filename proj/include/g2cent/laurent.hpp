#pragma once

#include <gmpxx.h>

#include <map>
#include <string>

namespace g2cent {

/**
 * @brief Laurent polynomial in the base variable s with exact rational
 *        coefficients, kept canonical (no explicitly stored zero terms).
 *
 * s is the square root of the quantum parameter q, so q-powers are the
 * even s-powers and half-integral q-powers stay polynomial.
 */
class LaurentS {
public:
    LaurentS() = default;                       // zero
    LaurentS(long long c) { set(0, mpq_class((long)c)); }
    LaurentS(const mpq_class& c) { set(0, c); }

    static LaurentS monomial(long long exp, const mpq_class& c = mpq_class(1)) {
        LaurentS p;
        p.set(exp, c);
        return p;
    }

    bool is_zero() const { return c_.empty(); }
    bool is_one() const;

    /// Smallest/largest stored exponent; throws on the zero polynomial.
    long long min_exp() const;
    long long max_exp() const;

    mpq_class coeff(long long e) const {
        auto it = c_.find(e);
        return it == c_.end() ? mpq_class(0) : it->second;
    }
    const std::map<long long, mpq_class>& terms() const { return c_; }
    std::size_t term_count() const { return c_.size(); }

    LaurentS& operator+=(const LaurentS& o);
    LaurentS& operator-=(const LaurentS& o);
    LaurentS& operator*=(const LaurentS& o);
    LaurentS operator-() const;
    friend LaurentS operator+(LaurentS a, const LaurentS& b) { return a += b; }
    friend LaurentS operator-(LaurentS a, const LaurentS& b) { return a -= b; }
    friend LaurentS operator*(LaurentS a, const LaurentS& b) { return a *= b; }
    bool operator==(const LaurentS& o) const { return c_ == o.c_; }

    LaurentS scaled(const mpq_class& c) const;   // c * this
    LaurentS shifted(long long k) const;         // s^k * this
    LaurentS substituted_inverse() const;        // s -> 1/s

    /// Rendered in s, ascending exponents, e.g. "s^-2 + 3/2 + 2*s".
    std::string str() const;

private:
    void set(long long e, const mpq_class& c) {
        if (c != 0) c_[e] = c;
    }

    std::map<long long, mpq_class> c_;
};

} // namespace g2cent
