#include "g2cent/qscalar.hpp"

#include <sstream>
#include <stdexcept>

namespace g2cent {

namespace {

// Dense ascending coefficient vector for ordinary polynomials in s.
using Dense = std::vector<mpq_class>;

void trim(Dense& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

Dense to_dense(const LaurentS& p, long long shift) {
    Dense d;
    if (p.is_zero()) return d;
    d.assign(std::size_t(p.max_exp() + shift) + 1, mpq_class(0));
    for (const auto& [e, c] : p.terms()) d[std::size_t(e + shift)] = c;
    return d;
}

LaurentS from_dense(const Dense& d, long long shift) {
    LaurentS p;
    for (std::size_t i = 0; i < d.size(); ++i)
        if (d[i] != 0) p += LaurentS::monomial((long long)i + shift, d[i]);
    return p;
}

void make_monic(Dense& a) {
    if (a.empty()) return;
    mpq_class lead = a.back();
    if (lead == 1) return;
    for (auto& c : a) c /= lead;
}

// a mod b, b nonzero; a is consumed.
Dense remainder(Dense a, const Dense& b) {
    while (a.size() >= b.size() && !a.empty()) {
        mpq_class f = a.back() / b.back();
        std::size_t off = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) a[off + i] -= f * b[i];
        trim(a);
    }
    return a;
}

Dense gcd_dense(Dense a, Dense b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        make_monic(b);
        Dense r = remainder(std::move(a), b);
        a = std::move(b);
        b = std::move(r);
    }
    make_monic(a);
    return a;
}

// exact quotient a / b; throws unless the division is remainder-free
Dense quotient_exact(Dense a, const Dense& b) {
    if (b.empty()) throw std::domain_error("polynomial division by zero");
    Dense q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, mpq_class(0));
    while (a.size() >= b.size() && !a.empty()) {
        mpq_class f = a.back() / b.back();
        std::size_t off = a.size() - b.size();
        q[off] = f;
        for (std::size_t i = 0; i < b.size(); ++i) a[off + i] -= f * b[i];
        trim(a);
    }
    if (!a.empty()) throw std::domain_error("polynomial division is not exact");
    return q;
}

} // namespace

QScalar::QScalar(const LaurentS& n, const LaurentS& d) : num_(n), den_(d) {
    if (den_.is_zero()) throw std::domain_error("QScalar: zero denominator");
    reduce();
}

void QScalar::reduce() {
    if (num_.is_zero()) {
        den_ = LaurentS(1);
        return;
    }
    long long an = num_.min_exp(), ad = den_.min_exp();
    Dense n = to_dense(num_, -an);
    Dense d = to_dense(den_, -ad);
    Dense g = gcd_dense(n, d);
    if (g.size() > 1) {
        n = quotient_exact(std::move(n), g);
        d = quotient_exact(std::move(d), g);
    }
    // normalize: constant coefficient of the denominator becomes 1
    mpq_class c0 = d.front();
    if (c0 != 1)
        for (auto& c : n) c /= c0;
    if (c0 != 1)
        for (auto& c : d) c /= c0;
    num_ = from_dense(n, an - ad);
    den_ = from_dense(d, 0);
}

QScalar& QScalar::operator+=(const QScalar& o) {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ = den_ * o.den_;
    reduce();
    return *this;
}

QScalar& QScalar::operator-=(const QScalar& o) {
    num_ = num_ * o.den_ - o.num_ * den_;
    den_ = den_ * o.den_;
    reduce();
    return *this;
}

QScalar& QScalar::operator*=(const QScalar& o) {
    num_ *= o.num_;
    den_ *= o.den_;
    reduce();
    return *this;
}

QScalar& QScalar::operator/=(const QScalar& o) {
    if (o.is_zero()) throw std::domain_error("QScalar: division by zero");
    num_ *= o.den_;
    den_ *= o.num_;
    reduce();
    return *this;
}

QScalar QScalar::operator-() const {
    QScalar r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
}

namespace {

void render_term(std::ostringstream& os, bool& first, long long s_exp, mpq_class c) {
    if (first) {
        if (c < 0) { os << "-"; c = -c; }
    } else {
        os << (c < 0 ? " - " : " + ");
        if (c < 0) c = -c;
    }
    first = false;
    if (s_exp == 0) {
        os << c.get_str();
        return;
    }
    if (c != 1) os << c.get_str() << "*";
    os << "q";
    if (s_exp == 2) return;                     // plain "q"
    if (s_exp % 2 == 0)
        os << "^" << s_exp / 2;
    else
        os << "^(" << s_exp << "/2)";
}

std::string render_poly(const LaurentS& p) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    const auto& t = p.terms();
    for (auto it = t.rbegin(); it != t.rend(); ++it)
        render_term(os, first, it->first, it->second);
    return os.str();
}

} // namespace

std::string QScalar::str() const {
    if (den_.is_one()) return render_poly(num_);
    return "(" + render_poly(num_) + ") / (" + render_poly(den_) + ")";
}

QScalar qpow(HalfInt e) { return QScalar(LaurentS::monomial(e.twice())); }

QScalar spow(long long k) { return QScalar(LaurentS::monomial(k)); }

QScalar bracket(HalfInt x) {
    if (x.twice() == 0) return QScalar();
    QScalar n = qpow(x) - qpow(-x);
    QScalar d = qpow(HalfInt(1)) - qpow(HalfInt(-1));
    return n / d;
}

LaurentS exact_quotient(const LaurentS& a, const LaurentS& b) {
    if (b.is_zero()) throw std::domain_error("LaurentS: division by zero");
    if (a.is_zero()) return LaurentS();
    long long am = a.min_exp(), bm = b.min_exp();
    Dense q = quotient_exact(to_dense(a, -am), to_dense(b, -bm));
    return from_dense(q, am - bm);
}

} // namespace g2cent
