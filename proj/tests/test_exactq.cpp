#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "g2cent/halfint.hpp"
#include "g2cent/laurent.hpp"
#include "g2cent/numeric.hpp"
#include "g2cent/qscalar.hpp"

#include <vector>

using namespace g2cent;

namespace {

// Independent oracle: [x] evaluated directly in mpfr, bypassing the
// symbolic layer entirely.
Real bracket_oracle(double x, const Real& q) {
    Real qx = pow(q, Real(x));
    return (qx - 1 / qx) / (q - 1 / q);
}

QScalar hi(long long twice) { return qpow(HalfInt::from_twice(twice)); }

} // namespace

TEST_CASE("HalfInt arithmetic and parity") {
    HalfInt a(3);
    HalfInt h = HalfInt::from_twice(5);          // 5/2
    CHECK(a.is_integer());
    CHECK(!h.is_integer());
    CHECK(a.integer() == 3);
    CHECK_THROWS_AS(h.integer(), std::domain_error);
    CHECK((a + h).twice() == 11);
    CHECK((a - h).twice() == 1);
    CHECK((2 * h).twice() == 10);
    CHECK((-h).twice() == -5);
    CHECK(HalfInt::half_of(HalfInt(7)).twice() == 7);
    CHECK(h.str() == "5/2");
    CHECK(a.str() == "3");
    CHECK(HalfInt(2) < HalfInt::from_twice(5));
}

TEST_CASE("LaurentS canonical term storage") {
    LaurentS p = LaurentS::monomial(2, 3);
    p += LaurentS::monomial(-1, mpq_class(1, 2));
    CHECK(p.term_count() == 2);
    p -= LaurentS::monomial(2, 3);
    CHECK(p.term_count() == 1);                  // zero term dropped
    CHECK(p.coeff(-1) == mpq_class(1, 2));
    CHECK(p.min_exp() == -1);
    CHECK(p.max_exp() == -1);
    CHECK((p - p).is_zero());
    CHECK_THROWS_AS(LaurentS().min_exp(), std::domain_error);

    LaurentS x = LaurentS::monomial(1) + LaurentS(1);       // s + 1
    LaurentS y = LaurentS::monomial(1) - LaurentS(1);       // s - 1
    CHECK(x * y == LaurentS::monomial(2) - LaurentS(1));    // s^2 - 1
    CHECK(x.substituted_inverse() == LaurentS::monomial(-1) + LaurentS(1));
    CHECK(x.shifted(-3) == LaurentS::monomial(-2) + LaurentS::monomial(-3));
}

TEST_CASE("QScalar canonical form and field laws") {
    // (s^2-1)/(s-1) reduces to s+1 with denominator 1
    LaurentS s2m1 = LaurentS::monomial(2) - LaurentS(1);
    LaurentS sm1 = LaurentS::monomial(1) - LaurentS(1);
    QScalar red(s2m1, sm1);
    CHECK(red.is_polynomial());
    CHECK(red == QScalar(LaurentS::monomial(1) + LaurentS(1)));

    // denominator normalization: lowest coefficient scaled to 1, s-powers
    // pushed into the numerator
    QScalar r(LaurentS::monomial(3, 5), LaurentS::monomial(1, 2) + LaurentS::monomial(2, 2));
    CHECK(r.den().coeff(0) == 1);
    CHECK(r.den().min_exp() == 0);

    CHECK_THROWS_AS(QScalar(LaurentS(1), LaurentS()), std::domain_error);
    CHECK_THROWS_AS(QScalar(1) /= QScalar(), std::domain_error);

    // field laws over a deterministic sample
    std::vector<QScalar> sample = {
        QScalar(2), bracket(3), bracket(HalfInt::from_twice(1)),
        qpow(-2) - qpow(3), QScalar(1) / (QScalar(1) + qpow(2)),
    };
    for (const auto& x : sample)
        for (const auto& y : sample)
            for (const auto& z : sample) {
                CHECK((x + y) * z == x * z + y * z);
                CHECK(x * (y * z) == (x * y) * z);
                CHECK(x + (y + z) == (x + y) + z);
                CHECK(x * y == y * x);
            }
    for (const auto& x : sample) {
        CHECK(x - x == QScalar());
        if (!x.is_zero()) CHECK(x / x == QScalar(1));
        CHECK(x * QScalar(1) == x);
        CHECK(x + QScalar() == x);
        // canonicalization is idempotent: rebuilding from num/den is a no-op
        CHECK(QScalar(x.num(), x.den()) == x);
    }
}

TEST_CASE("qpow monomials") {
    CHECK(qpow(2) == QScalar(LaurentS::monomial(4)));
    CHECK(qpow(HalfInt::from_twice(5)) == spow(5));  // q^{5/2} = s^5
    CHECK(qpow(0) == QScalar(1));
    for (long long i = -4; i <= 4; ++i)
        for (long long j = -4; j <= 4; ++j)
            CHECK(hi(i) * hi(j) == hi(i + j));
}

TEST_CASE("bracket closed forms") {
    CHECK(bracket(0) == QScalar());
    CHECK(bracket(1) == QScalar(1));
    CHECK(bracket(2) == qpow(1) + qpow(-1));
    CHECK(bracket(-3) == -bracket(3));
    // [7] = q^6 + q^4 + q^2 + 1 + q^-2 + q^-4 + q^-6
    QScalar b7;
    for (long long e = -6; e <= 6; e += 2) b7 += qpow(e);
    CHECK(bracket(7) == b7);
    CHECK(bracket(7).is_polynomial());
    // [1/2] = 1/(s + s^-1): numerator s, denominator 1 + s^2
    QScalar bh = bracket(HalfInt::from_twice(1));
    CHECK(!bh.is_polynomial());
    CHECK(bh == QScalar(LaurentS::monomial(1), LaurentS(1) + LaurentS::monomial(2)));
}

TEST_CASE("bracket recurrences") {
    QScalar b2 = bracket(2);
    for (long long t = -13; t <= 13; ++t) {
        HalfInt n = HalfInt::from_twice(t);
        HalfInt one(1);
        CHECK(b2 * bracket(n) == bracket(n + one) + bracket(n - one));
        CHECK(bracket(n + one) * bracket(n - one) == bracket(n) * bracket(n) - QScalar(1));
    }
}

TEST_CASE("numeric evaluation at q = 1.3") {
    set_precision_digits(50);
    Real q = to_real(mpq_class(13, 10));
    Real s = sqrt(q);

    // frozen 40-digit expansion of the exact rational [7](13/10)
    Real frozen("11.5219289840101400324727993173129494040472702");
    Real got = eval_at_q(bracket(7), q);
    CHECK(abs(got - frozen) < Real("1e-40"));

    // oracle cross-check across integral and half-integral arguments
    for (long long t = -9; t <= 9; ++t) {
        Real want = bracket_oracle(double(t) / 2.0, q);
        Real have = eval_qscalar(bracket(HalfInt::from_twice(t)), s);
        CHECK(abs(want - have) < Real("1e-45"));
    }

    // denominator vanishing: 1/(s-1) at s=1
    QScalar pole(LaurentS(1), LaurentS::monomial(1) - LaurentS(1));
    CHECK_THROWS_AS(eval_qscalar(pole, Real(1)), std::domain_error);
}

TEST_CASE("string rendering") {
    CHECK(bracket(3).str() == "q^2 + 1 + q^-2");
    CHECK(QScalar().str() == "0");
    CHECK(qpow(HalfInt::from_twice(3)).str() == "q^(3/2)");
    CHECK((QScalar(-2) * qpow(1)).str() == "-2*q");
    QScalar bh = bracket(HalfInt::from_twice(1));
    CHECK(bh.str() == "(q^(1/2)) / (q + 1)");
}

TEST_CASE("matrix utilities") {
    set_precision_digits(50);
    Mat a(2, 2);
    a(0, 0) = 2; a(0, 1) = 1; a(1, 0) = 1; a(1, 1) = 3;
    std::vector<Real> b = {Real(5), Real(10)};
    auto x = solve_linear(a, b);
    CHECK(abs(x[0] - 1) < Real("1e-45"));
    CHECK(abs(x[1] - 3) < Real("1e-45"));

    Mat id = Mat::identity(3);
    CHECK(abs(id.frobenius() * id.frobenius() - 3) < Real("1e-45"));
    CHECK((id * id - id).max_abs() == 0);

    // overdetermined least squares: fit exact linear data
    Mat m(3, 2);
    m(0, 0) = 1; m(0, 1) = 1;
    m(1, 0) = 1; m(1, 1) = 2;
    m(2, 0) = 1; m(2, 1) = 3;
    std::vector<Real> rhs = {Real(3), Real(5), Real(7)};   // 1 + 2*t
    auto c = least_squares(m, rhs);
    CHECK(abs(c[0] - 1) < Real("1e-40"));
    CHECK(abs(c[1] - 2) < Real("1e-40"));
}
