#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "g2cent/block.hpp"
#include "g2cent/block_solver.hpp"
#include "g2cent/bratteli.hpp"
#include "g2cent/weight_system.hpp"

#include <algorithm>
#include <set>
#include <vector>

using namespace g2cent;

namespace {

Weight fw(long long a, long long b) { return Weight::fundamental(a, b); }

std::vector<Weight> dominant_up_to(long long v1_bound) {
    std::vector<Weight> out;
    for (long long a = 0; a <= v1_bound; ++a)
        for (long long b = 0; a + b <= v1_bound; ++b) out.push_back(fw(a, b));
    return out;
}

// every window target reachable from delta in two steps
std::vector<Weight> reachable(Weight delta) {
    std::set<Weight> nus;
    for (Weight mu : tensor_with_v(delta))
        for (Weight nu : tensor_with_v(mu)) nus.insert(nu);
    return {nus.begin(), nus.end()};
}

// exact exponent oracle straight from the Casimir values
HalfInt e_oracle(Weight delta, Weight nu, Weight mu) {
    return HalfInt::from_twice(2 * casimir(mu) - casimir(delta) - casimir(nu) + 2);
}

// independent route for nu == delta: the step weight omega = mu - delta gives
// e = 2(delta+rho, omega) + 3 for a short-root step and e = 1 for the flat step
HalfInt e_oracle_diagonal(Weight delta, Weight mu) {
    if (mu == delta) return 1;
    return 2 * inner(delta + rho(), mu - delta) + 3;
}

Real trace_of(const Mat& a) {
    Real t(0);
    for (long long i = 0; i < a.rows(); ++i) t += a(i, i);
    return t;
}

Real symmetry_gap(const Mat& a) { return (a - a.transposed()).max_abs(); }

// spectral projector of a via the Lagrange product over the other eigenvalues
Mat spectral_projector(const Mat& a, const std::vector<Real>& evs, std::size_t which) {
    Mat pi = Mat::identity(a.rows());
    for (std::size_t k = 0; k < evs.size(); ++k) {
        if (k == which) continue;
        Mat shift = a;
        for (long long i = 0; i < a.rows(); ++i) shift(i, i) -= evs[k];
        pi = pi * shift.scaled(1 / (evs[which] - evs[k]));
    }
    return pi;
}

Real minpoly_gap(const Mat& a, const std::vector<Real>& evs) {
    Mat poly = Mat::identity(a.rows());
    for (const Real& ev : evs) {
        Mat shift = a;
        for (long long i = 0; i < a.rows(); ++i) shift(i, i) -= ev;
        poly = poly * shift;
    }
    return poly.max_abs();
}

std::vector<Real> channel_values(const BlockSpectrum& sp, const NumericContext& ctx) {
    std::vector<Real> evs;
    for (const auto& ch : sp.channels) evs.push_back(eval(ch.eigenvalue, ctx));
    return evs;
}

// exact check of one defining-system row:
// (q - q^{-1}) H_tt - C sum_s H_ts d_s = r^{-1}
bool row_holds(const std::vector<HalfInt>& e, const std::vector<QScalar>& d,
               std::size_t t) {
    QScalar lhs = (qpow(1) - qpow(-1)) / (QScalar(1) - qpow(e[t] + e[t]));
    QScalar sum;
    for (std::size_t s = 0; s < d.size(); ++s)
        sum += d[s] / (QScalar(1) - qpow(e[t] + e[s]));
    lhs -= braid_coupling() * sum;
    return lhs == QScalar(1) / r_value();
}

} // namespace

TEST_CASE("channel eigenvalues are the four reference scalars") {
    CHECK(channel_eigenvalue(fw(2, 0)) == qpow(1));
    CHECK(channel_eigenvalue(fw(0, 1)) == -qpow(-1));
    CHECK(channel_eigenvalue(fw(1, 0)) == -qpow(-7));
    CHECK(channel_eigenvalue(fw(0, 0)) == qpow(-13));
    CHECK_THROWS_AS(channel_eigenvalue(fw(3, 0)), std::invalid_argument);
}

TEST_CASE("channel spectra on reference windows") {
    auto sp = block_spectrum(fw(1, 0), fw(1, 0));
    REQUIRE(sp.channels.size() == 4);
    CHECK(sp.channels[0].kappa == fw(2, 0));
    CHECK(sp.channels[1].kappa == fw(0, 1));
    CHECK(sp.channels[2].kappa == fw(1, 0));
    CHECK(sp.channels[3].kappa == fw(0, 0));
    for (const auto& ch : sp.channels) CHECK(ch.mult == 1);

    sp = block_spectrum(fw(0, 1), fw(2, 0));
    CHECK(sp.size() == 3);
    CHECK(sp.mult_of(fw(2, 0)) == 1);
    CHECK(sp.mult_of(fw(0, 1)) == 1);
    CHECK(sp.mult_of(fw(1, 0)) == 1);
    CHECK_FALSE(sp.has(fw(0, 0)));

    sp = block_spectrum(fw(1, 1), fw(3, 0));
    CHECK(sp.size() == 4);
    CHECK(sp.mult_of(fw(2, 0)) == 2);
    CHECK(sp.mult_of(fw(0, 1)) == 1);
    CHECK(sp.mult_of(fw(1, 0)) == 1);

    // no L1 channel when the lower corner has a(delta) = 0 and nu = delta
    sp = block_spectrum(fw(0, 1), fw(0, 1));
    CHECK_FALSE(sp.has(fw(1, 0)));
    CHECK(sp.has(fw(0, 0)));
}

TEST_CASE("channel multiplicities add up to the middle count") {
    for (Weight delta : dominant_up_to(6))
        for (Weight nu : reachable(delta)) {
            auto middles = two_step_support(delta, nu);
            if (middles.empty()) continue;
            auto sp = block_spectrum(delta, nu);
            CHECK(sp.size() == (long long)middles.size());
            // the trivial channel appears exactly on the diagonal windows
            CHECK(sp.has(fw(0, 0)) == (delta == nu));
            for (const auto& ch : sp.channels)
                if (ch.kappa == fw(1, 0) || ch.kappa == fw(0, 0)) CHECK(ch.mult == 1);
        }
}

TEST_CASE("loop exponents on reference windows") {
    auto ex = exponents(fw(0, 0), fw(1, 0));
    CHECK(ex.e == std::vector<HalfInt>{7});
    CHECK(ex.f == std::vector<long long>{0});

    ex = exponents(fw(1, 1), fw(3, 0));
    CHECK(ex.e == std::vector<HalfInt>{-16, -2, 4, 20});
    CHECK(ex.f == std::vector<long long>{-26, -12, -6, 10});

    ex = exponents(fw(0, 1), fw(2, 0));
    CHECK(ex.e == std::vector<HalfInt>{-13, 3, 17});
    CHECK(ex.f == std::vector<long long>{-24, -8, 6});

    ex = exponents(fw(1, 0), fw(2, 0));
    CHECK(ex.e == std::vector<HalfInt>{-7, 5, 9});

    ex = exponents(fw(1, 0), fw(1, 0));
    CHECK(ex.e == std::vector<HalfInt>{-11, 1, 13, 17});

    ex = exponents(fw(2, 0), fw(2, 0));
    CHECK(ex.e == std::vector<HalfInt>{-15, -3, 1, 15, 21});

    ex = exponents(fw(1, 1), fw(1, 1));
    CHECK(ex.e == std::vector<HalfInt>{-17, -13, 1, 19, 7, 23});
}

TEST_CASE("loop exponents agree with the Casimir oracle across the tower") {
    for (Weight delta : dominant_up_to(6))
        for (Weight nu : reachable(delta)) {
            auto middles = two_step_support(delta, nu);
            if (middles.empty()) continue;
            auto ex = exponents(delta, nu);
            REQUIRE(ex.e.size() == middles.size());
            long long fe_gap = (casimir(nu) - casimir(delta)) / 2 - 13;
            for (std::size_t t = 0; t < middles.size(); ++t) {
                CHECK(ex.e[t] == e_oracle(delta, nu, middles[t]));
                CHECK(HalfInt(ex.f[t]) == ex.e[t] + HalfInt(fe_gap));
                if (delta == nu) {
                    CHECK(ex.e[t] == e_oracle_diagonal(delta, middles[t]));
                    CHECK(((ex.e[t].twice() % 4) + 4) % 4 == 2);  // odd integer values
                }
            }
        }
}

TEST_CASE("full off-diagonal windows have exponent sum six") {
    long long full = 0;
    for (Weight delta : dominant_up_to(8))
        for (Weight nu : reachable(delta)) {
            if (nu == delta) continue;
            auto middles = two_step_support(delta, nu);
            if (middles.size() != 4 || !block_spectrum(delta, nu).has(fw(1, 0))) continue;
            auto ex = exponents(delta, nu);
            HalfInt sum(0);
            for (HalfInt e : ex.e) sum = sum + e;
            CHECK(sum == HalfInt(6));
            ++full;
        }
    CHECK(full > 100);
}

TEST_CASE("no off-diagonal window carries a unit exponent") {
    auto report = check_e_values(6);
    CHECK(report.passed());
    CHECK(report.violations.empty());
    CHECK(report.blocks_checked > 50);
    CHECK(report.skipped_equal > 0);
    CHECK(report.skipped_single > 0);
}

TEST_CASE("structure scalars") {
    CHECK(r_value() == -qpow(7));
    CHECK(m_parameter() == -bracket(7));
    CHECK(braid_coupling() == (qpow(1) - qpow(-1)) * (QScalar(1) - bracket(7)));
    CHECK(trivial_coupling() == qpow(13) - qpow(-13) + qpow(1) - qpow(-1));
    CHECK(trivial_coupling() == (qpow(1) - qpow(-1)) * (QScalar(1) + bracket(13)));
    CHECK(tata_scalar(fw(0, 0), fw(0, 0)) == qpow(-26));
    CHECK(tata_scalar(fw(1, 1), fw(3, 0)) == qpow(-20));
    CHECK(tata_scalar(fw(0, 1), fw(2, 0)) == qpow(-22));
}

TEST_CASE("projection diagonal in closed form") {
    // full window: product form applies and matches the defining system
    auto d = diag_entries(fw(1, 1), fw(3, 0));
    REQUIRE(d.size() == 4);
    QScalar sum;
    for (const auto& x : d) sum += x;
    CHECK(sum == QScalar(1));
    auto ex = exponents(fw(1, 1), fw(3, 0));
    for (std::size_t t = 0; t < d.size(); ++t) CHECK(row_holds(ex.e, d, t));
    CHECK(d == diag_entries_linear(fw(1, 1), fw(3, 0)));

    // truncated window: the product form refuses, the linear route works
    CHECK_THROWS_AS(diag_entries(fw(0, 1), fw(2, 0)), ClosedFormInapplicable);
    d = diag_entries_linear(fw(0, 1), fw(2, 0));
    REQUIRE(d.size() == 3);
    sum = QScalar(0);
    for (const auto& x : d) sum += x;
    CHECK(sum == QScalar(1));
    ex = exponents(fw(0, 1), fw(2, 0));
    for (std::size_t t = 0; t < d.size(); ++t) CHECK(row_holds(ex.e, d, t));

    // single-path window: the lone entry is forced to 1
    CHECK(diag_entries(fw(0, 0), fw(1, 0)) == std::vector<QScalar>{QScalar(1)});

    CHECK_THROWS_AS(diag_entries(fw(0, 1), fw(0, 1)), ClosedFormInapplicable);
    CHECK_THROWS_AS(diag_entries_linear(fw(1, 0), fw(1, 0)), std::invalid_argument);
}

TEST_CASE("loop eigenvalues per edge") {
    CHECK(t_eigenvalue(fw(1, 0), Weight(1, 0, -1)) == qpow(4));
    CHECK(t_eigenvalue(fw(1, 0), Weight(0, 0, 0)) == qpow(-12));
    CHECK(t_eigenvalue(fw(0, 0), Weight(1, 0, -1)) == QScalar(1));

    // dual route: the eigenvalue is q to the Casimir difference minus c_V
    for (Weight lambda : dominant_up_to(6))
        for (Weight mu : tensor_with_v(lambda)) {
            HalfInt exp = HalfInt::from_twice(2 * (casimir(mu) - casimir(lambda) - 12));
            CHECK(t_eigenvalue(lambda, mu - lambda) == qpow(exp));
        }

    CHECK_THROWS_AS(t_eigenvalue(fw(1, 0), Weight(2, 0, -2)), std::invalid_argument);
    CHECK_THROWS_AS(t_eigenvalue(fw(0, 0), Weight(-1, 0, 1)), std::invalid_argument);
}

TEST_CASE("structure coefficient on the vacuum window") {
    QScalar c = c_lambda_nu(fw(0, 0), Weight(1, -1, 0), Weight(0, 1, -1));
    CHECK(c == qpow(6) + qpow(4) + qpow(2) + qpow(-2) + qpow(-4) + qpow(-6));
    CHECK_THROWS_AS(c_lambda_nu(fw(0, 0), Weight(1, 1, -2), Weight(0, 1, -1)),
                    std::invalid_argument);
    CHECK_THROWS_AS(c_lambda_nu(fw(0, 0), Weight(1, -1, 0), Weight(-1, 1, 0)),
                    std::invalid_argument);
}

TEST_CASE("structure coefficient identities hold exactly") {
    auto report = verify_c_identities(fw(1, 1), Weight(1, -1, 0), Weight(0, 1, -1));
    CHECK(report.applicable);
    CHECK(report.passed());
    CHECK(report.detail.empty());

    long long applicable = 0;
    for (long long a = 1; a <= 3; ++a)
        for (long long b = 1; b <= 3; ++b)
            for (Weight beta1 : short_roots())
                for (Weight beta2 : short_roots()) {
                    bool short_sum = false;
                    for (Weight s : short_roots())
                        if (s == beta1 + beta2) short_sum = true;
                    if (!short_sum) continue;
                    auto rep = verify_c_identities(fw(a, b), beta1, beta2);
                    if (rep.applicable) {
                        CHECK(rep.passed());
                        ++applicable;
                    }
                }
    CHECK(applicable > 50);
}

TEST_CASE("windows with no paths come back empty") {
    NumericContext ctx;
    CHECK(two_step_support(fw(0, 0), fw(3, 0)).empty());
    Block b = build_block(fw(0, 0), fw(3, 0), ctx);
    CHECK(b.empty());
    CHECK(b.size() == 0);
}

TEST_CASE("single-path windows are scalar") {
    NumericContext ctx;
    Block b = build_block(fw(0, 0), fw(0, 0), ctx);
    REQUIRE(b.size() == 1);
    CHECK(b.middles == std::vector<Weight>{fw(1, 0)});
    CHECK(abs(b.A(0, 0) - eval(qpow(-13), ctx)) < pow_int(Real(10), -45));
    CHECK(b.Q(0, 0) == Real(1));
    CHECK(b.backend == "exact-closed-form");

    b = build_block(fw(0, 0), fw(1, 0), ctx);
    REQUIRE(b.size() == 1);
    CHECK(abs(b.A(0, 0) - eval(-qpow(-7), ctx)) < pow_int(Real(10), -45));
    CHECK(b.P(0, 0) == Real(1));
    CHECK(b.d == std::vector<QScalar>{QScalar(1)});

    b = build_block(fw(0, 0), fw(0, 1), ctx);
    REQUIRE(b.size() == 1);
    CHECK(abs(b.A(0, 0) - eval(-qpow(-1), ctx)) < pow_int(Real(10), -45));
    CHECK(b.d.empty());
}

TEST_CASE("square-root gauge rank-one factor") {
    set_precision_digits(50);
    std::vector<Real> d = {Real(3) / 4, Real(-1) / 2, Real(3) / 4};
    Mat p = rank1_from_diag(d);
    for (std::size_t sidx = 0; sidx < d.size(); ++sidx) {
        CHECK(abs(p(sidx, sidx) - d[sidx]) < pow_int(Real(10), -45));
        for (std::size_t t = 0; t < d.size(); ++t)
            CHECK(abs(p(sidx, t) * p(t, sidx) - d[sidx] * d[t]) < pow_int(Real(10), -45));
    }
    // sum d = 1 makes it idempotent regardless of the signs
    CHECK((p * p - p).max_abs() < pow_int(Real(10), -45));
}

TEST_CASE("exact-route window matrices verify") {
    NumericContext ctx;
    const Real tol = pow_int(Real(10), -40);
    const Real rinv = eval(QScalar(1) / r_value(), ctx);

    for (auto [dl, nu] : std::vector<std::pair<Weight, Weight>>{
             {fw(1, 0), fw(2, 0)},
             {fw(0, 1), fw(2, 0)},
             {fw(1, 1), fw(3, 0)},
             {fw(3, 0), fw(2, 1)},
         }) {
        Block b = build_block(dl, nu, ctx);
        CHECK(b.backend == "exact-closed-form");
        CHECK(b.solver_residual < pow_int(Real(10), -30));
        const long long n = b.size();
        REQUIRE((long long)b.d.size() == n);

        CHECK((b.P * b.P - b.P).max_abs() < tol);
        CHECK(abs(trace_of(b.P) - 1) < tol);
        CHECK((b.A * b.P - b.P.scaled(rinv)).max_abs() < tol);
        CHECK((b.P * b.A - b.P.scaled(rinv)).max_abs() < tol);

        Mat tata = b.T * b.A * b.T * b.A;
        Real scalar = eval(tata_scalar(dl, nu), ctx);
        for (long long i = 0; i < n; ++i) tata(i, i) -= scalar;
        CHECK(tata.max_abs() < tol);

        CHECK(minpoly_gap(b.A, channel_values(b.spectrum, ctx)) < tol);
    }

    // two-path window without the L1 channel: q-symmetrizer shape
    Block h = build_block(fw(1, 0), fw(1, 1), ctx);
    REQUIRE(h.size() == 2);
    CHECK(h.backend == "exact-closed-form");
    CHECK(h.d.empty());
    auto evs = channel_values(h.spectrum, ctx);
    REQUIRE(evs.size() == 2);
    CHECK(minpoly_gap(h.A, evs) < tol);
    Real tra = trace_of(h.A);
    CHECK(abs(tra - evs[0] - evs[1]) < tol);
}

TEST_CASE("diagonal windows: trivial-channel projection and solver blocks") {
    NumericContext ctx;
    const Real tol = pow_int(Real(10), -30);
    const Real q13 = eval(qpow(-13), ctx);
    const Real rinv = eval(QScalar(1) / r_value(), ctx);

    for (Weight dl : {fw(1, 0), fw(0, 1), fw(2, 0), fw(1, 1), fw(0, 2)}) {
        Block b = build_block(dl, dl, ctx);
        const long long n = b.size();
        REQUIRE(n >= 3);
        CHECK(b.backend == "numeric-solver");
        CHECK(b.solver_residual < pow_int(Real(10), -20));

        // the trivial-channel projection is fixed by quantum dimensions
        CHECK((b.Q * b.Q - b.Q).max_abs() < tol);
        CHECK(abs(trace_of(b.Q) - 1) < tol);
        for (long long i = 0; i < n; ++i)
            for (long long j = 0; j < n; ++j) CHECK(b.Q(i, j) > 0);
        CHECK((b.A * b.Q - b.Q.scaled(q13)).max_abs() < tol);
        CHECK((b.Q * b.A - b.Q.scaled(q13)).max_abs() < tol);

        // in this gauge the block matrix is symmetric
        CHECK(symmetry_gap(b.A) < tol);

        Mat tata = b.T * b.A * b.T * b.A;
        Real scalar = eval(tata_scalar(dl, dl), ctx);
        for (long long i = 0; i < n; ++i) tata(i, i) -= scalar;
        CHECK(tata.max_abs() < tol);

        if (b.spectrum.has(fw(1, 0))) {
            CHECK((b.P * b.P - b.P).max_abs() < tol);
            CHECK(abs(trace_of(b.P) - 1) < tol);
            CHECK((b.A * b.P - b.P.scaled(rinv)).max_abs() < tol);
        }

        // independent spectral oracle: Jacobi eigenvalues against the
        // channel targets, sorted and paired by rank
        auto es = eigen_sym(b.A);
        std::vector<Real> want;
        for (const auto& ch : b.spectrum.channels)
            for (long long m = 0; m < ch.mult; ++m)
                want.push_back(eval(ch.eigenvalue, ctx));
        std::sort(want.begin(), want.end());
        std::vector<Real> got = es.values;
        std::sort(got.begin(), got.end());
        REQUIRE((long long)got.size() == n);
        for (std::size_t k = 0; k < want.size(); ++k) CHECK(abs(got[k] - want[k]) < tol);

        // spectral projector traces recover the multiplicities
        auto evs = channel_values(b.spectrum, ctx);
        for (std::size_t k = 0; k < evs.size(); ++k) {
            Mat pi = spectral_projector(b.A, evs, k);
            CHECK(abs(trace_of(pi) - Real(b.spectrum.channels[k].mult)) < tol);
        }
    }
}

TEST_CASE("solver cross-validates the exact routes") {
    NumericContext ctx;
    const Real tol = pow_int(Real(10), -10);

    for (auto [dl, nu] : std::vector<std::pair<Weight, Weight>>{
             {fw(1, 1), fw(3, 0)},
             {fw(1, 0), fw(2, 0)},
         }) {
        Block b = build_block(dl, nu, ctx);
        REQUIRE(b.backend == "exact-closed-form");

        BlockSolveProblem prob;
        prob.e = b.e;
        prob.has_p = true;
        // seed from the exact diagonal rounded to three decimals, so the
        // iterative route starts near but not at the closed-form answer
        for (const auto& x : b.d) {
            Real v = eval(x, ctx);
            prob.d_init.push_back(floor(v * 1000 + Real(1) / 2) / 1000);
        }
        for (const auto& ch : b.spectrum.channels) {
            prob.eigenvalues.push_back(eval(ch.eigenvalue, ctx));
            prob.mults.push_back(ch.mult);
        }
        SolverResult res = solve_block(prob, ctx);
        CHECK(res.residual < pow_int(Real(10), -30));
        CHECK((res.A - b.A).max_abs() < tol);
        CHECK((res.P - b.P).max_abs() < tol);
    }
}
