#include "g2cent/block.hpp"

#include "g2cent/bratteli.hpp"
#include "g2cent/weight_system.hpp"
#include "g2cent/weyl.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace g2cent {

Real q_real(const NumericContext& ctx) {
    set_precision_digits(ctx.digits);
    return to_real(ctx.q);
}

Real s_real(const NumericContext& ctx) { return sqrt(q_real(ctx)); }

Real eval(const QScalar& x, const NumericContext& ctx) {
    return eval_qscalar(x, s_real(ctx));
}

long long BlockSpectrum::size() const {
    long long s = 0;
    for (const auto& c : channels) s += c.mult;
    return s;
}

long long BlockSpectrum::mult_of(Weight kappa) const {
    for (const auto& c : channels)
        if (c.kappa == kappa) return c.mult;
    return 0;
}

QScalar channel_eigenvalue(Weight kappa) {
    if (kappa == Weight::fundamental(2, 0)) return qpow(1);
    if (kappa == lambda2()) return -qpow(-1);
    if (kappa == lambda1()) return -qpow(-7);
    if (kappa.is_zero()) return qpow(-13);
    throw std::invalid_argument("not a channel weight: " + kappa.str());
}

BlockSpectrum block_spectrum(Weight delta, Weight nu) {
    BlockSpectrum sp;
    for (Weight kappa : {Weight::fundamental(2, 0), lambda2(), lambda1(), Weight()}) {
        long long m = racah_speiser_mult(delta, kappa, nu);
        if (m > 0) sp.channels.push_back({kappa, m, channel_eigenvalue(kappa)});
    }
    if (sp.mult_of(lambda1()) > 1 || sp.mult_of(Weight()) > 1)
        throw std::logic_error("channel multiplicity bound violated on W(" + delta.str() +
                               "," + nu.str() + ")");
    if (sp.mult_of(Weight()) != (delta == nu ? 1 : 0))
        throw std::logic_error("trivial channel misplaced on W(" + delta.str() + "," +
                               nu.str() + ")");
    if (sp.size() != (long long)two_step_support(delta, nu).size())
        throw std::logic_error("channel count does not match middle count on W(" +
                               delta.str() + "," + nu.str() + ")");
    return sp;
}

Exponents exponents(Weight delta, Weight nu) {
    Exponents ex;
    long long cd = casimir(delta), cn = casimir(nu);
    for (Weight mu : two_step_support(delta, nu)) {
        HalfInt e = HalfInt::from_twice(2 * casimir(mu) - cd - cn + 2);
        // independent route through the two step weights
        Weight b = mu - delta, bt = nu - mu;
        long long e2_twice = 2 * inner(delta + rho(), b - bt) - 2 * inner(b, bt) +
                             (inner(b, b) - inner(bt, bt)) + 2;
        if (e.twice() != e2_twice)
            throw std::logic_error("exponent formulas disagree on W(" + delta.str() + "," +
                                   nu.str() + ") at " + mu.str());
        ex.e.push_back(e);
        ex.f.push_back(casimir(mu) - cd - 12);
    }
    for (std::size_t i = 0; i < ex.e.size(); ++i) {
        if (!ex.e[i].is_integer() ||
            ((ex.e[i].integer() - ex.e[0].integer()) % 2 + 2) % 2 != 0)
            throw std::logic_error("exponent parity broken on W(" + delta.str() + "," +
                                   nu.str() + ")");
        if (2 * ex.f[i] - 2 * ex.e[i].integer() != cn - cd - 26)
            throw std::logic_error("f - e not constant on W(" + delta.str() + "," +
                                   nu.str() + ")");
    }
    return ex;
}

QScalar r_value() { return -qpow(7); }

QScalar m_parameter() {
    return (r_value() - QScalar(1) / r_value()) / (qpow(1) - qpow(-1));
}

QScalar braid_coupling() { return -qpow(7) + qpow(-7) + qpow(1) - qpow(-1); }

QScalar trivial_coupling() { return qpow(13) - qpow(-13) + qpow(1) - qpow(-1); }

QScalar tata_scalar(Weight delta, Weight nu) {
    return qpow(casimir(nu) - casimir(delta) - 2 * 12 - 2);
}

QScalar t_eigenvalue(Weight lambda, Weight omega) {
    if (!(omega.is_zero() || is_short_root(omega)))
        throw std::invalid_argument("not a weight of V: " + omega.str_eps());
    auto nb = tensor_with_v(lambda);
    if (!std::binary_search(nb.begin(), nb.end(), lambda + omega))
        throw std::invalid_argument("inadmissible edge " + lambda.str() + " + " +
                                    omega.str_eps());
    QScalar val =
        omega.is_zero() ? qpow(-12) : qpow(2 * inner(lambda + rho(), omega) - 10);
    if (val != qpow(casimir(lambda + omega) - casimir(lambda) - 12))
        throw std::logic_error("loop eigenvalue routes disagree");
    return val;
}

QScalar c_lambda_nu(Weight lambda, Weight beta1, Weight beta2) {
    Weight beta = beta1 + beta2;
    if (!is_short_root(beta1) || !is_short_root(beta2) || !is_short_root(beta))
        throw std::invalid_argument("step weights must be short roots with a short sum");
    Weight lr = lambda + rho();
    return qpow(-5) * ((qpow(1) + qpow(-1)) * (qpow(2 * inner(lr, beta1)) +
                                               qpow(2 * inner(lr, beta2))) +
                       qpow(2 * inner(lr, beta) + 1) + qpow(-1));
}

namespace {

QScalar seven_minus_one() { return bracket(7) - QScalar(1); }

// left-hand side of the defining row equation for the diagonal d:
//   (q - q^{-1}) H_tt - C sum_s H_ts d_s  with  H_ts = 1/(1 - q^{e(t)+e(s)})
bool rows_satisfy_defining_system(const std::vector<HalfInt>& e,
                                  const std::vector<QScalar>& d) {
    const QScalar qq = qpow(1) - qpow(-1), c = braid_coupling();
    const QScalar rinv = QScalar(1) / r_value();
    for (std::size_t t = 0; t < e.size(); ++t) {
        QScalar acc = qq / (QScalar(1) - qpow(e[t] + e[t]));
        for (std::size_t s = 0; s < e.size(); ++s)
            acc -= c * d[s] / (QScalar(1) - qpow(e[t] + e[s]));
        if (!(acc == rinv)) return false;
    }
    return true;
}

} // namespace

std::vector<QScalar> diag_entries(Weight delta, Weight nu) {
    Exponents ex = exponents(delta, nu);
    const auto& e = ex.e;
    if (e.empty()) throw ClosedFormInapplicable("no paths");
    if (block_spectrum(delta, nu).mult_of(lambda1()) != 1)
        throw ClosedFormInapplicable("no L1 channel on W(" + delta.str() + "," +
                                     nu.str() + ")");
    if (e.size() == 1) return {QScalar(1)};
    HalfInt total(0);
    for (HalfInt x : e) total += x;
    if (total != HalfInt(6))
        throw ClosedFormInapplicable("exponent sum is not 6 on W(" + delta.str() + "," +
                                     nu.str() + ")");
    std::set<long long> distinct;
    for (HalfInt x : e) distinct.insert(x.twice());
    if (distinct.size() != e.size())
        throw ClosedFormInapplicable("repeated exponents on W(" + delta.str() + "," +
                                     nu.str() + ")");

    std::vector<QScalar> d;
    for (std::size_t s = 0; s < e.size(); ++s) {
        // the orientation of the leading factor is pinned by trace(P) = 1;
        // the defining-system check below enforces it
        QScalar val = bracket(e[s] + HalfInt(1)) / seven_minus_one();
        for (std::size_t t = 0; t < e.size(); ++t) {
            if (t == s) continue;
            val *= bracket(HalfInt::half_of(e[s] + e[t])) /
                   bracket(HalfInt::half_of(e[s] - e[t]));
        }
        d.push_back(val);
    }
    QScalar sum;
    for (const auto& x : d) sum += x;
    if (!(sum == QScalar(1)) || !rows_satisfy_defining_system(e, d))
        throw ClosedFormInapplicable("product form fails its defining system on W(" +
                                     delta.str() + "," + nu.str() + ")");
    return d;
}

std::vector<QScalar> solve_qlinear(std::vector<std::vector<QScalar>> a,
                                   std::vector<QScalar> b) {
    const std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a[piv][col].is_zero()) ++piv;
        if (piv == n) throw std::domain_error("singular linear system");
        std::swap(a[piv], a[col]);
        std::swap(b[piv], b[col]);
        for (std::size_t row = 0; row < n; ++row) {
            if (row == col || a[row][col].is_zero()) continue;
            QScalar factor = a[row][col] / a[col][col];
            for (std::size_t k = col; k < n; ++k) a[row][k] -= factor * a[col][k];
            b[row] -= factor * b[col];
        }
    }
    std::vector<QScalar> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
    return x;
}

std::vector<QScalar> diag_entries_linear(Weight delta, Weight nu) {
    if (delta == nu)
        throw std::invalid_argument("defining system applies only to delta != nu");
    Exponents ex = exponents(delta, nu);
    const auto& e = ex.e;
    if (e.empty() || block_spectrum(delta, nu).mult_of(lambda1()) != 1)
        throw std::invalid_argument("defining system needs the L1 channel");
    const std::size_t n = e.size();
    const QScalar qq = qpow(1) - qpow(-1), c = braid_coupling();
    const QScalar rinv = QScalar(1) / r_value();
    std::vector<std::vector<QScalar>> h(n, std::vector<QScalar>(n));
    std::vector<QScalar> rhs(n);
    for (std::size_t t = 0; t < n; ++t) {
        for (std::size_t s = 0; s < n; ++s) {
            QScalar den = QScalar(1) - qpow(e[t] + e[s]);
            if (den.is_zero())
                throw std::domain_error("exponent pole e(s)+e(t)=0 on W(" + delta.str() +
                                        "," + nu.str() + ")");
            h[t][s] = c / den;
        }
        rhs[t] = qq / (QScalar(1) - qpow(e[t] + e[t])) - rinv;
    }
    std::vector<QScalar> d = solve_qlinear(std::move(h), std::move(rhs));
    QScalar sum;
    for (const auto& x : d) sum += x;
    if (!(sum == QScalar(1)))
        throw std::logic_error("defining system yields trace != 1 on W(" + delta.str() +
                               "," + nu.str() + ")");
    return d;
}

EValueReport check_e_values(long long bound) {
    EValueReport rep;
    rep.bound = bound;
    for (long long v1 = 0; v1 <= bound; ++v1)
        for (long long v2 = 0; v2 <= v1; ++v2) {
            Weight delta(v1, v2, -v1 - v2);
            std::set<Weight> targets;
            for (Weight mu : tensor_with_v(delta))
                for (Weight nu : tensor_with_v(mu)) targets.insert(nu);
            for (Weight nu : targets) {
                if (nu == delta) {
                    ++rep.skipped_equal;
                    continue;
                }
                auto mids = two_step_support(delta, nu);
                if (mids.size() < 2) {
                    ++rep.skipped_single;
                    continue;
                }
                ++rep.blocks_checked;
                Exponents ex = exponents(delta, nu);
                for (std::size_t i = 0; i < mids.size(); ++i)
                    if (ex.e[i] == HalfInt(1) || ex.e[i] == HalfInt(-1))
                        rep.violations.push_back({delta, nu, mids[i], ex.e[i]});
            }
        }
    return rep;
}

CIdentityReport verify_c_identities(Weight lambda, Weight beta1, Weight beta2) {
    CIdentityReport rep;
    rep.lambda = lambda;
    Weight beta = beta1 + beta2;
    rep.nu = lambda + beta;
    if (!is_short_root(beta1) || !is_short_root(beta2) || !is_short_root(beta))
        throw std::invalid_argument("step weights must be short roots with a short sum");
    if (!lambda.is_dominant() || !rep.nu.is_dominant()) return rep;

    auto mids = two_step_support(lambda, rep.nu);
    rep.middle_count = (long long)mids.size();
    if (rep.middle_count != 4 || block_spectrum(lambda, rep.nu).mult_of(lambda1()) != 1)
        return rep;
    rep.applicable = true;

    Exponents ex = exponents(lambda, rep.nu);
    HalfInt esum(0);
    for (HalfInt x : ex.e) esum += x;
    rep.sum_e_six = esum == HalfInt(6);

    auto fail = [&rep](const std::string& name, const QScalar& lhs, const QScalar& rhs) {
        if (rep.detail.empty())
            rep.detail = name + ": " + lhs.str() + "  !=  " + rhs.str();
    };

    std::vector<QScalar> d = diag_entries(lambda, rep.nu);
    QScalar dsum;
    for (const auto& x : d) dsum += x;
    rep.sum_d_one = dsum == QScalar(1);
    if (!rep.sum_d_one) fail("sum d", dsum, QScalar(1));

    const QScalar lead = seven_minus_one();
    QScalar lhs_e, rhs_e;
    for (std::size_t t = 0; t < d.size(); ++t) {
        lhs_e += qpow(ex.e[t]) * d[t];
        rhs_e += bracket(ex.e[t]);
    }
    lhs_e *= lead;
    rhs_e *= qpow(7);
    rep.e_weighted = lhs_e == rhs_e;
    if (!rep.e_weighted) fail("e-weighted sum", lhs_e, rhs_e);

    QScalar ftrace;
    for (std::size_t t = 0; t < d.size(); ++t) ftrace += qpow(ex.f[t]) * d[t];
    QScalar lhs_f = lead * ftrace;
    QScalar rhs_f = c_lambda_nu(lambda, beta1, beta2);
    rep.f_weighted = lhs_f == rhs_f;
    if (!rep.f_weighted) fail("f-weighted sum", lhs_f, rhs_f);

    // diagonal of P T P is d_s * (sum_t q^{f(t)} d_t) in every gauge with
    // p_{st} p_{ts} = d_s d_t
    rep.ptp_diagonal = true;
    for (std::size_t s = 0; s < d.size(); ++s) {
        QScalar lhs_p = lead * d[s] * ftrace, rhs_p = rhs_f * d[s];
        if (!(lhs_p == rhs_p)) {
            rep.ptp_diagonal = false;
            fail("PTP diagonal", lhs_p, rhs_p);
            break;
        }
    }
    return rep;
}

} // namespace g2cent
