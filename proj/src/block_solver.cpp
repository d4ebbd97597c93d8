#include "g2cent/block_solver.hpp"

#include "g2cent/bratteli.hpp"
#include "g2cent/weight_system.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

namespace g2cent {

namespace {

Real sqrt_abs(const Real& x) { return sqrt(abs(x)); }

int sign_of(const Real& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

Real qpow_at(const Real& s, HalfInt e) { return pow_int(s, e.twice()); }

Mat outer(const std::vector<Real>& v, const std::vector<Real>& w) {
    Mat p((long long)v.size(), (long long)w.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = 0; j < w.size(); ++j) p(i, j) = v[i] * w[j];
    return p;
}

std::vector<Real> mat_vec(const Mat& a, const std::vector<Real>& x) {
    std::vector<Real> y(a.rows(), Real(0));
    for (long long i = 0; i < a.rows(); ++i)
        for (long long j = 0; j < a.cols(); ++j) y[i] += a(i, j) * x[j];
    return y;
}

std::vector<Real> vec_mat(const std::vector<Real>& x, const Mat& a) {
    std::vector<Real> y(a.cols(), Real(0));
    for (long long j = 0; j < a.cols(); ++j)
        for (long long i = 0; i < a.rows(); ++i) y[j] += x[i] * a(i, j);
    return y;
}

Real trace(const Mat& a) {
    Real t(0);
    for (long long i = 0; i < a.rows(); ++i) t += a(i, i);
    return t;
}

} // namespace

std::vector<std::pair<int, int>> pole_pairs_of(const std::vector<HalfInt>& e) {
    std::vector<std::pair<int, int>> poles;
    for (int s = 0; s < (int)e.size(); ++s)
        for (int t = 0; t < (int)e.size(); ++t)
            if ((e[s] + e[t]) == HalfInt(0)) poles.push_back({s, t});
    return poles;
}

Mat assemble_entries(const std::vector<HalfInt>& e, const Mat& m,
                     const std::vector<std::pair<int, int>>& pole_pairs,
                     const std::vector<Real>& poles, const NumericContext& ctx) {
    const long long n = (long long)e.size();
    const Real s = s_real(ctx), one(1);
    Mat a(n, n);
    for (long long i = 0; i < n; ++i)
        for (long long j = 0; j < n; ++j) {
            HalfInt sum = e[i] + e[j];
            if (sum == HalfInt(0)) {
                auto it = std::find(pole_pairs.begin(), pole_pairs.end(),
                                    std::make_pair((int)i, (int)j));
                if (it == pole_pairs.end())
                    throw std::logic_error("pole entry without an unknown");
                a(i, j) = poles[it - pole_pairs.begin()];
            } else {
                a(i, j) = m(i, j) / (one - qpow_at(s, sum));
            }
        }
    return a;
}

Mat rank1_from_diag(const std::vector<Real>& d) {
    std::vector<Real> v, w;
    for (const Real& x : d) {
        v.push_back(sqrt_abs(x));
        w.push_back(sign_of(x) * sqrt_abs(x));
    }
    return outer(v, w);
}

Mat build_Q(Weight delta, const NumericContext& ctx) {
    const Real s = s_real(ctx);
    std::vector<Real> qd;
    for (Weight mu : tensor_with_v(delta)) qd.push_back(eval_laurent(quantum_dim(mu), s));
    const Real denom =
        eval_laurent(quantum_dim(delta), s) * eval_laurent(quantum_dim(lambda1()), s);
    std::vector<Real> u;
    for (const Real& x : qd) u.push_back(sqrt(x / denom));
    return outer(u, u);
}

namespace {

struct SolveState {
    const BlockSolveProblem* p;
    const NumericContext* ctx;
    Real qq, c, c0, rinv, q13;            // scalar constants at the context point
    long long n;
    Mat denom;                            // 1 - q^{e(i)+e(j)}; zero at pole pairs
    std::vector<Real> se;                 // s^{e(t)}
    bool xmode = false;                   // rank-one parametrization (see below)
    std::vector<std::pair<int, int>> pole_uppers;

    // Default parametrization: the unknowns are the entries of the
    // entry-relation numerator
    //   M := (q - q^{-1}) I - C P - C0 u u^T  with  a_{ij} = m_{ij} / (1 - q^{e_i+e_j}),
    // except at pole pairs e(i)+e(j) = 0, where m vanishes and the unknown is
    // a_{ij} itself. Since |e_i + e_j| >= 2 off the poles, both A and the
    // candidate projection G := [(q - q^{-1}) I - M~ - C0 u u^T] / C are
    // well-conditioned functions of the unknown vector. Symmetric blocks
    // store the upper triangle only.
    //
    // Rank-one parametrization (xmode): in the orthogonal gauge the braid
    // projection is positive semidefinite, P = x x^T, so the unknowns shrink
    // to the generating vector x plus one value per upper pole pair. The
    // entry relation, symmetry, and idempotency of P then hold by
    // construction, which removes every spurious stationary point the wider
    // parametrizations kept running into.
    std::size_t unknown_count() const {
        if (xmode) return (std::size_t)n + pole_uppers.size();
        return p->symmetric ? (std::size_t)(n * (n + 1) / 2) : (std::size_t)(n * n);
    }

    bool is_pole(long long i, long long j) const { return denom(i, j) == 0; }

    Mat matrix_of(const std::vector<Real>& z) const {
        Mat a(n, n);
        std::size_t k = 0;
        if (xmode) {
            for (long long i = 0; i < n; ++i)
                for (long long j = 0; j < n; ++j) {
                    if (is_pole(i, j)) continue;
                    Real m = -c * z[i] * z[j];
                    if (!p->u.empty()) m -= c0 * p->u[i] * p->u[j];
                    if (i == j) m += qq;
                    a(i, j) = m / denom(i, j);
                }
            for (std::size_t t = 0; t < pole_uppers.size(); ++t) {
                a(pole_uppers[t].first, pole_uppers[t].second) = z[n + t];
                a(pole_uppers[t].second, pole_uppers[t].first) = z[n + t];
            }
            return a;
        }
        if (p->symmetric) {
            for (long long i = 0; i < n; ++i)
                for (long long j = i; j < n; ++j) {
                    a(i, j) = is_pole(i, j) ? z[k] : z[k] / denom(i, j);
                    a(j, i) = a(i, j);
                    ++k;
                }
        } else {
            for (long long i = 0; i < n; ++i)
                for (long long j = 0; j < n; ++j) {
                    a(i, j) = is_pole(i, j) ? z[k] : z[k] / denom(i, j);
                    ++k;
                }
        }
        return a;
    }

    std::vector<Real> pack(const Mat& a) const {
        std::vector<Real> z;
        if (p->symmetric) {
            for (long long i = 0; i < n; ++i)
                for (long long j = i; j < n; ++j) {
                    Real v = (a(i, j) + a(j, i)) / 2;
                    z.push_back(is_pole(i, j) ? v : v * denom(i, j));
                }
        } else {
            for (long long i = 0; i < n; ++i)
                for (long long j = 0; j < n; ++j)
                    z.push_back(is_pole(i, j) ? a(i, j) : a(i, j) * denom(i, j));
        }
        return z;
    }

    // C * G: affine in the unknowns with O(1) coefficients
    Mat cg_of(const std::vector<Real>& z) const {
        Mat g(n, n);
        std::size_t k = 0;
        if (p->symmetric) {
            for (long long i = 0; i < n; ++i)
                for (long long j = i; j < n; ++j) {
                    g(i, j) = is_pole(i, j) ? Real(0) : -z[k];
                    g(j, i) = g(i, j);
                    ++k;
                }
        } else {
            for (long long i = 0; i < n; ++i)
                for (long long j = 0; j < n; ++j) {
                    g(i, j) = is_pole(i, j) ? Real(0) : -z[k];
                    ++k;
                }
        }
        for (long long i = 0; i < n; ++i) g(i, i) += qq;
        if (!p->u.empty())
            for (long long i = 0; i < n; ++i)
                for (long long j = 0; j < n; ++j) g(i, j) -= c0 * p->u[i] * p->u[j];
        return g;
    }

    std::vector<Real> residuals(const std::vector<Real>& z) const {
        Mat a = matrix_of(z);
        std::vector<Real> f;
        if (!p->u.empty()) {
            auto au = mat_vec(a, p->u);
            for (long long i = 0; i < n; ++i) f.push_back(au[i] - q13 * p->u[i]);
            if (!p->symmetric) {
                auto ua = vec_mat(p->u, a);
                for (long long i = 0; i < n; ++i) f.push_back(ua[i] - q13 * p->u[i]);
            }
        }
        // the loop-exchange relation in balanced form: with S = diag(s^{e_t}),
        // B = S A S must be an involution; B is a bounded function of the
        // unknowns, which keeps this group well-scaled
        Mat b(n, n);
        for (long long i = 0; i < n; ++i)
            for (long long j = 0; j < n; ++j) b(i, j) = se[i] * se[j] * a(i, j);
        Mat bb = b * b;
        for (long long i = 0; i < n; ++i) bb(i, i) -= 1;
        for (long long i = 0; i < n; ++i)
            for (long long j = 0; j < n; ++j) f.push_back(bb(i, j));
        if (!p->has_p) {
            // no L1 channel: the entry-relation numerator must vanish
            Mat cg = cg_of(z);
            for (long long i = 0; i < n; ++i)
                for (long long j = 0; j < n; ++j) f.push_back(cg(i, j));
        }
        // minimal polynomial and moment constraints pin the rest of the
        // spectrum; normalized so every residual group carries equal weight
        Mat poly = Mat::identity(n);
        Real scale(1);
        for (const Real& ev : p->eigenvalues) {
            Mat shift = a;
            for (long long i = 0; i < n; ++i) shift(i, i) -= ev;
            poly = poly * shift;
            Real s1 = a.max_abs() + abs(ev);
            scale *= (s1 > 1 ? s1 : Real(1));
        }
        for (long long i = 0; i < n; ++i)
            for (long long j = 0; j < n; ++j) f.push_back(poly(i, j) / scale);
        Mat apow = a;
        Real mscale = a.max_abs();
        if (mscale < 1) mscale = 1;
        for (int k = 1; k <= 3; ++k) {
            Real want(0);
            for (std::size_t ch = 0; ch < p->eigenvalues.size(); ++ch)
                want += Real(p->mults[ch]) * pow_int(p->eigenvalues[ch], k);
            f.push_back((trace(apow) - want) / (Real(n) * pow_int(mscale, k - 1)));
            if (k < 3) apow = apow * a;
        }
        if (xmode) {
            // the numerator must vanish at pole pairs, and x must be a unit
            // vector for P = x x^T to be idempotent
            for (const auto& pr : pole_uppers) {
                Real m = c * z[pr.first] * z[pr.second];
                if (!p->u.empty()) m += c0 * p->u[pr.first] * p->u[pr.second];
                f.push_back(m);
            }
            Real nrm(0);
            for (long long i = 0; i < n; ++i) nrm += z[i] * z[i];
            f.push_back(nrm - 1);
        }
        return f;
    }
};

Real max_norm(const std::vector<Real>& f) {
    Real m(0);
    for (const Real& x : f)
        if (abs(x) > m) m = abs(x);
    return m;
}

Real norm2(const std::vector<Real>& f) {
    Real m(0);
    for (const Real& x : f) m += x * x;
    return sqrt(m);
}

// Levenberg-Marquardt descent on the residual stack from a single seed.
// Returns the achieved max-norm; z is updated in place.
Real descend(const SolveState& st, std::vector<Real>& z, const Real& tol,
             long long& iterations, long long maxit) {
    const Real h = pow_int(Real(10), -(long long)precision_digits() / 3);
    std::vector<Real> f = st.residuals(z);
    Real f2 = norm2(f);
    Real lambda = Real(1) / 1000;
    for (long long it = 0; it < maxit; ++it, ++iterations) {
        if (max_norm(f) <= tol) break;
        const std::size_t rows = f.size(), cols = z.size();
        Mat jac(rows, cols);
        for (std::size_t col = 0; col < cols; ++col) {
            std::vector<Real> zp = z, zm = z;
            zp[col] += h;
            zm[col] -= h;
            auto fp = st.residuals(zp), fm = st.residuals(zm);
            for (std::size_t row = 0; row < rows; ++row)
                jac(row, col) = (fp[row] - fm[row]) / (2 * h);
        }
        bool accepted = false;
        for (int tries = 0; tries < 60 && !accepted; ++tries) {
            Mat aug(rows + cols, cols);
            std::vector<Real> rhs(rows + cols, Real(0));
            for (std::size_t r = 0; r < rows; ++r) {
                for (std::size_t c = 0; c < cols; ++c) aug(r, c) = jac(r, c);
                rhs[r] = -f[r];
            }
            Real damp = sqrt(lambda);
            for (std::size_t c = 0; c < cols; ++c) aug(rows + c, c) = damp;
            std::vector<Real> step = least_squares(aug, rhs);
            std::vector<Real> znew = z;
            for (std::size_t i = 0; i < cols; ++i) znew[i] += step[i];
            std::vector<Real> fnew = st.residuals(znew);
            Real n2 = norm2(fnew);
            if (n2 < f2) {
                z = znew;
                f = fnew;
                f2 = n2;
                lambda /= 3;
                if (lambda < pow_int(Real(10), -30)) lambda = pow_int(Real(10), -30);
                accepted = true;
            } else {
                lambda *= 10;
                if (lambda > pow_int(Real(10), 30)) break;
            }
        }
        if (!accepted) break;
    }
    return max_norm(f);
}

} // namespace

SolverResult solve_block(const BlockSolveProblem& problem, const NumericContext& ctx) {
    set_precision_digits(ctx.digits);
    SolveState st;
    st.p = &problem;
    st.ctx = &ctx;
    st.n = (long long)problem.e.size();
    const Real s = s_real(ctx);
    st.qq = qpow_at(s, HalfInt(1)) - qpow_at(s, HalfInt(-1));
    st.c = eval(braid_coupling(), ctx);
    st.c0 = eval(trivial_coupling(), ctx);
    st.rinv = -qpow_at(s, HalfInt(-7));
    st.q13 = qpow_at(s, HalfInt(-13));
    st.denom = Mat(st.n, st.n);
    for (long long i = 0; i < st.n; ++i)
        for (long long j = 0; j < st.n; ++j) {
            HalfInt sum = problem.e[i] + problem.e[j];
            if (!(sum == HalfInt(0)))
                st.denom(i, j) = Real(1) - qpow_at(s, sum);
        }
    for (HalfInt h : problem.e) st.se.push_back(pow_int(s, h.integer()));
    const auto poles = pole_pairs_of(problem.e);

    // seed matrix: entry-relation assembly from a trial projection diagonal,
    // with any pole entries started at zero
    auto seeded = [&](const std::vector<Real>& d) {
        Mat m(st.n, st.n);
        for (long long i = 0; i < st.n; ++i) m(i, i) = st.qq;
        if (!d.empty()) {
            Mat p0 = rank1_from_diag(d);
            m -= p0.scaled(st.c);
        }
        if (!problem.u.empty())
            for (long long i = 0; i < st.n; ++i)
                for (long long j = 0; j < st.n; ++j)
                    m(i, j) -= st.c0 * problem.u[i] * problem.u[j];
        Mat a = assemble_entries(problem.e, m, poles,
                                 std::vector<Real>(poles.size(), Real(0)), ctx);
        return st.pack(a);
    };

    SolverResult out;
    if (!problem.has_p && poles.empty()) {  // nothing to solve: assemble, measure
        std::vector<Real> z = seeded({});
        out.A = st.matrix_of(z);
        out.P = Mat(st.n, st.n);
        out.residual = max_norm(st.residuals(z));
        return out;
    }

    if (problem.has_p && (long long)problem.d_init.size() != st.n)
        throw std::invalid_argument("initial diagonal has wrong length");

    const Real tol = pow_int(Real(10), -(long long)ctx.digits + 15);
    long long it = 0;

    if (problem.symmetric && problem.has_p) {
        // rank-one parametrization; magnitudes are seeded from the supplied
        // diagonal (then flat as a fallback) and the component signs are
        // enumerated deterministically, fewest flips first
        st.xmode = true;
        for (int i = 0; i < (int)st.n; ++i)
            for (int j = i + 1; j < (int)st.n; ++j)
                if (problem.e[i] + problem.e[j] == HalfInt(0))
                    st.pole_uppers.push_back({i, j});
        std::vector<std::vector<Real>> bases;
        {
            std::vector<Real> mag;
            Real total(0);
            for (const Real& d : problem.d_init) total += abs(d);
            if (total == 0) total = 1;
            for (const Real& d : problem.d_init) mag.push_back(sqrt(abs(d) / total));
            bases.push_back(mag);
            bases.push_back(std::vector<Real>(st.n, 1 / sqrt(Real(st.n))));
        }
        std::vector<unsigned long long> patterns;
        for (unsigned long long pat = 0; pat < (1ULL << (st.n - 1)); ++pat)
            patterns.push_back(pat);
        std::sort(patterns.begin(), patterns.end(),
                  [](unsigned long long a, unsigned long long b) {
                      int ca = std::popcount(a), cb = std::popcount(b);
                      return ca != cb ? ca < cb : a < b;
                  });
        Real best(-1);
        for (const auto& base : bases)
            for (unsigned long long pat : patterns) {
                std::vector<Real> z;
                for (long long i = 0; i < st.n; ++i) {
                    Real x = base[i];
                    if (i > 0 && ((pat >> (i - 1)) & 1)) x = -x;
                    z.push_back(x);
                }
                z.resize(st.n + st.pole_uppers.size(), Real(0));
                Real got = descend(st, z, tol, it, 150);
                if (got <= tol) {
                    out.A = st.matrix_of(z);
                    std::vector<Real> x(z.begin(), z.begin() + st.n);
                    out.P = outer(x, x);
                    out.residual = got;
                    out.iterations = it;
                    return out;
                }
                if (best < 0 || got < best) best = got;
            }
        std::ostringstream os;
        os << "block solve stalled at residual " << best.str(6) << " after " << it
           << " iterations";
        throw std::runtime_error(os.str());
    }

    // entry-numerator parametrization with deterministic seeds: the supplied
    // diagonal first, then a flat diagonal, then the flat diagonal with the
    // head negated
    std::vector<std::vector<Real>> seeds;
    if (problem.has_p) {
        seeds.push_back(problem.d_init);
        seeds.push_back(std::vector<Real>(st.n, Real(1) / Real(st.n)));
        std::vector<Real> mixed(st.n, Real(1) / Real(st.n));
        mixed[0] = -mixed[0];
        seeds.push_back(mixed);
    } else {
        seeds.push_back({});
    }

    std::vector<Real> z;
    Real fnorm(0);
    bool solved = false;
    for (const auto& seed : seeds) {
        z = seeded(seed);
        fnorm = descend(st, z, tol, it, 400);
        if (fnorm <= tol) {
            solved = true;
            break;
        }
    }
    if (!solved) {
        std::ostringstream os;
        os << "block solve stalled at residual " << fnorm.str(6)
           << " after " << it << " iterations";
        throw std::runtime_error(os.str());
    }

    out.A = st.matrix_of(z);
    out.P = problem.has_p ? st.cg_of(z).scaled(1 / st.c) : Mat(st.n, st.n);
    out.residual = fnorm;
    out.iterations = it;
    return out;
}

namespace {

// pole pairs excluded; used only to seed the iterative solve
std::vector<Real> initial_diag(const std::vector<HalfInt>& e, const NumericContext& ctx) {
    const long long n = (long long)e.size();
    const Real s = s_real(ctx), one(1);
    const Real qq = qpow_at(s, HalfInt(1)) - qpow_at(s, HalfInt(-1));
    const Real c = eval(braid_coupling(), ctx);
    const Real rinv = -qpow_at(s, HalfInt(-7));
    Mat lhs(n, n);
    std::vector<Real> rhs(n, Real(0));
    for (long long t = 0; t < n; ++t) {
        for (long long u = 0; u < n; ++u)
            if (!(e[t] + e[u] == HalfInt(0)))
                lhs(t, u) = c / (one - qpow_at(s, e[t] + e[u]));
        Real htt = (e[t] + e[t] == HalfInt(0))
                       ? Real(0)
                       : one / (one - qpow_at(s, e[t] + e[t]));
        rhs[t] = qq * htt - rinv;
    }
    try {
        return solve_linear(lhs, rhs);
    } catch (const std::exception&) {
        return std::vector<Real>(n, Real(1) / Real(n));
    }
}

Real spectrum_residual(const Mat& a, const BlockSpectrum& sp, const NumericContext& ctx) {
    const long long n = a.rows();
    Mat poly = Mat::identity(n);
    Real scale(1);
    for (const auto& ch : sp.channels) {
        Mat shift = a;
        Real ev = eval(ch.eigenvalue, ctx);
        for (long long i = 0; i < n; ++i) shift(i, i) -= ev;
        poly = poly * shift;
        Real m = a.max_abs() + abs(ev);
        scale *= (m > 1 ? m : Real(1));
    }
    Real worst = poly.max_abs() / scale;
    Mat apow = a;
    for (int k = 1; k <= 3; ++k) {
        Real want(0);
        for (const auto& ch : sp.channels)
            want += Real(ch.mult) * pow_int(eval(ch.eigenvalue, ctx), k);
        Real diff = abs(trace(apow) - want) / Real(n);
        if (diff > worst) worst = diff;
        if (k < 3) apow = apow * a;
    }
    return worst;
}

Real tata_residual(const Block& b, const NumericContext& ctx) {
    Mat tata = b.T * b.A * b.T * b.A;
    Real scalar = eval(tata_scalar(b.delta, b.nu), ctx);
    for (long long i = 0; i < tata.rows(); ++i) tata(i, i) -= scalar;
    return tata.max_abs() / abs(scalar);
}

} // namespace

Block build_block(Weight delta, Weight nu, const NumericContext& ctx) {
    set_precision_digits(ctx.digits);
    Block b;
    b.delta = delta;
    b.nu = nu;
    b.middles = two_step_support(delta, nu);
    if (b.middles.empty()) return b;

    Exponents ex = exponents(delta, nu);
    b.e = ex.e;
    b.f = ex.f;
    b.spectrum = block_spectrum(delta, nu);
    const long long n = b.size();
    const Real s = s_real(ctx), one(1);

    b.T = Mat(n, n);
    for (long long i = 0; i < n; ++i) b.T(i, i) = pow_int(s, 2 * b.f[i]);

    const bool with_l1 = b.spectrum.has(lambda1());
    if (n == 1) {
        b.A = Mat(1, 1);
        b.A(0, 0) = eval(b.spectrum.channels.front().eigenvalue, ctx);
        b.P = Mat(1, 1);
        if (with_l1) {
            b.d = {QScalar(1)};
            b.P(0, 0) = one;
        }
        if (delta == nu) {
            b.Q = Mat(1, 1);
            b.Q(0, 0) = one;
        }
        b.backend = "exact-closed-form";
    } else if (delta == nu) {
        b.Q = build_Q(delta, ctx);
        BlockSolveProblem prob;
        prob.e = b.e;
        prob.has_p = with_l1;
        prob.symmetric = true;          // the trivial-channel gauge is orthogonal
        for (long long i = 0; i < n; ++i) prob.u.push_back(sqrt(b.Q(i, i)));
        if (with_l1) prob.d_init = initial_diag(b.e, ctx);
        for (const auto& ch : b.spectrum.channels) {
            prob.eigenvalues.push_back(eval(ch.eigenvalue, ctx));
            prob.mults.push_back(ch.mult);
        }
        SolverResult res = solve_block(prob, ctx);
        b.A = res.A;
        b.P = res.P;
        b.solver_residual = res.residual;
        b.backend = "numeric-solver";
    } else if (with_l1) {
        if (pole_pairs_of(b.e).empty()) {
            try {
                b.d = diag_entries(delta, nu);
            } catch (const ClosedFormInapplicable&) {
                b.d = diag_entries_linear(delta, nu);
            }
            std::vector<Real> dnum;
            for (const auto& x : b.d) dnum.push_back(eval(x, ctx));
            b.P = rank1_from_diag(dnum);
            Mat m(n, n);
            const Real c = eval(braid_coupling(), ctx);
            const Real qq = pow_int(s, 2) - pow_int(s, -2);
            for (long long i = 0; i < n; ++i)
                for (long long j = 0; j < n; ++j)
                    m(i, j) = (i == j ? qq : Real(0)) - c * b.P(i, j);
            b.A = assemble_entries(b.e, m, {}, {}, ctx);
            b.backend = "exact-closed-form";
        } else {
            // exponent poles force the iterative route even without a
            // trivial channel
            BlockSolveProblem prob;
            prob.e = b.e;
            prob.has_p = true;
            prob.d_init = initial_diag(b.e, ctx);
            for (const auto& ch : b.spectrum.channels) {
                prob.eigenvalues.push_back(eval(ch.eigenvalue, ctx));
                prob.mults.push_back(ch.mult);
            }
            SolverResult res = solve_block(prob, ctx);
            b.A = res.A;
            b.P = res.P;
            b.solver_residual = res.residual;
            b.backend = "numeric-solver";
        }
    } else {
        if (n != 2 || !(b.e[0] + b.e[1] == HalfInt(0)))
            throw std::logic_error("unexpected block shape on W(" + delta.str() + "," +
                                   nu.str() + ")");
        std::vector<QScalar> g;
        for (HalfInt ei : b.e)
            g.push_back((qpow(1) - qpow(2 * ei - 1)) /
                        ((QScalar(1) - qpow(2 * ei)) * (qpow(1) + qpow(-1))));
        if (!(g[0] + g[1] == QScalar(1)))
            throw std::logic_error("q-eigenprojection diagonal does not sum to 1");
        std::vector<Real> gnum = {eval(g[0], ctx), eval(g[1], ctx)};
        Mat pq = rank1_from_diag(gnum);
        const Real qv = pow_int(s, 2);
        b.A = pq.scaled(qv + 1 / qv);
        for (long long i = 0; i < n; ++i) b.A(i, i) -= 1 / qv;
        b.P = Mat(n, n);
        b.backend = "exact-closed-form";
    }

    Real verify = spectrum_residual(b.A, b.spectrum, ctx);
    Real tata = tata_residual(b, ctx);
    if (tata > verify) verify = tata;
    if (verify > b.solver_residual) b.solver_residual = verify;
    Real gate = Real(1) / pow_int(Real(10), 10);
    if (b.solver_residual > gate)
        throw std::runtime_error("block construction failed verification on W(" +
                                 delta.str() + "," + nu.str() + "): residual " +
                                 b.solver_residual.str(6));
    return b;
}

} // namespace g2cent
