#include "g2cent/rep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <type_traits>
#include <utility>

namespace g2cent {

namespace {

// Paths acted on together by one braid generator agree everywhere except at
// its position; the group key is the path with that position removed.
Path erased(const Path& p, long long pos) {
    Path r = p;
    r.erase(r.begin() + pos);
    return r;
}

long long middle_index(const std::vector<Weight>& middles, Weight mu) {
    auto it = std::lower_bound(middles.begin(), middles.end(), mu);
    if (it == middles.end() || !(*it == mu))
        throw std::logic_error("path middle " + mu.str() + " missing from its block");
    return it - middles.begin();
}

using Groups = std::map<Path, std::vector<std::pair<std::size_t, Weight>>>;

Groups group_paths(const std::vector<Path>& list, long long pos) {
    Groups g;
    for (std::size_t j = 0; j < list.size(); ++j)
        g[erased(list[j], pos)].push_back({j, list[j][pos]});
    return g;
}

const Block& block_for(RepBundle& b, Weight delta, Weight nu) {
    auto key = std::make_pair(delta, nu);
    auto it = b.blocks.find(key);
    if (it != b.blocks.end()) return it->second;
    try {
        return b.blocks.emplace(key, build_block(delta, nu, b.ctx)).first->second;
    } catch (const std::exception& ex) {
        throw std::runtime_error("W(" + delta.str() + "," + nu.str() +
                                 ") failed while assembling over lambda = " +
                                 b.lambda.str() + ": " + ex.what());
    }
}

// Largest entry of x - y against the larger of the two matrices (floor 1).
Real gap(const Mat& x, const Mat& y) {
    Real scale(1);
    if (x.max_abs() > scale) scale = x.max_abs();
    if (y.max_abs() > scale) scale = y.max_abs();
    return (x - y).max_abs() / scale;
}

void keep_max(Real& acc, const Real& v) {
    if (v > acc) acc = v;
}

template <class S>
S narrowed(const Real& x) {
    if constexpr (std::is_same_v<S, Real>)
        return x;
    else
        return x.convert_to<S>();
}

template <class S>
std::vector<S> flatten(const Mat& m) {
    std::vector<S> v;
    v.reserve(m.rows() * m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) v.push_back(narrowed<S>(m(i, j)));
    return v;
}

// Dense row-major copies in the span's scalar type, so the word closure
// multiplies in that type instead of in the long floats of the bundle.
template <class S>
using DenseS = std::vector<std::vector<S>>;

template <class S>
DenseS<S> to_dense(const Mat& m) {
    DenseS<S> d(m.rows(), std::vector<S>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) d[i][j] = narrowed<S>(m(i, j));
    return d;
}

template <class S>
std::vector<S> flatten_dense(const DenseS<S>& d) {
    std::vector<S> v;
    v.reserve(d.size() * (d.empty() ? 0 : d[0].size()));
    for (const auto& row : d) v.insert(v.end(), row.begin(), row.end());
    return v;
}

template <class S>
DenseS<S> matmul(const DenseS<S>& a, const DenseS<S>& b) {
    std::size_t n = a.size();
    std::size_t cols = b.empty() ? 0 : b[0].size();
    DenseS<S> c(n, std::vector<S>(cols, S(0)));
    for (std::size_t i = 0; i < n; ++i) {
        auto& crow = c[i];
        for (std::size_t l = 0; l < b.size(); ++l) {
            const S& ail = a[i][l];
            if (ail == S(0)) continue;
            const auto& brow = b[l];
            for (std::size_t j = 0; j < cols; ++j) crow[j] += ail * brow[j];
        }
    }
    return c;
}

template <class S>
S norm2(const std::vector<S>& v) {
    S s(0);
    for (const auto& x : v) s += x * x;
    using std::sqrt;
    return sqrt(s);
}

/**
 * Orthonormal basis of a growing subspace of vectorized matrices. Rank
 * decisions compare the residual after two Gram-Schmidt passes against the
 * relative tolerance; a residual within a factor 10 of the threshold marks
 * the whole computation ambiguous. The scalar type is a knob: hardware
 * doubles decide ranks fast and leave five orders of magnitude between
 * their noise floor and the default threshold; extended precision with a
 * tighter threshold backs the escalation path.
 */
template <class S>
class SpanBasis {
public:
    explicit SpanBasis(double tol) : tol_(tol) {}

    std::size_t size() const { return basis_.size(); }
    bool ambiguous() const { return ambiguous_; }

    bool add_vec(std::vector<S> v) {
        S nrm = norm2(v);
        if (!(nrm > 0)) return false;
        for (auto& x : v) x /= nrm;
        project(v);
        project(v);
        S rest = norm2(v);
        S t(tol_);
        if (rest >= t / 10 && rest <= t * 10) ambiguous_ = true;
        if (!(rest > t)) return false;
        for (auto& x : v) x /= rest;
        basis_.push_back(std::move(v));
        return true;
    }

    /// Relative distance of m from the span; 0 for the zero matrix.
    S distance(const Mat& m) const {
        std::vector<S> v = flatten<S>(m);
        S nrm = norm2(v);
        if (!(nrm > 0)) return S(0);
        for (auto& x : v) x /= nrm;
        project(v);
        project(v);
        return norm2(v);
    }

private:
    void project(std::vector<S>& v) const {
        for (const auto& b : basis_) {
            S dot(0);
            for (std::size_t j = 0; j < v.size(); ++j) dot += b[j] * v[j];
            for (std::size_t j = 0; j < v.size(); ++j) v[j] -= dot * b[j];
        }
    }

    std::vector<std::vector<S>> basis_;
    double tol_;
    bool ambiguous_ = false;
};

// Multiplicative closure of the span of {I} and the generators, stopped at
// the structural bound dim^2 (the span cannot outgrow the matrix space).
template <class S>
SpanBasis<S> closed_span(const std::vector<Mat>& gens, std::size_t dim, double tol) {
    SpanBasis<S> basis(tol);
    const std::size_t full = dim * dim;
    std::vector<DenseS<S>> sgens;
    sgens.reserve(gens.size());
    for (const auto& g : gens) sgens.push_back(to_dense<S>(g));
    std::vector<DenseS<S>> frontier;
    auto feed = [&](DenseS<S> m) {
        if (basis.size() < full && basis.add_vec(flatten_dense(m)))
            frontier.push_back(std::move(m));
    };
    DenseS<S> id(dim, std::vector<S>(dim, S(0)));
    for (std::size_t i = 0; i < dim; ++i) id[i][i] = S(1);
    feed(std::move(id));
    for (const auto& g : sgens) feed(g);
    while (!frontier.empty() && basis.size() < full) {
        std::vector<DenseS<S>> batch = std::move(frontier);
        frontier.clear();
        for (const auto& m : batch) {
            for (const auto& g : sgens) {
                feed(matmul(g, m));
                feed(matmul(m, g));
            }
            if (basis.size() >= full) break;
        }
    }
    return basis;
}

/**
 * Rank of the generated family by column-pivoted Householder reduction.
 * Unlike the online span, no residual is ever renormalized, so the noise
 * floor stays at the arithmetic's epsilon times modest growth instead of
 * being amplified by small accepted directions; pivots are measured
 * against the first one and decay monotonically. Products to explore are
 * still chosen by the online span at explore_tol.
 */
template <class S>
std::pair<long long, bool> ranked_span(const std::vector<Mat>& gens, std::size_t dim,
                                       double explore_tol, double rank_tol) {
    const std::size_t len = dim * dim;
    std::vector<std::vector<S>> cols;    // every candidate, unit length
    {
        SpanBasis<S> online(explore_tol);
        std::vector<DenseS<S>> sgens;
        sgens.reserve(gens.size());
        for (const auto& g : gens) sgens.push_back(to_dense<S>(g));
        std::vector<DenseS<S>> frontier;
        auto feed = [&](DenseS<S> m) {
            std::vector<S> v = flatten_dense(m);
            S nrm = norm2(v);
            if (!(nrm > 0)) return;
            for (auto& x : v) x /= nrm;
            cols.push_back(v);
            if (online.size() < len && online.add_vec(std::move(v)))
                frontier.push_back(std::move(m));
        };
        DenseS<S> id(dim, std::vector<S>(dim, S(0)));
        for (std::size_t i = 0; i < dim; ++i) id[i][i] = S(1);
        feed(std::move(id));
        for (const auto& g : sgens) feed(g);
        while (!frontier.empty() && online.size() < len) {
            std::vector<DenseS<S>> batch = std::move(frontier);
            frontier.clear();
            for (const auto& m : batch) {
                for (const auto& g : sgens) {
                    feed(matmul(g, m));
                    feed(matmul(m, g));
                }
                if (online.size() >= len) break;
            }
        }
    }

    bool ambiguous = false;
    long long rank = 0;
    std::vector<std::size_t> order(cols.size());
    for (std::size_t c = 0; c < order.size(); ++c) order[c] = c;
    S first(0);
    using std::sqrt;
    for (std::size_t step = 0; step < std::min(len, cols.size()); ++step) {
        // residual norms recomputed exactly: downdating formulas would
        // drown the junk floor in accumulated drift
        std::size_t best = step;
        S best2(0);
        for (std::size_t c = step; c < order.size(); ++c) {
            const auto& col = cols[order[c]];
            S s2(0);
            for (std::size_t i = step; i < len; ++i) s2 += col[i] * col[i];
            if (s2 > best2) {
                best2 = s2;
                best = c;
            }
        }
        S pivot = sqrt(best2);
        if (step == 0) {
            if (!(pivot > 0)) break;
            first = pivot;
        }
        S rel = pivot / first;
        S t(rank_tol);
        if (rel >= t / 10 && rel <= t * 10) ambiguous = true;
        if (!(rel > t)) break;
        ++rank;
        std::swap(order[step], order[best]);
        const auto& pc = cols[order[step]];
        std::vector<S> h(pc.begin() + (long long)step, pc.end());
        S alpha = h[0] > 0 ? -pivot : pivot;
        h[0] -= alpha;
        S h2(0);
        for (const auto& x : h) h2 += x * x;
        if (!(h2 > 0)) continue;
        for (std::size_t c = step; c < order.size(); ++c) {
            auto& col = cols[order[c]];
            S dot(0);
            for (std::size_t i = step; i < len; ++i) dot += h[i - step] * col[i];
            S f = 2 * dot / h2;
            for (std::size_t i = step; i < len; ++i) col[i] -= f * h[i - step];
        }
    }
    return {rank, ambiguous};
}

std::vector<Mat> generators_on(const RepBundle& bundle, std::size_t k) {
    std::vector<Mat> gens;
    gens.push_back(bundle.T[k]);
    for (const auto& ai : bundle.A) gens.push_back(ai[k]);
    return gens;
}

void assemble_generators(RepBundle& b) {
    b.A.clear();
    if (b.n >= 2) b.A.assign(b.n - 1, {});
    for (long long i = 1; i + 1 <= b.n; ++i) {
        for (std::size_t k = 0; k < b.nus.size(); ++k) {
            const auto& list = b.paths[k];
            Mat a(list.size(), list.size());
            for (const auto& [key, members] : group_paths(list, i)) {
                const Block& blk = block_for(b, key[i - 1], key[i]);
                if ((long long)members.size() != blk.size())
                    throw std::logic_error("path grouping disagrees with W(" +
                                           key[i - 1].str() + "," + key[i].str() + ")");
                for (const auto& [sj, smu] : members) {
                    long long si = middle_index(blk.middles, smu);
                    for (const auto& [tj, tmu] : members)
                        a(sj, tj) = blk.A(si, middle_index(blk.middles, tmu));
                }
            }
            b.A[i - 1].push_back(std::move(a));
        }
    }
}

// ---------------------------------------------------------------------------
// Sign coherence. Each two-step block determines its middle-edge basis
// vectors only up to sign, and adjacent generators share those edges, so the
// braid relation can fail by signs alone even though every block is correct
// in isolation. The coherent choice is computed deterministically: each entry
// of A_i A_{i+1} A_i - A_{i+1} A_i A_{i+1} on a pair of paths that differ at
// both positions is a short signed sum of triple products of block entries
// whose magnitudes do not depend on the choice; whenever the sign patterns
// that make such a sum vanish all agree on the relative sign of two terms,
// that agreement is a linear condition over F_2 on the per-(block, middle)
// sign flips. The combined system is solved by elimination, free signs stay
// positive, and the flips are folded back into the blocks before the
// generators are reassembled. Safety: the true sign assignment always
// satisfies every recorded condition, so the pass can only repair gauge
// defects, never introduce them, and verify_relations reports the outcome
// either way.

using SignKey = std::pair<std::pair<Weight, Weight>, Weight>;

struct F2Row {
    std::vector<std::uint64_t> mask;
    int rhs = 0;

    int low() const {
        for (std::size_t w = 0; w < mask.size(); ++w)
            if (mask[w]) {
                unsigned long long m = mask[w];
                int bit = 0;
                while (!(m & 1)) { m >>= 1; ++bit; }
                return (int)(w * 64) + bit;
            }
        return -1;
    }
    void flip(int i) { mask[i / 64] ^= (std::uint64_t)1 << (i % 64); }
    void xor_with(const F2Row& o) {
        for (std::size_t w = 0; w < mask.size(); ++w) mask[w] ^= o.mask[w];
        rhs ^= o.rhs;
    }
};

std::map<SignKey, int> coherent_signs(const RepBundle& b) {
    std::map<SignKey, int> index;
    for (const auto& [key, blk] : b.blocks)
        if (blk.size() >= 2)
            for (const auto& m : blk.middles) index.emplace(SignKey{key, m}, (int)index.size());
    std::map<SignKey, int> sigma;
    if (index.empty() || b.n < 3) return sigma;
    const std::size_t words = (index.size() + 63) / 64;

    // sigma-monomial of one generator entry between paths u, w moving slot p
    auto entry_bits = [&](const Path& u, const Path& w, long long p, F2Row& row) {
        if (u[p] == w[p]) return;
        std::pair<Weight, Weight> key{u[p - 1], u[p + 1]};
        row.flip(index.at({key, u[p]}));
        row.flip(index.at({key, w[p]}));
    };

    std::vector<F2Row> rows;
    for (std::size_t k = 0; k < b.nus.size(); ++k) {
        const auto& list = b.paths[k];
        std::map<Path, std::size_t> at;
        for (std::size_t j = 0; j < list.size(); ++j) at.emplace(list[j], j);
        std::vector<std::vector<std::vector<double>>> gen(b.A.size());
        for (std::size_t g = 0; g < b.A.size(); ++g) {
            const Mat& m = b.A[g][k];
            gen[g].assign(m.rows(), std::vector<double>(m.cols()));
            for (std::size_t i = 0; i < m.rows(); ++i)
                for (std::size_t j = 0; j < m.cols(); ++j)
                    gen[g][i][j] = m(i, j).convert_to<double>();
        }
        for (std::size_t g = 0; g + 1 < b.A.size(); ++g) {
            const long long p = (long long)g + 1;     // path slot moved by A_{g+1}
            for (std::size_t ai = 0; ai < list.size(); ++ai) {
                for (std::size_t ci = ai + 1; ci < list.size(); ++ci) {
                    const Path &pa = list[ai], &pc = list[ci];
                    bool fits = pa[p] != pc[p] && pa[p + 1] != pc[p + 1];
                    for (long long j = 0; fits && j <= b.n; ++j)
                        if (j != p && j != p + 1 && !(pa[j] == pc[j])) fits = false;
                    if (!fits) continue;

                    std::vector<std::pair<double, F2Row>> terms;
                    auto add_term = [&](double v, const Path& x, const Path& y,
                                        long long first, long long second) {
                        if (v == 0.0) return;
                        F2Row r{std::vector<std::uint64_t>(words, 0), 0};
                        entry_bits(pa, x, first, r);
                        entry_bits(x, y, second, r);
                        entry_bits(y, pc, first, r);
                        terms.push_back({v, std::move(r)});
                    };
                    const Block& left = b.blocks.at({pa[p - 1], pa[p + 1]});
                    for (const Weight& xi : left.middles) {
                        Path x = pa;
                        x[p] = xi;
                        auto ix = at.find(x);
                        if (ix == at.end()) continue;
                        Path y = x;
                        y[p + 1] = pc[p + 1];
                        auto iy = at.find(y);
                        if (iy == at.end()) continue;
                        add_term(gen[g][ai][ix->second] * gen[g + 1][ix->second][iy->second] *
                                     gen[g][iy->second][ci],
                                 x, y, p, p + 1);
                    }
                    const Block& right = b.blocks.at({pa[p], pa[p + 2]});
                    for (const Weight& eta : right.middles) {
                        Path x = pa;
                        x[p + 1] = eta;
                        auto ix = at.find(x);
                        if (ix == at.end()) continue;
                        Path y = x;
                        y[p] = pc[p];
                        auto iy = at.find(y);
                        if (iy == at.end()) continue;
                        add_term(-gen[g + 1][ai][ix->second] * gen[g][ix->second][iy->second] *
                                     gen[g + 1][iy->second][ci],
                                 x, y, p + 1, p);
                    }

                    const std::size_t m = terms.size();
                    if (m == 0 || m > 16) continue;
                    double scale = 0;
                    for (const auto& [v, r] : terms) scale = std::max(scale, std::abs(v));
                    std::vector<std::uint32_t> zeroing;
                    for (std::uint32_t bits = 0; bits < (1u << (m - 1)); ++bits) {
                        double s = terms[0].first;
                        for (std::size_t j = 1; j < m; ++j)
                            s += (bits >> (j - 1)) & 1 ? -terms[j].first : terms[j].first;
                        if (std::abs(s) < 1e-9 * scale) zeroing.push_back(bits);
                    }
                    if (zeroing.empty()) continue;
                    for (std::size_t j = 1; j < m; ++j) {
                        bool forced = true;
                        const std::uint32_t want = (zeroing[0] >> (j - 1)) & 1;
                        for (std::uint32_t z : zeroing)
                            if (((z >> (j - 1)) & 1) != want) { forced = false; break; }
                        if (!forced) continue;
                        F2Row row = terms[0].second;
                        row.xor_with(terms[j].second);
                        row.rhs = (int)want;
                        rows.push_back(std::move(row));
                    }
                }
            }
        }
    }

    std::map<int, F2Row> pivots;
    for (auto& row : rows) {
        for (;;) {
            int lb = row.low();
            if (lb < 0) break;                         // consistent or duplicate
            auto it = pivots.find(lb);
            if (it == pivots.end()) {
                pivots.emplace(lb, std::move(row));
                break;
            }
            row.xor_with(it->second);
        }
    }
    std::vector<int> sol(index.size(), 0);
    for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
        const int lb = it->first;
        int s = it->second.rhs;
        for (int j = lb + 1; j < (int)index.size(); ++j)
            if (it->second.mask[j / 64] >> (j % 64) & 1) s ^= sol[j];
        sol[lb] = s;
    }
    for (const auto& [key, i] : index)
        if (sol[i]) sigma.emplace(key, -1);
    return sigma;
}

void apply_signs(RepBundle& b, const std::map<SignKey, int>& sigma) {
    for (auto& [key, blk] : b.blocks) {
        if (blk.size() < 2) continue;
        std::vector<Real> s;
        for (const auto& m : blk.middles) {
            auto it = sigma.find({key, m});
            s.push_back(Real(it == sigma.end() ? 1 : it->second));
        }
        auto conjugate = [&](Mat& m) {
            if ((long long)m.rows() != blk.size()) return;
            for (std::size_t i = 0; i < m.rows(); ++i)
                for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) *= s[i] * s[j];
        };
        conjugate(blk.A);
        conjugate(blk.P);
        conjugate(blk.Q);
    }
}

} // namespace

long long RepBundle::nu_index(Weight nu) const {
    auto it = std::lower_bound(nus.begin(), nus.end(), nu);
    if (it == nus.end() || !(*it == nu)) return -1;
    return it - nus.begin();
}

long long RepBundle::total_dim() const {
    long long t = 0;
    for (const auto& p : paths) t += (long long)p.size();
    return t;
}

RepBundle assemble(Weight lambda, long long n, const NumericContext& ctx) {
    if (!lambda.is_dominant() || n < 0)
        throw std::invalid_argument("assemble requires a dominant weight and n >= 0");
    RepBundle b;
    b.lambda = lambda;
    b.n = n;
    b.ctx = ctx;
    q_real(ctx);                                  // pins the working precision

    BratteliDiagram diagram = build_bratteli(lambda, n);
    for (const auto& [nu, mult] : diagram.levels[n]) {
        (void)mult;
        b.nus.push_back(nu);
        b.paths.push_back(enumerate_paths(lambda, n, nu));
    }

    for (const auto& list : b.paths) {
        Mat t(list.size(), list.size());
        for (std::size_t j = 0; j < list.size(); ++j)
            t(j, j) = n == 0 ? Real(1)
                             : eval(t_eigenvalue(lambda, list[j][1] - lambda), ctx);
        b.T.push_back(std::move(t));
    }

    assemble_generators(b);
    if (n >= 3) {
        std::map<SignKey, int> sigma = coherent_signs(b);
        if (!sigma.empty()) {
            apply_signs(b, sigma);
            assemble_generators(b);
        }
    }
    return b;
}

std::vector<Mat> last_two_projection(const RepBundle& bundle) {
    if (bundle.n < 2)
        throw std::invalid_argument("last_two_projection needs n >= 2");
    const long long pos = bundle.n - 1;
    std::vector<Mat> out;
    for (std::size_t k = 0; k < bundle.nus.size(); ++k) {
        const auto& list = bundle.paths[k];
        Mat qop(list.size(), list.size());
        for (const auto& [key, members] : group_paths(list, pos)) {
            if (!(key[pos - 1] == key[pos])) continue;    // off the return blocks
            const Block& blk = bundle.blocks.at({key[pos - 1], key[pos]});
            for (const auto& [sj, smu] : members) {
                long long si = middle_index(blk.middles, smu);
                for (const auto& [tj, tmu] : members)
                    qop(sj, tj) = blk.Q(si, middle_index(blk.middles, tmu));
            }
        }
        out.push_back(std::move(qop));
    }
    return out;
}

Real RelationReport::max() const {
    Real m = braid;
    keep_max(m, far_commute);
    keep_max(m, loop_braid);
    keep_max(m, loop_commute);
    keep_max(m, tata_scalar_blocks);
    keep_max(m, eigen_relation);
    return m;
}

RelationReport verify_relations(const RepBundle& bundle) {
    q_real(bundle.ctx);
    RelationReport r;
    const long long ng = (long long)bundle.A.size();
    for (std::size_t k = 0; k < bundle.nus.size(); ++k) {
        const Mat& t = bundle.T[k];
        for (long long i = 0; i + 1 < ng; ++i) {
            const Mat &x = bundle.A[i][k], &y = bundle.A[i + 1][k];
            keep_max(r.braid, gap(x * y * x, y * x * y));
        }
        for (long long i = 0; i < ng; ++i)
            for (long long j = i + 2; j < ng; ++j)
                keep_max(r.far_commute, gap(bundle.A[i][k] * bundle.A[j][k],
                                            bundle.A[j][k] * bundle.A[i][k]));
        if (ng >= 1) {
            const Mat& a1 = bundle.A[0][k];
            Mat tata = t * a1 * t * a1;
            keep_max(r.loop_braid, gap(tata, a1 * t * a1 * t));
            Mat target(a1.rows(), a1.cols());
            for (std::size_t j = 0; j < bundle.paths[k].size(); ++j)
                target(j, j) =
                    eval(tata_scalar(bundle.lambda, bundle.paths[k][j][2]), bundle.ctx);
            keep_max(r.tata_scalar_blocks, gap(tata, target));
        }
        for (long long i = 1; i < ng; ++i)
            keep_max(r.loop_commute, gap(t * bundle.A[i][k], bundle.A[i][k] * t));
        for (long long i = 0; i < ng; ++i) {
            std::set<Weight> kappas;
            for (const auto& p : bundle.paths[k]) {
                const Block& blk = bundle.blocks.at({p[i], p[i + 2]});
                for (const auto& ch : blk.spectrum.channels) kappas.insert(ch.kappa);
            }
            const Mat& a = bundle.A[i][k];
            Mat poly = Mat::identity(a.rows());
            Real scale(1);
            for (Weight kappa : kappas) {
                Real ev = eval(channel_eigenvalue(kappa), bundle.ctx);
                Mat shift = a;
                for (std::size_t jj = 0; jj < shift.rows(); ++jj) shift(jj, jj) -= ev;
                poly = poly * shift;
                Real f = a.max_abs() + abs(ev);
                if (f > Real(1)) scale *= f;
            }
            keep_max(r.eigen_relation, poly.max_abs() / scale);
        }
    }
    return r;
}

namespace {

// rank_tol > 0 switches the per-vertex rank from the online span to the
// pivoted reduction with that threshold
template <class S>
SurjectivityReport algebra_span(const RepBundle& bundle, double tol,
                                double rank_tol = 0) {
    q_real(bundle.ctx);
    SurjectivityReport rep;
    rep.lambda = bundle.lambda;
    rep.n = bundle.n;
    rep.q = bundle.ctx.q;
    rep.digits = bundle.ctx.digits;
    rep.tolerance = rank_tol > 0 ? rank_tol : tol;
    for (std::size_t k = 0; k < bundle.nus.size(); ++k) {
        SpanResult res;
        res.nu = bundle.nus[k];
        res.mult = bundle.dim(k);
        res.target = res.mult * res.mult;
        if (rank_tol > 0) {
            auto [achieved, amb] = ranked_span<S>(generators_on(bundle, k),
                                                  bundle.paths[k].size(), tol, rank_tol);
            res.achieved = achieved;
            res.ambiguous = amb;
        } else {
            SpanBasis<S> basis =
                closed_span<S>(generators_on(bundle, k), bundle.paths[k].size(), tol);
            res.achieved = (long long)basis.size();
            res.ambiguous = basis.ambiguous();
        }
        rep.per_nu.push_back(res);
        rep.total_target += res.target;
        rep.total_achieved += res.achieved;
        rep.ambiguous = rep.ambiguous || res.ambiguous;
    }
    return rep;
}

} // namespace

SurjectivityReport algebra_dimension(const RepBundle& bundle, double tol) {
    return algebra_span<double>(bundle, tol);
}

SurjectivityReport certify_surjectivity(Weight lambda, long long n, NumericContext ctx,
                                        double tol) {
    RepBundle bundle = assemble(lambda, n, ctx);
    SurjectivityReport rep = algebra_span<double>(bundle, tol);
    if (rep.ambiguous) {
        // A residual near the threshold may be a genuinely small direction
        // or amplified roundoff; the retry rebuilds at doubled working
        // precision and decides ranks by the pivoted reduction in extended
        // precision, whose noise floor sits far below the tightened
        // threshold while true directions stay far above it.
        ctx.digits *= 2;
        bundle = assemble(lambda, n, ctx);
        rep = algebra_span<long double>(bundle, tol, std::min(tol, 1e-12));
    }
    return rep;
}

bool OldPartReport::passed(double tol) const {
    if (ambiguous || !(q_membership <= Real(tol))) return false;
    for (const auto& r : closure)
        if (r.achieved != r.target || r.ambiguous) return false;
    return true;
}

OldPartReport old_part_check(const RepBundle& bundle, double tol) {
    if (bundle.n < 2) throw std::invalid_argument("old_part_check needs n >= 2");
    q_real(bundle.ctx);
    OldPartReport rep;
    rep.lambda = bundle.lambda;
    rep.n = bundle.n;
    rep.old_vertices = gradation(bundle.lambda, bundle.n).old_part;
    std::vector<Mat> qops = last_two_projection(bundle);

    // the projection must already lie in the algebra of the generators
    for (std::size_t k = 0; k < bundle.nus.size(); ++k) {
        if (!(qops[k].max_abs() > 0)) continue;
        SpanBasis<double> full =
            closed_span<double>(generators_on(bundle, k), bundle.paths[k].size(), tol);
        keep_max(rep.q_membership, Real(full.distance(qops[k])));
        rep.ambiguous = rep.ambiguous || full.ambiguous();
    }

    // dropping the last braid generator in favour of the projection still
    // generates everything over the vertices already present two levels down
    for (Weight nu : rep.old_vertices) {
        long long k = bundle.nu_index(nu);
        std::vector<Mat> gens;
        gens.push_back(bundle.T[k]);
        for (long long i = 0; i + 2 < bundle.n; ++i) gens.push_back(bundle.A[i][k]);
        gens.push_back(qops[k]);
        SpanBasis<double> basis = closed_span<double>(gens, bundle.paths[k].size(), tol);
        SpanResult res;
        res.nu = nu;
        res.mult = bundle.dim(k);
        res.target = res.mult * res.mult;
        res.achieved = (long long)basis.size();
        res.ambiguous = basis.ambiguous();
        rep.closure.push_back(res);
    }
    return rep;
}

} // namespace g2cent
