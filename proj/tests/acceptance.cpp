// End-to-end acceptance gate. Eight independent checks, one line each;
// exit status 0 only when every line passes. All tolerances are pinned
// here: exact means zero tolerance in the exact scalar field.

#include "g2cent/block.hpp"
#include "g2cent/block_solver.hpp"
#include "g2cent/bratteli.hpp"
#include "g2cent/rep.hpp"
#include "g2cent/weight_system.hpp"

#include <chrono>
#include <cstdio>
#include <map>
#include <set>
#include <string>
#include <vector>

using namespace g2cent;

namespace {

constexpr double REL_TOL = 1e-9;       // numeric relation residuals
constexpr double RANK_TOL = 1e-8;      // span-closure rank decisions
constexpr double MEMBER_TOL = 1e-8;    // projection membership residual
constexpr double CROSS_TOL = 1e-10;    // backend-vs-backend agreement

int failures = 0;

void line(int idx, bool ok, const std::string& what) {
    std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", idx, what.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

Weight fw(long long a, long long b) { return Weight::fundamental(a, b); }

const std::vector<Weight> grid = {fw(0, 0), fw(1, 0), fw(0, 1), fw(2, 0), fw(1, 1)};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ------------------------------------------------------------ criterion 1

void criterion_identities() {
    auto t0 = std::chrono::steady_clock::now();
    long long applicable = 0;
    bool ok = true;
    for (long long a = 1; a <= 4; ++a)
        for (long long b = 1; b <= 4; ++b)
            for (Weight b1 : short_roots())
                for (Weight b2 : short_roots()) {
                    bool short_sum = false;
                    for (Weight s : short_roots())
                        if (s == b1 + b2) short_sum = true;
                    if (!short_sum) continue;
                    auto rep = verify_c_identities(fw(a, b), b1, b2);
                    if (!rep.applicable) continue;
                    ++applicable;
                    if (!rep.passed()) ok = false;
                }
    ok = ok && applicable > 0;
    line(1, ok,
         "exact structure identities (sum e = 6, sum d = 1, e- and f-weighted "
         "sums) on " + std::to_string(applicable) +
         " full blocks, grid a,b <= 4, zero tolerance, " +
         std::to_string(seconds_since(t0)).substr(0, 4) + "s");
}

// ------------------------------------------------------------ criterion 2

void criterion_exponents() {
    EValueReport ev = check_e_values(6);
    line(2, ev.passed() && ev.blocks_checked > 0,
         "no unit exponents on " + std::to_string(ev.blocks_checked) +
         " multi-middle blocks with distinct endpoints, start coordinate <= 6, "
         "exact");
}

// ------------------------------------------------------------ criterion 3

void criterion_constants() {
    bool ok = true;

    ok = ok && casimir(fw(0, 0)) == 0 && casimir(fw(2, 0)) == 28 &&
         casimir(fw(1, 0)) == 12 && casimir(fw(0, 1)) == 24;

    ok = ok && channel_eigenvalue(fw(0, 0)) == qpow(HalfInt(-13)) &&
         channel_eigenvalue(fw(2, 0)) == qpow(HalfInt(1)) &&
         channel_eigenvalue(fw(1, 0)) == QScalar(0) - qpow(HalfInt(-7)) &&
         channel_eigenvalue(fw(0, 1)) == QScalar(0) - qpow(HalfInt(-1));

    std::multiset<long long> short_vals, long_vals;
    for (Weight r : short_roots()) short_vals.insert(inner(rho(), r));
    for (Weight r : long_roots()) long_vals.insert(inner(rho(), r));
    ok = ok && short_vals == std::multiset<long long>{-5, -4, -1, 1, 4, 5};
    ok = ok && long_vals == std::multiset<long long>{-9, -6, -3, 3, 6, 9};

    // breadth-first distances in the tensor graph from the trivial weight
    std::map<Weight, long long> dist;
    std::vector<Weight> frontier = {fw(0, 0)};
    dist[fw(0, 0)] = 0;
    for (long long depth = 1; depth <= 16; ++depth) {
        std::vector<Weight> next;
        for (Weight w : frontier)
            for (Weight nb : tensor_with_v(w))
                if (!dist.count(nb)) {
                    dist[nb] = depth;
                    next.push_back(nb);
                }
        frontier = std::move(next);
    }
    long long checked = 0;
    for (long long v1 = 0; v1 <= 8 && ok; ++v1)
        for (long long v2 = 0; v2 <= v1 && ok; ++v2) {
            Weight nu(v1, v2, -v1 - v2);
            ++checked;
            ok = ok && dist.count(nu) && dist[nu] == v1 + v2 &&
                 n_min(fw(0, 0), nu) == v1 + v2;
        }
    line(3, ok,
         "Casimir constants, channel eigenvalues, root pairings, and first-"
         "appearance depth = nu1+nu2 against a BFS oracle on " +
         std::to_string(checked) + " vertices");
}

// ------------------------------------------------------------ criterion 4

void criterion_diagram() {
    BratteliDiagram d = build_bratteli(fw(0, 0), 4);
    bool ok = d.levels[1].size() == 1 && d.levels[2].size() == 4 &&
              d.levels[3].size() == 6 && d.levels[4].size() == 9;

    std::map<Weight, long long> want3 = {{fw(0, 0), 1}, {fw(1, 0), 4}, {fw(0, 1), 2},
                                         {fw(2, 0), 3}, {fw(1, 1), 2}, {fw(3, 0), 1}};
    ok = ok && d.levels[3] == want3;

    ok = ok && d.end_dim(1) == 1 && d.end_dim(2) == 4 && d.end_dim(3) == 35;

    // level-4 content against two independent oracles: path enumeration
    // and total dimension 7^4
    long long sum_sq = 0, total_dim = 0;
    for (const auto& [nu, m] : d.levels[4]) {
        long long paths = (long long)enumerate_paths(fw(0, 0), 4, nu).size();
        if (paths != m) ok = false;
        sum_sq += m * m;
        total_dim += m * weyl_dim(nu);
    }
    ok = ok && d.end_dim(4) == sum_sq && total_dim == 7 * 7 * 7 * 7;

    line(4, ok,
         "tower over the trivial weight: level sizes 1,4,6,9, pinned level-3 "
         "multiplicities, closure dimensions 1,4,35, level 4 against path and "
         "dimension oracles");
}

// --------------------------------------------------- criteria 5 and 6 (+7)

std::map<std::pair<Weight, long long>, RepBundle> bundles;

void criterion_relations() {
    auto t0 = std::chrono::steady_clock::now();
    NumericContext ctx;    // q = 13/10, 50 digits
    Real worst(0);
    for (Weight lam : grid)
        for (long long n = 1; n <= 3; ++n) {
            auto& b = bundles.emplace(std::make_pair(lam, n), assemble(lam, n, ctx))
                          .first->second;
            RelationReport r = verify_relations(b);
            if (r.max() > worst) worst = r.max();
        }
    double secs = seconds_since(t0);
    bool ok = worst <= Real(REL_TOL) && secs < 120.0;
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "braid, commutation, loop-exchange, two-step scalar and "
                  "eigen relations on 15 bundles: worst residual %.1e "
                  "(tol %.0e), %.0fs",
                  worst.convert_to<double>(), REL_TOL, secs);
    line(5, ok, buf);
}

void criterion_surjectivity() {
    long long target = 0, achieved = 0, escalations = 0;
    bool ok = true;
    for (auto& [key, bundle] : bundles) {
        SurjectivityReport r = algebra_dimension(bundle, RANK_TOL);
        if (r.ambiguous) {
            ++escalations;
            NumericContext ctx = bundle.ctx;
            ctx.digits *= 2;
            r = certify_surjectivity(key.first, key.second, ctx, RANK_TOL);
        }
        ok = ok && r.passed();
        target += r.total_target;
        achieved += r.total_achieved;
    }
    ok = ok && target == achieved;
    line(6, ok,
         "generated algebra reaches the full centralizer dimension " +
         std::to_string(achieved) + "/" + std::to_string(target) +
         " summed over the grid (" + std::to_string(escalations) +
         " precision escalations); certified at depth <= 3 only - the "
         "underlying statement covers every depth");
}

void criterion_projection() {
    bool ok = true;
    NumericContext ctx;
    const Real num_tol = pow_int(Real(10), -40);

    // exact quantum-dimension identity behind each returning block, plus
    // the numeric idempotent structure of its projection
    long long return_blocks = 0;
    for (long long n = 2; n <= 3; ++n) {
        const RepBundle& b = bundles.at({fw(0, 0), n});
        for (const auto& [key, blk] : b.blocks) {
            if (!(key.first == key.second) || blk.empty()) continue;
            ++return_blocks;
            LaurentS sum;
            for (Weight mu : blk.middles) sum += quantum_dim(mu);
            ok = ok && sum == quantum_dim(key.first) * quantum_dim(fw(1, 0));

            const Mat& q = blk.Q;
            ok = ok && (q * q - q).max_abs() <= num_tol &&
                 (q - q.transposed()).max_abs() <= num_tol;
            Real tr(0);
            for (long long i = 0; i < blk.size(); ++i) tr += q(i, i);
            ok = ok && abs(tr - Real(1)) <= num_tol;
        }
    }
    ok = ok && return_blocks > 0;

    // the projection must lie in the generated algebra, and replacing the
    // last generator by it still generates the old part
    for (long long n = 2; n <= 3; ++n) {
        OldPartReport rep = old_part_check(bundles.at({fw(0, 0), n}), RANK_TOL);
        ok = ok && rep.passed(MEMBER_TOL);
    }

    line(7, ok,
         "trivial-channel projections: exact quantum-dimension trace identity "
         "on " + std::to_string(return_blocks) +
         " returning blocks, rank-1 idempotent to 1e-40, membership and "
         "old-part generation to 1e-8");
}

// ------------------------------------------------------------ criterion 8

void criterion_cross_validation() {
    bool ok = true;
    NumericContext ctx;
    const Real cross(CROSS_TOL);

    // (a) every closed-form multi-middle block re-derived by the iterative
    // solver from a coarsened seed
    long long compared = 0;
    for (long long a = 0; a <= 2; ++a)
        for (long long b = 0; a + b <= 2; ++b) {
            Weight delta = fw(a, b);
            std::set<Weight> nus;
            for (Weight mu : tensor_with_v(delta))
                for (Weight nu : tensor_with_v(mu)) nus.insert(nu);
            for (Weight nu : nus) {
                if (nu == delta) continue;
                Block blk = build_block(delta, nu, ctx);
                if (blk.empty() || blk.size() < 2 || blk.d.empty()) continue;
                if (blk.backend != "exact-closed-form") continue;

                BlockSolveProblem prob;
                prob.e = blk.e;
                for (const auto& x : blk.d) {
                    Real v = eval(x, ctx);
                    prob.d_init.push_back(floor(v * 1000 + Real(1) / 2) / 1000);
                }
                for (const auto& ch : blk.spectrum.channels) {
                    prob.eigenvalues.push_back(eval(ch.eigenvalue, ctx));
                    prob.mults.push_back(ch.mult);
                }
                SolverResult res = solve_block(prob, ctx);
                ++compared;
                ok = ok && (res.A - blk.A).max_abs() <= cross &&
                     (res.P - blk.P).max_abs() <= cross;
            }
        }
    ok = ok && compared > 0;

    // (b) the two loop-eigenvalue formulas agree exactly on every edge
    long long edges = 0;
    for (long long v1 = 0; v1 <= 6; ++v1)
        for (long long v2 = 0; v2 <= v1; ++v2) {
            Weight lam(v1, v2, -v1 - v2);
            for (Weight om : tensor_with_v(lam)) {
                Weight omega = om - lam;
                ++edges;
                QScalar casimir_route =
                    qpow(HalfInt(casimir(om) - casimir(lam) - 12));
                ok = ok && t_eigenvalue(lam, omega) == casimir_route;
            }
        }

    // (c) the encircling scalar of the trivial weight equals its 7-term
    // weight sum
    QScalar want(0);
    for (long long e : {10, 8, 2, 0, -2, -8, -10}) want += qpow(HalfInt(e));
    ok = ok && encircle_scalar(fw(0, 0)) == want;

    line(8, ok,
         "backend cross-check on " + std::to_string(compared) +
         " blocks to 1e-10, dual loop-eigenvalue formulas exact on " +
         std::to_string(edges) + " edges, encircling scalar equals its "
         "7-term weight sum exactly");
}

} // namespace

int main() {
    struct Step {
        int idx;
        void (*fn)();
    } steps[] = {{1, criterion_identities},    {2, criterion_exponents},
                 {3, criterion_constants},     {4, criterion_diagram},
                 {5, criterion_relations},     {6, criterion_surjectivity},
                 {7, criterion_projection},    {8, criterion_cross_validation}};
    for (const auto& s : steps) {
        try {
            s.fn();
        } catch (const std::exception& e) {
            line(s.idx, false, std::string("exception: ") + e.what());
        }
    }
    if (failures == 0)
        std::printf("acceptance: all 8 criteria passed\n");
    else
        std::printf("acceptance: %d criterion/criteria FAILED\n", failures);
    return failures == 0 ? 0 : 1;
}
