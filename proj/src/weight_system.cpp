#include "g2cent/weight_system.hpp"

#include "g2cent/weyl.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>

namespace g2cent {

namespace {

constexpr Weight alpha1() { return Weight(1, -1, 0); }    // short simple root
constexpr Weight alpha2() { return Weight(-1, 2, -1); }   // long simple root

// Writes kappa - mu as c1*alpha1 + c2*alpha2; false unless both are
// nonnegative integers.
bool root_coords(Weight kappa, Weight mu, long long& c1, long long& c2) {
    Weight d = kappa - mu;
    c2 = -d.v3;
    c1 = d.v1 + c2;
    return c1 >= 0 && c2 >= 0 && (d == c1 * alpha1() + c2 * alpha2());
}

WeightSystem compute_weight_system(Weight kappa) {
    if (!kappa.is_dominant())
        throw std::invalid_argument("weight_system requires a dominant weight");

    // dominant candidates below kappa, by increasing distance from kappa
    struct Cand {
        Weight mu;
        long long height;       // c1 + c2 of kappa - mu
    };
    std::vector<Cand> cands;
    long long budget = inner(rho(), kappa);       // (rho, kappa - mu) = c1 + 3*c2 >= c2
    for (long long c1 = 0; c1 <= budget; ++c1)
        for (long long c2 = 0; 3 * c2 <= budget; ++c2) {
            Weight mu = kappa - c1 * alpha1() - c2 * alpha2();
            if (mu.is_dominant() && c1 + 3 * c2 <= budget)
                cands.push_back({mu, c1 + c2});
        }
    std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
        if (a.height != b.height) return a.height < b.height;
        return a.mu < b.mu;
    });

    // Freudenthal recursion over the dominant candidates
    std::map<Weight, long long> dom;
    const long long norm_top = inner(kappa + rho(), kappa + rho());
    for (const Cand& c : cands) {
        if (c.height == 0) {
            dom[c.mu] = 1;
            continue;
        }
        long long rhs = 0;
        for (Weight al : positive_roots()) {
            long long alal = inner(al, al);
            for (long long j = 1;; ++j) {
                Weight w = c.mu + j * al;
                auto it = dom.find(dominate(w).second);
                if (it == dom.end()) break;       // weight strings are unbroken
                rhs += (inner(c.mu, al) + j * alal) * it->second;
            }
        }
        long long den = norm_top - inner(c.mu + rho(), c.mu + rho());
        if (den <= 0 || (2 * rhs) % den != 0)
            throw std::logic_error("Freudenthal recursion failed");
        dom[c.mu] = 2 * rhs / den;
    }

    WeightSystem ws;
    ws.highest = kappa;
    for (const auto& [mu, m] : dom)
        for (const auto& w : weyl_group()) ws.mult[w.apply(mu)] = m;
    return ws;
}

} // namespace

long long WeightSystem::dim() const {
    long long d = 0;
    for (const auto& [w, m] : mult) d += m;
    return d;
}

long long weyl_dim(Weight kappa) {
    if (!kappa.is_dominant())
        throw std::invalid_argument("weyl_dim requires a dominant weight");
    long long num = 1, den = 1;
    for (Weight al : positive_roots()) {
        num *= inner(kappa + rho(), al);
        den *= inner(rho(), al);
    }
    if (num % den != 0) throw std::logic_error("dimension formula not integral");
    return num / den;
}

const WeightSystem& weight_system(Weight kappa) {
    static std::mutex mu;
    static std::map<Weight, WeightSystem> cache;    // node-based: stable references
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(kappa);
    if (it == cache.end()) it = cache.emplace(kappa, compute_weight_system(kappa)).first;
    return it->second;
}

long long racah_speiser_mult(Weight delta, Weight kappa, Weight nu) {
    if (!delta.is_dominant() || !kappa.is_dominant() || !nu.is_dominant())
        throw std::invalid_argument("racah_speiser_mult requires dominant weights");
    long long total = 0;
    for (const auto& [omega, m] : weight_system(kappa).mult) {
        Weight xi = delta + omega + rho();
        if (!is_regular(xi)) continue;            // on a wall: cancels in pairs
        auto [w, xid] = dominate(xi);
        if (xid - rho() == nu) total += m * w.eps();
    }
    return total;
}

std::vector<Weight> tensor_with_v(Weight mu) {
    if (!mu.is_dominant())
        throw std::invalid_argument("tensor_with_v requires a dominant weight");
    std::vector<Weight> out;
    for (Weight al : short_roots()) {
        Weight nu = mu + al;
        if (nu.is_dominant()) out.push_back(nu);
    }
    if (mu.a() >= 1) out.push_back(mu);           // zero weight of V contributes
    std::sort(out.begin(), out.end());
    return out;
}

long long n_min(Weight lambda, Weight nu) {
    Weight d = dominate(nu - lambda).second;
    return d.v1 + d.v2;
}

LaurentS quantum_dim(Weight kappa) {
    LaurentS qd;
    for (const auto& [omega, m] : weight_system(kappa).mult)
        qd += LaurentS::monomial(4 * inner(rho(), omega), mpq_class((long)m));
    return qd;
}

QScalar encircle_scalar(Weight lambda) {
    if (!lambda.is_dominant())
        throw std::invalid_argument("encircle_scalar requires a dominant weight");
    Weight shifted = lambda + rho();
    LaurentS num, den;
    for (const auto& w : weyl_group()) {
        mpq_class sgn((long)w.eps());
        num += LaurentS::monomial(4 * inner(shifted, w.apply(lambda1() + rho())), sgn);
        den += LaurentS::monomial(4 * inner(shifted, w.apply(rho())), sgn);
    }
    return QScalar(num, den);                     // reduces to a Laurent polynomial
}

} // namespace g2cent
