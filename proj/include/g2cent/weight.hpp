#pragma once

#include <array>
#include <compare>
#include <string>
#include <vector>

namespace g2cent {

/**
 * @brief Integral weight of G2 in epsilon-coordinates: an integer triple
 *        summing to zero. Dominance means v1 >= v2 >= 0 (which forces
 *        v3 = -v1-v2 <= 0).
 *
 * The fundamental weights are L1 = (1,0,-1) (the 7-dimensional module V)
 * and L2 = (1,1,-2) (the adjoint); a*L1 + b*L2 = (a+b, b, -a-2b).
 */
struct Weight {
    long long v1 = 0, v2 = 0, v3 = 0;

    constexpr Weight() = default;
    constexpr Weight(long long a, long long b, long long c) : v1(a), v2(b), v3(c) {}

    static Weight eps(long long a, long long b, long long c);       // validates a+b+c == 0
    static constexpr Weight fundamental(long long a, long long b) {
        return Weight(a + b, b, -a - 2 * b);
    }

    long long operator[](int i) const { return i == 0 ? v1 : (i == 1 ? v2 : v3); }

    /// Coefficient of L1 (resp. L2) in the fundamental-weight basis.
    constexpr long long a() const { return v1 - v2; }
    constexpr long long b() const { return v2; }

    constexpr bool is_dominant() const { return v1 >= v2 && v2 >= 0; }
    constexpr bool is_zero() const { return v1 == 0 && v2 == 0 && v3 == 0; }

    friend constexpr Weight operator+(Weight x, Weight y) {
        return Weight(x.v1 + y.v1, x.v2 + y.v2, x.v3 + y.v3);
    }
    friend constexpr Weight operator-(Weight x, Weight y) {
        return Weight(x.v1 - y.v1, x.v2 - y.v2, x.v3 - y.v3);
    }
    constexpr Weight operator-() const { return Weight(-v1, -v2, -v3); }
    friend constexpr Weight operator*(long long k, Weight x) {
        return Weight(k * x.v1, k * x.v2, k * x.v3);
    }
    constexpr auto operator<=>(const Weight&) const = default;      // lexicographic

    std::string str() const;        // fundamental coords, e.g. "2L1+L2", "0"
    std::string str_eps() const;    // "(2,0,-2)"
};

/// Invariant bilinear form: the standard dot product, (L1,L1) = 2, (L2,L2) = 6.
constexpr long long inner(Weight x, Weight y) {
    return x.v1 * y.v1 + x.v2 * y.v2 + x.v3 * y.v3;
}

constexpr Weight rho() { return Weight(2, 1, -3); }
constexpr Weight lambda1() { return Weight(1, 0, -1); }
constexpr Weight lambda2() { return Weight(1, 1, -2); }

/// Casimir integer c_kappa = (kappa + 2 rho, kappa).
constexpr long long casimir(Weight kappa) {
    return inner(kappa + 2 * rho(), kappa);
}

/// Casimir of V itself, c_{L1} = 12.
constexpr long long casimir_v() { return casimir(lambda1()); }

const std::array<Weight, 6>& short_roots();
const std::array<Weight, 6>& long_roots();
const std::array<Weight, 6>& positive_roots();   // 3 short + 3 long
bool is_short_root(Weight w);

/// Parses "a,b" (fundamental coordinates, a,b >= 0); throws std::invalid_argument.
Weight parse_weight(const std::string& text);

} // namespace g2cent
