#pragma once

#include "g2cent/weight.hpp"

#include <utility>
#include <vector>

namespace g2cent {

/**
 * @brief Element of the G2 Weyl group realized as a signed coordinate
 *        permutation: w(v)_i = sign * v_{perm[i]}. All 12 such elements
 *        form the group (dihedral of order 12).
 */
struct WeylElement {
    std::array<int, 3> perm = {0, 1, 2};
    int sign = 1;

    Weight apply(Weight v) const {
        long long c[3] = {v.v1, v.v2, v.v3};
        return Weight(sign * c[perm[0]], sign * c[perm[1]], sign * c[perm[2]]);
    }

    /// (w1 * w2)(v) = w1(w2(v)).
    WeylElement compose(const WeylElement& o) const {
        WeylElement r;
        for (int i = 0; i < 3; ++i) r.perm[i] = o.perm[perm[i]];
        r.sign = sign * o.sign;
        return r;
    }
    WeylElement inverse() const;

    /// Sign of the coordinate permutation: the determinant of w on the
    /// rank-2 reflection plane. This is the alternating character used in
    /// Weyl character sums.
    int eps() const;
    /// Determinant of w on R^3 (= sign * eps); also a homomorphism.
    int det3() const { return sign * eps(); }
    /// Coxeter length: number of positive roots mapped to negative ones.
    int length() const;

    bool operator==(const WeylElement&) const = default;
};

/// All 12 elements, ordered by (length, permutation, sign): deterministic.
const std::vector<WeylElement>& weyl_group();

/// Minimal-length w with w(v) dominant, together with w(v).
std::pair<WeylElement, Weight> dominate(Weight v);

/// True when v lies on no reflection wall (all coordinates distinct and nonzero).
bool is_regular(Weight v);

} // namespace g2cent
