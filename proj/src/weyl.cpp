#include "g2cent/weyl.hpp"

#include <algorithm>
#include <stdexcept>

namespace g2cent {

WeylElement WeylElement::inverse() const {
    WeylElement r;
    for (int i = 0; i < 3; ++i) r.perm[perm[i]] = i;
    r.sign = sign;
    return r;
}

int WeylElement::eps() const {
    int e = 1;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (perm[i] > perm[j]) e = -e;
    return e;
}

int WeylElement::length() const {
    int l = 0;
    for (Weight a : positive_roots())
        // a root is negative exactly when it pairs negatively with the
        // interior point rho
        if (inner(rho(), apply(a)) < 0) ++l;
    return l;
}

const std::vector<WeylElement>& weyl_group() {
    static const std::vector<WeylElement> group = [] {
        std::vector<WeylElement> all;
        std::array<int, 3> p = {0, 1, 2};
        do {
            for (int sign : {1, -1}) all.push_back(WeylElement{p, sign});
        } while (std::next_permutation(p.begin(), p.end()));
        std::sort(all.begin(), all.end(), [](const WeylElement& x, const WeylElement& y) {
            if (x.length() != y.length()) return x.length() < y.length();
            if (x.perm != y.perm) return x.perm < y.perm;
            return x.sign > y.sign;
        });
        return all;
    }();
    return group;
}

std::pair<WeylElement, Weight> dominate(Weight v) {
    for (const auto& w : weyl_group()) {       // ordered by length: first hit is minimal
        Weight img = w.apply(v);
        if (img.is_dominant()) return {w, img};
    }
    throw std::logic_error("no chamber representative found");   // unreachable
}

bool is_regular(Weight v) {
    return v.v1 != 0 && v.v2 != 0 && v.v3 != 0 && v.v1 != v.v2 && v.v2 != v.v3 &&
           v.v1 != v.v3;
}

} // namespace g2cent
