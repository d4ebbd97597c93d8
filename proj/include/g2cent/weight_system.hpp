#pragma once

#include "g2cent/qscalar.hpp"
#include "g2cent/weight.hpp"

#include <map>
#include <vector>

namespace g2cent {

/// Formal character support of an irreducible module: every weight with
/// its multiplicity.
struct WeightSystem {
    Weight highest;
    std::map<Weight, long long> mult;

    long long multiplicity(Weight w) const {
        auto it = mult.find(w);
        return it == mult.end() ? 0 : it->second;
    }
    long long dim() const;
};

/// Weyl dimension formula (product over the six positive roots).
long long weyl_dim(Weight kappa);

/// Full weight system of V_kappa via the Freudenthal recursion, extended
/// over Weyl orbits. Memoized; safe for concurrent readers.
const WeightSystem& weight_system(Weight kappa);

/// Multiplicity of V_nu inside V_delta (x) V_kappa by the Racah-Speiser
/// rule: signed, wall-cancelled count over the weights of V_kappa.
long long racah_speiser_mult(Weight delta, Weight kappa, Weight nu);

/// Neighbours of mu in the tensor-by-V graph: dominant mu + (short root),
/// plus mu itself when its L1-coefficient is at least 1. Sorted.
std::vector<Weight> tensor_with_v(Weight mu);

/// Minimal number of V-tensor steps connecting V_nu to V_lambda (x) V^{(x) n}:
/// first two epsilon-coordinates of the dominant representative of nu - lambda.
long long n_min(Weight lambda, Weight nu);

/// Quantum dimension as a Laurent polynomial: sum_w mult(w) q^{2(rho,w)}.
LaurentS quantum_dim(Weight kappa);

/// Scalar by which a V-loop encircling the lambda strand acts:
/// the Weyl-character alternating-sum ratio, equal to
/// sum over weights w of V of q^{2(lambda+rho, w)}. Always a Laurent polynomial.
QScalar encircle_scalar(Weight lambda);

} // namespace g2cent
