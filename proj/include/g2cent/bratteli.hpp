#pragma once

#include "g2cent/weight.hpp"

#include <map>
#include <string>
#include <vector>

namespace g2cent {

/// Sequence lambda = t(0), t(1), ..., t(n) of dominant weights with
/// t(i+1) a tensor-by-V neighbour of t(i).
using Path = std::vector<Weight>;

/**
 * @brief Levelwise multiplicity tables of the tower V_lambda, V_lambda (x) V,
 *        V_lambda (x) V (x) V, ...: levels[k][nu] is the multiplicity of
 *        V_nu at level k, equal to the number of length-k paths from lambda
 *        to nu. Immutable once built.
 */
struct BratteliDiagram {
    Weight lambda;
    std::vector<std::map<Weight, long long>> levels;    // index 0..n

    long long multiplicity(Weight nu, std::size_t k) const;
    /// Dimension of the centralizer algebra at level k: sum of squared mults.
    long long end_dim(std::size_t k) const;
};

/// Levels 0..n by repeated application of the tensor-by-V rule.
BratteliDiagram build_bratteli(Weight lambda, long long n);

/// Every length-n path from lambda to nu, in lexicographic order.
std::vector<Path> enumerate_paths(Weight lambda, long long n, Weight nu);

/// Middle weights mu with mu a neighbour of delta and nu a neighbour of mu:
/// the basis of the length-2 space W(delta, nu). Sorted; size at most 7,
/// at most 4 when delta != nu.
std::vector<Weight> two_step_support(Weight delta, Weight nu);

/**
 * @brief Partition of the level-n vertices by first appearance in the tower:
 *        new vertices reach lambda in exactly n steps, recent ones in n-1,
 *        old ones earlier still. Each part sorted.
 */
struct Gradation {
    long long n = 0;
    std::vector<Weight> old_part, recent_part, new_part;
};

Gradation gradation(Weight lambda, long long n);

/// DOT digraph of the tower, one rank per level; byte-stable output.
std::string emit_dot(const BratteliDiagram& d);

} // namespace g2cent
