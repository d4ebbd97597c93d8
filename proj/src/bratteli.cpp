#include "g2cent/bratteli.hpp"

#include "g2cent/weight_system.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace g2cent {

long long BratteliDiagram::multiplicity(Weight nu, std::size_t k) const {
    if (k >= levels.size()) return 0;
    auto it = levels[k].find(nu);
    return it == levels[k].end() ? 0 : it->second;
}

long long BratteliDiagram::end_dim(std::size_t k) const {
    if (k >= levels.size()) throw std::out_of_range("level not built");
    long long d = 0;
    for (const auto& [nu, m] : levels[k]) d += m * m;
    return d;
}

BratteliDiagram build_bratteli(Weight lambda, long long n) {
    if (!lambda.is_dominant() || n < 0)
        throw std::invalid_argument("build_bratteli requires a dominant weight and n >= 0");
    BratteliDiagram d;
    d.lambda = lambda;
    d.levels.resize(n + 1);
    d.levels[0][lambda] = 1;
    for (long long k = 0; k < n; ++k)
        for (const auto& [mu, m] : d.levels[k])
            for (Weight nu : tensor_with_v(mu)) d.levels[k + 1][nu] += m;
    return d;
}

std::vector<Path> enumerate_paths(Weight lambda, long long n, Weight nu) {
    if (!lambda.is_dominant() || !nu.is_dominant() || n < 0)
        throw std::invalid_argument("enumerate_paths requires dominant weights and n >= 0");
    std::vector<Path> out;
    Path cur = {lambda};
    // depth-first over sorted neighbour lists: emission order is lexicographic
    auto walk = [&](auto&& self, long long k) -> void {
        if (k == n) {
            if (cur.back() == nu) out.push_back(cur);
            return;
        }
        for (Weight next : tensor_with_v(cur.back())) {
            cur.push_back(next);
            self(self, k + 1);
            cur.pop_back();
        }
    };
    walk(walk, 0);
    return out;
}

std::vector<Weight> two_step_support(Weight delta, Weight nu) {
    if (!delta.is_dominant() || !nu.is_dominant())
        throw std::invalid_argument("two_step_support requires dominant weights");
    std::vector<Weight> out;
    for (Weight mu : tensor_with_v(delta)) {
        auto up = tensor_with_v(mu);
        if (std::binary_search(up.begin(), up.end(), nu)) out.push_back(mu);
    }
    return out;                                   // inherits sorted order
}

Gradation gradation(Weight lambda, long long n) {
    Gradation g;
    g.n = n;
    BratteliDiagram d = build_bratteli(lambda, n);
    for (const auto& [nu, m] : d.levels[n]) {
        long long born = n_min(lambda, nu);
        if (born == n)
            g.new_part.push_back(nu);
        else if (born == n - 1)
            g.recent_part.push_back(nu);
        else
            g.old_part.push_back(nu);
    }
    return g;                                     // map order keeps parts sorted
}

std::string emit_dot(const BratteliDiagram& d) {
    std::ostringstream os;
    os << "digraph bratteli {\n  rankdir=TB;\n  node [shape=box];\n";
    for (std::size_t k = 0; k < d.levels.size(); ++k)
        for (const auto& [nu, m] : d.levels[k])
            os << "  \"" << k << ":" << nu.str() << "\" [label=\"" << nu.str() << " (" << m
               << ")\"];\n";
    for (std::size_t k = 0; k < d.levels.size(); ++k) {
        os << "  { rank=same;";
        for (const auto& [nu, m] : d.levels[k]) os << " \"" << k << ":" << nu.str() << "\";";
        os << " }\n";
    }
    for (std::size_t k = 0; k + 1 < d.levels.size(); ++k)
        for (const auto& [nu, m] : d.levels[k])
            for (Weight up : tensor_with_v(nu))
                os << "  \"" << k << ":" << nu.str() << "\" -> \"" << k + 1 << ":" << up.str()
                   << "\";\n";
    os << "}\n";
    return os.str();
}

} // namespace g2cent
