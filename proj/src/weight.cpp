#include "g2cent/weight.hpp"

#include <sstream>
#include <stdexcept>

namespace g2cent {

Weight Weight::eps(long long a, long long b, long long c) {
    if (a + b + c != 0)
        throw std::invalid_argument("epsilon coordinates must sum to zero");
    return Weight(a, b, c);
}

std::string Weight::str() const {
    long long ca = a(), cb = b();
    if (ca == 0 && cb == 0) return "0";
    std::ostringstream os;
    bool first = true;
    auto piece = [&](long long c, const char* name) {
        if (c == 0) return;
        if (!first) os << "+";
        if (c != 1) os << c;
        os << name;
        first = false;
    };
    piece(ca, "L1");
    piece(cb, "L2");
    return os.str();
}

std::string Weight::str_eps() const {
    std::ostringstream os;
    os << "(" << v1 << "," << v2 << "," << v3 << ")";
    return os.str();
}

const std::array<Weight, 6>& short_roots() {
    static const std::array<Weight, 6> r = {
        Weight(1, -1, 0), Weight(0, 1, -1), Weight(1, 0, -1),
        Weight(-1, 1, 0), Weight(0, -1, 1), Weight(-1, 0, 1)};
    return r;
}

const std::array<Weight, 6>& long_roots() {
    static const std::array<Weight, 6> r = {
        Weight(-1, 2, -1), Weight(2, -1, -1), Weight(1, 1, -2),
        Weight(1, -2, 1), Weight(-2, 1, 1), Weight(-1, -1, 2)};
    return r;
}

const std::array<Weight, 6>& positive_roots() {
    static const std::array<Weight, 6> r = {
        Weight(1, -1, 0), Weight(0, 1, -1), Weight(1, 0, -1),
        Weight(-1, 2, -1), Weight(2, -1, -1), Weight(1, 1, -2)};
    return r;
}

bool is_short_root(Weight w) {
    for (Weight a : short_roots())
        if (a == w) return true;
    return false;
}

Weight parse_weight(const std::string& text) {
    std::size_t comma = text.find(',');
    if (comma == std::string::npos)
        throw std::invalid_argument("expected \"a,b\": " + text);
    std::size_t used_a = 0, used_b = 0;
    long long a, b;
    try {
        a = std::stoll(text.substr(0, comma), &used_a);
        b = std::stoll(text.substr(comma + 1), &used_b);
    } catch (const std::exception&) {
        throw std::invalid_argument("expected \"a,b\": " + text);
    }
    if (used_a != comma || used_b != text.size() - comma - 1)
        throw std::invalid_argument("expected \"a,b\": " + text);
    if (a < 0 || b < 0)
        throw std::invalid_argument("weight coordinates must be nonnegative: " + text);
    return Weight::fundamental(a, b);
}

} // namespace g2cent
