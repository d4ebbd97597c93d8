#pragma once

#include <compare>
#include <stdexcept>
#include <string>

namespace g2cent {

/**
 * @brief Exact half-integer: an element of (1/2)Z stored as twice its value.
 *
 * Casimir differences and block exponents live in (1/2)Z; storing the
 * doubled value keeps every operation in integer arithmetic.
 */
class HalfInt {
public:
    constexpr HalfInt() = default;
    constexpr HalfInt(long long n) : tw_(2 * n) {}

    static constexpr HalfInt from_twice(long long t) {
        HalfInt h;
        h.tw_ = t;
        return h;
    }

    constexpr long long twice() const { return tw_; }
    constexpr bool is_integer() const { return tw_ % 2 == 0; }

    /// Integer value; throws if the value is a strict half-integer.
    long long integer() const {
        if (!is_integer())
            throw std::domain_error("HalfInt: " + str() + " is not an integer");
        return tw_ / 2;
    }

    constexpr HalfInt operator-() const { return from_twice(-tw_); }
    friend constexpr HalfInt operator+(HalfInt a, HalfInt b) { return from_twice(a.tw_ + b.tw_); }
    friend constexpr HalfInt operator-(HalfInt a, HalfInt b) { return from_twice(a.tw_ - b.tw_); }
    friend constexpr HalfInt operator*(long long k, HalfInt a) { return from_twice(k * a.tw_); }
    HalfInt& operator+=(HalfInt o) { tw_ += o.tw_; return *this; }
    HalfInt& operator-=(HalfInt o) { tw_ -= o.tw_; return *this; }

    /// Exact halving of an integer-or-even combination; (a+b)/2 stays exact in (1/2)Z.
    static constexpr HalfInt half_of(HalfInt a) { return from_twice_checked(a); }

    constexpr auto operator<=>(const HalfInt&) const = default;

    std::string str() const {
        if (is_integer()) return std::to_string(tw_ / 2);
        return std::to_string(tw_) + "/2";
    }

private:
    static constexpr HalfInt from_twice_checked(HalfInt a) {
        // half of a half-integer would leave (1/2)Z; callers must pass integers
        return from_twice(a.tw_ % 2 == 0 ? a.tw_ / 2 : throw std::domain_error("HalfInt: cannot halve"));
    }

    long long tw_ = 0;
};

} // namespace g2cent
