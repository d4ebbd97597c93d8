#include "g2cent/laurent.hpp"

#include <sstream>
#include <stdexcept>

namespace g2cent {

bool LaurentS::is_one() const {
    return c_.size() == 1 && c_.begin()->first == 0 && c_.begin()->second == 1;
}

long long LaurentS::min_exp() const {
    if (c_.empty()) throw std::domain_error("LaurentS: zero polynomial has no degree");
    return c_.begin()->first;
}

long long LaurentS::max_exp() const {
    if (c_.empty()) throw std::domain_error("LaurentS: zero polynomial has no degree");
    return c_.rbegin()->first;
}

LaurentS& LaurentS::operator+=(const LaurentS& o) {
    for (const auto& [e, c] : o.c_) {
        auto it = c_.find(e);
        if (it == c_.end()) {
            c_.emplace(e, c);
        } else {
            it->second += c;
            if (it->second == 0) c_.erase(it);
        }
    }
    return *this;
}

LaurentS& LaurentS::operator-=(const LaurentS& o) {
    for (const auto& [e, c] : o.c_) {
        auto it = c_.find(e);
        if (it == c_.end()) {
            c_.emplace(e, -c);
        } else {
            it->second -= c;
            if (it->second == 0) c_.erase(it);
        }
    }
    return *this;
}

LaurentS& LaurentS::operator*=(const LaurentS& o) {
    if (is_zero() || o.is_zero()) {
        c_.clear();
        return *this;
    }
    std::map<long long, mpq_class> out;
    for (const auto& [ea, ca] : c_)
        for (const auto& [eb, cb] : o.c_) {
            auto it = out.find(ea + eb);
            if (it == out.end())
                out.emplace(ea + eb, ca * cb);
            else
                it->second += ca * cb;
        }
    c_.clear();
    for (auto& [e, c] : out)
        if (c != 0) c_.emplace(e, std::move(c));
    return *this;
}

LaurentS LaurentS::operator-() const {
    LaurentS r;
    for (const auto& [e, c] : c_) r.c_.emplace(e, -c);
    return r;
}

LaurentS LaurentS::scaled(const mpq_class& c) const {
    LaurentS r;
    if (c == 0) return r;
    for (const auto& [e, cc] : c_) r.c_.emplace(e, c * cc);
    return r;
}

LaurentS LaurentS::shifted(long long k) const {
    LaurentS r;
    for (const auto& [e, c] : c_) r.c_.emplace(e + k, c);
    return r;
}

LaurentS LaurentS::substituted_inverse() const {
    LaurentS r;
    for (const auto& [e, c] : c_) r.c_.emplace(-e, c);
    return r;
}

std::string LaurentS::str() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : c_) {
        mpq_class a = c;
        if (first) {
            if (a < 0) { os << "-"; a = -a; }
        } else {
            os << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        first = false;
        if (e == 0) {
            os << a.get_str();
        } else {
            if (a != 1) os << a.get_str() << "*";
            os << "s";
            if (e != 1) os << "^" << e;
        }
    }
    return os.str();
}

} // namespace g2cent
