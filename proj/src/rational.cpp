#include "matsum/rational.hpp"

#include <limits>

namespace matsum {

namespace {

__int128 gcd_i128(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) {
        __int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

} // namespace

Rat Rat::normalize(__int128 n, __int128 d) {
    if (d == 0) throw OverflowError("rational with zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    __int128 g = gcd_i128(n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    constexpr __int128 lo = std::numeric_limits<std::int64_t>::min();
    constexpr __int128 hi = std::numeric_limits<std::int64_t>::max();
    if (n < lo || n > hi || d > hi)
        throw OverflowError("rational exceeds 64-bit range after reduction");
    Rat r;
    r.num_ = static_cast<std::int64_t>(n);
    r.den_ = static_cast<std::int64_t>(d);
    return r;
}

Rat::Rat(std::int64_t num, std::int64_t den) {
    Rat r = normalize(num, den);
    num_ = r.num_;
    den_ = r.den_;
}

Rat Rat::operator+(const Rat& rhs) const {
    return normalize((__int128)num_ * rhs.den_ + (__int128)rhs.num_ * den_,
                     (__int128)den_ * rhs.den_);
}

Rat Rat::operator-(const Rat& rhs) const {
    return normalize((__int128)num_ * rhs.den_ - (__int128)rhs.num_ * den_,
                     (__int128)den_ * rhs.den_);
}

Rat Rat::operator*(const Rat& rhs) const {
    return normalize((__int128)num_ * rhs.num_, (__int128)den_ * rhs.den_);
}

int Rat::cmp(const Rat& rhs) const {
    __int128 lhs_v = (__int128)num_ * rhs.den_;
    __int128 rhs_v = (__int128)rhs.num_ * den_;
    if (lhs_v < rhs_v) return -1;
    if (lhs_v > rhs_v) return 1;
    return 0;
}

std::string Rat::str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

} // namespace matsum
