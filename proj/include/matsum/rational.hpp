#pragma once

#include <cstdint>
#include <string>

#include "matsum/errors.hpp"

namespace matsum {

// Exact rational with int64 numerator/denominator, reduced, den > 0.
// Intermediates run through __int128; results that cannot be narrowed back
// to int64 raise OverflowError.
class Rat {
  public:
    Rat() : num_(0), den_(1) {}
    Rat(std::int64_t n) : num_(n), den_(1) {}
    Rat(std::int64_t num, std::int64_t den);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    Rat operator+(const Rat& rhs) const;
    Rat operator-(const Rat& rhs) const;
    Rat operator*(const Rat& rhs) const;

    // -1, 0, +1 as *this compares to rhs; exact.
    int cmp(const Rat& rhs) const;

    bool operator==(const Rat& rhs) const { return num_ == rhs.num_ && den_ == rhs.den_; }
    bool operator!=(const Rat& rhs) const { return !(*this == rhs); }
    bool operator<(const Rat& rhs) const { return cmp(rhs) < 0; }
    bool operator<=(const Rat& rhs) const { return cmp(rhs) <= 0; }
    bool operator>(const Rat& rhs) const { return cmp(rhs) > 0; }
    bool operator>=(const Rat& rhs) const { return cmp(rhs) >= 0; }

    Rat abs() const { return num_ < 0 ? Rat(-num_, den_) : *this; }

    double to_double() const { return double(num_) / double(den_); }
    std::string str() const;

  private:
    static Rat normalize(__int128 n, __int128 d);

    std::int64_t num_;
    std::int64_t den_;
};

} // namespace matsum
