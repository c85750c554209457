#pragma once

#include <cstdint>

#include "matsum/errors.hpp"

namespace matsum {

// Deterministic Miller-Rabin, valid for all 64-bit inputs.
bool is_prime_u64(std::uint64_t n);

std::uint64_t mul_mod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t pow_mod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t m);
std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b);

// Inverse of a modulo m for any m >= 2 (extended Euclid); throws NotAUnit
// when gcd(a, m) != 1.
std::uint64_t inv_mod_u64(std::uint64_t a, std::uint64_t m);

// Largest prime the scalar layer accepts: values and products must stay exact
// in 64-bit intermediates.
inline constexpr std::uint32_t kMaxPrime = (1u << 31) - 1;

void check_prime_modulus(std::uint64_t p);

// A canonical residue in [0, p) for a prime modulus p.
class Residue {
  public:
    Residue(std::uint64_t value, std::uint32_t modulus)
        : value_(0), modulus_(modulus) {
        check_prime_modulus(modulus);
        value_ = static_cast<std::uint32_t>(value % modulus);
    }

    std::uint32_t value() const { return value_; }
    std::uint32_t modulus() const { return modulus_; }

    Residue operator+(Residue rhs) const {
        require_same(rhs);
        std::uint64_t s = std::uint64_t(value_) + rhs.value_;
        if (s >= modulus_) s -= modulus_;
        return raw(static_cast<std::uint32_t>(s), modulus_);
    }

    Residue operator-(Residue rhs) const {
        require_same(rhs);
        std::uint64_t s = std::uint64_t(value_) + modulus_ - rhs.value_;
        if (s >= modulus_) s -= modulus_;
        return raw(static_cast<std::uint32_t>(s), modulus_);
    }

    Residue operator*(Residue rhs) const {
        require_same(rhs);
        std::uint64_t s = std::uint64_t(value_) * rhs.value_ % modulus_;
        return raw(static_cast<std::uint32_t>(s), modulus_);
    }

    Residue inverse() const {
        if (value_ == 0) throw NotAUnit("inverse of 0 mod p");
        return raw(static_cast<std::uint32_t>(inv_mod_u64(value_, modulus_)), modulus_);
    }

    Residue negate() const {
        return raw(value_ == 0 ? 0u : modulus_ - value_, modulus_);
    }

    bool operator==(const Residue& rhs) const {
        return value_ == rhs.value_ && modulus_ == rhs.modulus_;
    }
    bool operator!=(const Residue& rhs) const { return !(*this == rhs); }

    // Bypasses the primality check; for internal hot paths where the modulus
    // has already been validated.
    static Residue raw(std::uint32_t value, std::uint32_t modulus) {
        Residue r;
        r.value_ = value;
        r.modulus_ = modulus;
        return r;
    }

  private:
    Residue() : value_(0), modulus_(2) {}

    void require_same(const Residue& rhs) const {
        if (modulus_ != rhs.modulus_)
            throw ModulusMismatch("residues have different moduli");
    }

    std::uint32_t value_;
    std::uint32_t modulus_;
};

} // namespace matsum
