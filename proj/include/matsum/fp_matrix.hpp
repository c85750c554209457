#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "matsum/residue.hpp"

namespace matsum {

// Practical envelope for exhaustive work; the desk-scale guard bites long
// before larger n would.
inline constexpr int kMaxN = 6;

// An n-by-n matrix of canonical residues mod a prime p. Value type, no heap.
class FpMatrix {
  public:
    FpMatrix(int n, std::uint32_t p);

    static FpMatrix identity(int n, std::uint32_t p);
    static FpMatrix zero(int n, std::uint32_t p) { return FpMatrix(n, p); }
    // E_{rc}: single 1 at (r, c).
    static FpMatrix unit(int n, std::uint32_t p, int r, int c);

    int n() const { return n_; }
    std::uint32_t modulus() const { return p_; }

    std::uint32_t at(int r, int c) const { return e_[r * n_ + c]; }
    void set(int r, int c, std::uint64_t v) { e_[r * n_ + c] = static_cast<std::uint32_t>(v % p_); }

    const std::uint32_t* data() const { return e_.data(); }
    std::uint32_t* data() { return e_.data(); }

    bool operator==(const FpMatrix& rhs) const;
    bool operator!=(const FpMatrix& rhs) const { return !(*this == rhs); }

    bool is_zero() const;

  private:
    int n_;
    std::uint32_t p_;
    std::array<std::uint32_t, kMaxN * kMaxN> e_;
};

FpMatrix mat_mul(const FpMatrix& a, const FpMatrix& b);
Residue det(const FpMatrix& a);
// Raw determinant value for hot loops; no Residue wrapper.
std::uint32_t det_value(const FpMatrix& a);

std::optional<FpMatrix> try_inverse(const FpMatrix& a);
FpMatrix inverse(const FpMatrix& a); // throws SingularMatrix

// U . X = sum over entries of u_ij x_ij, reduced mod p.
Residue entrywise_dot(const FpMatrix& u, const FpMatrix& x);
std::uint32_t entrywise_dot_value(const FpMatrix& u, const FpMatrix& x);

} // namespace matsum
