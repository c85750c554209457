#include "matsum/fp_matrix.hpp"

#include <string>

namespace matsum {

namespace {

void require_compatible(const FpMatrix& a, const FpMatrix& b) {
    if (a.n() != b.n()) throw DimensionMismatch("matrix dimensions differ");
    if (a.modulus() != b.modulus()) throw ModulusMismatch("matrix moduli differ");
}

// Accumulate a*b into acc with a lazy reduction; exact for any term count
// and any p < 2^31.
inline void add_mul(std::uint64_t& acc, std::uint32_t a, std::uint32_t b, std::uint32_t p) {
    acc += std::uint64_t(a) * b;
    if (acc >= (1ull << 63)) acc %= p;
}

} // namespace

FpMatrix::FpMatrix(int n, std::uint32_t p) : n_(n), p_(p) {
    if (n < 1 || n > kMaxN)
        throw DimensionMismatch("matrix dimension must be in [1, " + std::to_string(kMaxN) + "]");
    check_prime_modulus(p);
    e_.fill(0);
}

FpMatrix FpMatrix::identity(int n, std::uint32_t p) {
    FpMatrix m(n, p);
    for (int i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

FpMatrix FpMatrix::unit(int n, std::uint32_t p, int r, int c) {
    FpMatrix m(n, p);
    m.set(r, c, 1);
    return m;
}

bool FpMatrix::operator==(const FpMatrix& rhs) const {
    if (n_ != rhs.n_ || p_ != rhs.p_) return false;
    for (int i = 0; i < n_ * n_; ++i)
        if (e_[i] != rhs.e_[i]) return false;
    return true;
}

bool FpMatrix::is_zero() const {
    for (int i = 0; i < n_ * n_; ++i)
        if (e_[i] != 0) return false;
    return true;
}

FpMatrix mat_mul(const FpMatrix& a, const FpMatrix& b) {
    require_compatible(a, b);
    const int n = a.n();
    const std::uint32_t p = a.modulus();
    FpMatrix out(n, p);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            std::uint64_t acc = 0;
            for (int k = 0; k < n; ++k) add_mul(acc, a.at(i, k), b.at(k, j), p);
            out.set(i, j, acc % p);
        }
    }
    return out;
}

std::uint32_t det_value(const FpMatrix& a) {
    const int n = a.n();
    const std::uint64_t p = a.modulus();
    if (n == 1) return a.at(0, 0);
    if (n == 2) {
        std::uint64_t pos = std::uint64_t(a.at(0, 0)) * a.at(1, 1) % p;
        std::uint64_t neg = std::uint64_t(a.at(0, 1)) * a.at(1, 0) % p;
        return static_cast<std::uint32_t>((pos + p - neg) % p);
    }
    if (n == 3) {
        auto m2 = [&](int r1, int c1, int r2, int c2) {
            std::uint64_t pos = std::uint64_t(a.at(r1, c1)) * a.at(r2, c2) % p;
            std::uint64_t neg = std::uint64_t(a.at(r1, c2)) * a.at(r2, c1) % p;
            return (pos + p - neg) % p;
        };
        std::uint64_t acc = std::uint64_t(a.at(0, 0)) * m2(1, 1, 2, 2) % p;
        acc += (p - std::uint64_t(a.at(0, 1)) * m2(1, 0, 2, 2) % p);
        acc += std::uint64_t(a.at(0, 2)) * m2(1, 0, 2, 1) % p;
        return static_cast<std::uint32_t>(acc % p);
    }
    // Gaussian elimination; pivots inverted mod p.
    std::array<std::uint64_t, kMaxN * kMaxN> w;
    for (int i = 0; i < n * n; ++i) w[i] = a.data()[i];
    std::uint64_t det_acc = 1;
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int row = col; row < n; ++row) {
            if (w[row * n + col] != 0) {
                pivot = row;
                break;
            }
        }
        if (pivot < 0) return 0;
        if (pivot != col) {
            for (int j = col; j < n; ++j) std::swap(w[pivot * n + j], w[col * n + j]);
            det_acc = p - det_acc;
            if (det_acc == p) det_acc = 0;
        }
        std::uint64_t pv = w[col * n + col];
        det_acc = det_acc * pv % p;
        std::uint64_t pv_inv = inv_mod_u64(pv, p);
        for (int row = col + 1; row < n; ++row) {
            std::uint64_t factor = w[row * n + col] * pv_inv % p;
            if (factor == 0) continue;
            for (int j = col; j < n; ++j) {
                std::uint64_t sub = factor * w[col * n + j] % p;
                w[row * n + j] = (w[row * n + j] + p - sub) % p;
            }
        }
    }
    return static_cast<std::uint32_t>(det_acc % p);
}

Residue det(const FpMatrix& a) {
    return Residue::raw(det_value(a), a.modulus());
}

std::optional<FpMatrix> try_inverse(const FpMatrix& a) {
    const int n = a.n();
    const std::uint64_t p = a.modulus();
    if (n == 1) {
        if (a.at(0, 0) == 0) return std::nullopt;
        FpMatrix out(1, a.modulus());
        out.set(0, 0, inv_mod_u64(a.at(0, 0), p));
        return out;
    }
    if (n == 2) {
        std::uint32_t d = det_value(a);
        if (d == 0) return std::nullopt;
        std::uint64_t d_inv = inv_mod_u64(d, p);
        FpMatrix out(2, a.modulus());
        out.set(0, 0, a.at(1, 1) * d_inv % p);
        out.set(0, 1, (p - a.at(0, 1)) % p * d_inv % p);
        out.set(1, 0, (p - a.at(1, 0)) % p * d_inv % p);
        out.set(1, 1, a.at(0, 0) * d_inv % p);
        return out;
    }
    if (n == 3) {
        // Adjugate route: cofactors of the transpose.
        auto m2 = [&](int r1, int c1, int r2, int c2) {
            std::uint64_t pos = std::uint64_t(a.at(r1, c1)) * a.at(r2, c2) % p;
            std::uint64_t neg = std::uint64_t(a.at(r1, c2)) * a.at(r2, c1) % p;
            return (pos + p - neg) % p;
        };
        std::uint32_t d = det_value(a);
        if (d == 0) return std::nullopt;
        std::uint64_t d_inv = inv_mod_u64(d, p);
        FpMatrix out(3, a.modulus());
        static const int idx[3][2] = {{1, 2}, {0, 2}, {0, 1}};
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                std::uint64_t minor = m2(idx[j][0], idx[i][0], idx[j][1], idx[i][1]);
                if ((i + j) & 1) minor = (p - minor) % p;
                out.set(i, j, minor * d_inv % p);
            }
        }
        return out;
    }
    // Gauss-Jordan on [A | I].
    std::array<std::uint64_t, kMaxN * 2 * kMaxN> w;
    const int cols = 2 * n;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) w[i * cols + j] = a.at(i, j);
        for (int j = 0; j < n; ++j) w[i * cols + n + j] = (i == j) ? 1 : 0;
    }
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int row = col; row < n; ++row) {
            if (w[row * cols + col] != 0) {
                pivot = row;
                break;
            }
        }
        if (pivot < 0) return std::nullopt;
        if (pivot != col)
            for (int j = 0; j < cols; ++j) std::swap(w[pivot * cols + j], w[col * cols + j]);
        std::uint64_t pv_inv = inv_mod_u64(w[col * cols + col], p);
        for (int j = 0; j < cols; ++j) w[col * cols + j] = w[col * cols + j] * pv_inv % p;
        for (int row = 0; row < n; ++row) {
            if (row == col) continue;
            std::uint64_t factor = w[row * cols + col];
            if (factor == 0) continue;
            for (int j = 0; j < cols; ++j) {
                std::uint64_t sub = factor * w[col * cols + j] % p;
                w[row * cols + j] = (w[row * cols + j] + p - sub) % p;
            }
        }
    }
    FpMatrix out(n, a.modulus());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out.set(i, j, w[i * cols + n + j]);
    return out;
}

FpMatrix inverse(const FpMatrix& a) {
    auto inv = try_inverse(a);
    if (!inv) throw SingularMatrix("matrix is singular mod " + std::to_string(a.modulus()));
    return *inv;
}

std::uint32_t entrywise_dot_value(const FpMatrix& u, const FpMatrix& x) {
    require_compatible(u, x);
    const int nn = u.n() * u.n();
    const std::uint32_t p = u.modulus();
    std::uint64_t acc = 0;
    const std::uint32_t* ue = u.data();
    const std::uint32_t* xe = x.data();
    for (int i = 0; i < nn; ++i) add_mul(acc, ue[i], xe[i], p);
    return static_cast<std::uint32_t>(acc % p);
}

Residue entrywise_dot(const FpMatrix& u, const FpMatrix& x) {
    return Residue::raw(entrywise_dot_value(u, x), u.modulus());
}

} // namespace matsum
