#include <doctest.h>

#include "matsum/fp_matrix.hpp"
#include "matsum/rng.hpp"
#include "oracles.hpp"

using namespace matsum;

namespace {

FpMatrix from_rows(std::uint32_t p, std::initializer_list<std::initializer_list<int>> rows) {
    const int n = static_cast<int>(rows.size());
    FpMatrix m(n, p);
    int i = 0;
    for (const auto& row : rows) {
        int j = 0;
        for (int v : row) m.set(i, j++, static_cast<std::uint64_t>(((v % int(p)) + int(p)) % int(p)));
        ++i;
    }
    return m;
}

oracle::Mat to_oracle(const FpMatrix& m) {
    oracle::Mat out(m.n(), std::vector<long long>(m.n()));
    for (int i = 0; i < m.n(); ++i)
        for (int j = 0; j < m.n(); ++j) out[i][j] = m.at(i, j);
    return out;
}

} // namespace

TEST_CASE("primality is enforced at construction") {
    CHECK_THROWS_AS(Residue(1, 4), ConfigError);
    CHECK_THROWS_AS(Residue(0, 1), ConfigError);
    CHECK_THROWS_AS(FpMatrix(2, 9), ConfigError);
    CHECK_NOTHROW(Residue(5, 2147483647)); // 2^31 - 1 is prime
    CHECK_THROWS_AS(Residue(0, 4294967291ull), OverflowError); // prime but over the cap
    CHECK(is_prime_u64(2));
    CHECK(is_prime_u64(2147483647ull));
    CHECK_FALSE(is_prime_u64(2147483647ull * 3));
    CHECK_FALSE(is_prime_u64(1));
    CHECK_FALSE(is_prime_u64(3215031751ull)); // strong pseudoprime to bases 2,3,5,7
}

TEST_CASE("residue arithmetic stays canonical") {
    Residue a(3, 5), b(4, 5);
    CHECK((a + b).value() == 2);
    CHECK((a - b).value() == 4);
    CHECK((a * b).value() == 2);
    CHECK(a.inverse().value() == 2);
    CHECK(a.negate().value() == 2);
    CHECK(Residue(0, 5).negate().value() == 0);
    CHECK_THROWS_AS(Residue(0, 5).inverse(), NotAUnit);
    CHECK_THROWS_AS(a + Residue(1, 7), ModulusMismatch);
}

TEST_CASE("mat_mul identities and the worked 2x2 product") {
    FpMatrix a = from_rows(5, {{1, 2}, {3, 4}});
    FpMatrix id = FpMatrix::identity(2, 5);
    CHECK(mat_mul(id, a) == a);
    CHECK(mat_mul(a, id) == a);
    CHECK(mat_mul(FpMatrix::zero(2, 5), a) == FpMatrix::zero(2, 5));

    FpMatrix b = from_rows(5, {{3, 1}, {4, 2}});
    CHECK(mat_mul(a, b) == id); // (1,2;3,4)(3,1;4,2) = I mod 5

    CHECK_THROWS_AS(mat_mul(a, FpMatrix(3, 5)), DimensionMismatch);
    CHECK_THROWS_AS(mat_mul(a, FpMatrix(2, 7)), ModulusMismatch);
}

TEST_CASE("mat_mul agrees with schoolbook multiplication") {
    SplitMix64 rng(0x11);
    for (std::uint32_t p : {2u, 5u, 31u, 1009u}) {
        for (int n = 1; n <= 4; ++n) {
            for (int trial = 0; trial < 20; ++trial) {
                FpMatrix a(n, p), b(n, p);
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j) {
                        a.set(i, j, rng.next_below(p));
                        b.set(i, j, rng.next_below(p));
                    }
                oracle::Mat expect = oracle::mul(to_oracle(a), to_oracle(b), p);
                FpMatrix got = mat_mul(a, b);
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j) CHECK(got.at(i, j) == expect[i][j]);
            }
        }
    }
}

TEST_CASE("determinant basics") {
    CHECK(det(FpMatrix::identity(3, 7)).value() == 1);
    FpMatrix equal_rows = from_rows(7, {{2, 3}, {2, 3}});
    CHECK(det(equal_rows).value() == 0);
    CHECK(det(from_rows(5, {{1, 2}, {3, 4}})).value() == 3); // 4 - 6 = -2 = 3 mod 5
}

TEST_CASE("determinant agrees with Laplace expansion, n up to 4") {
    SplitMix64 rng(0x22);
    for (std::uint32_t p : {2u, 3u, 13u, 101u}) {
        for (int n = 1; n <= 4; ++n) {
            for (int trial = 0; trial < 30; ++trial) {
                FpMatrix a(n, p);
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j) a.set(i, j, rng.next_below(p));
                CHECK(det_value(a) == oracle::det(to_oracle(a), p));
            }
        }
    }
}

TEST_CASE("det is multiplicative on random pairs") {
    SplitMix64 rng(0x33);
    for (int trial = 0; trial < 50; ++trial) {
        const std::uint32_t p = 11;
        const int n = 1 + int(rng.next_below(4));
        FpMatrix a(n, p), b(n, p);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                a.set(i, j, rng.next_below(p));
                b.set(i, j, rng.next_below(p));
            }
        CHECK(det_value(mat_mul(a, b)) == std::uint64_t(det_value(a)) * det_value(b) % p);
    }
}

TEST_CASE("inverse round-trips and matches the adjugate oracle") {
    CHECK(inverse(FpMatrix::identity(2, 5)) == FpMatrix::identity(2, 5));
    CHECK(inverse(from_rows(5, {{1, 2}, {3, 4}})) == from_rows(5, {{3, 1}, {4, 2}}));
    CHECK_FALSE(try_inverse(from_rows(5, {{1, 2}, {2, 4}})).has_value());
    CHECK_THROWS_AS(inverse(from_rows(5, {{1, 2}, {2, 4}})), SingularMatrix);

    SplitMix64 rng(0x44);
    for (std::uint32_t p : {2u, 3u, 7u, 31u}) {
        for (int n = 1; n <= 4; ++n) {
            int found = 0;
            while (found < 15) {
                FpMatrix a(n, p);
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j) a.set(i, j, rng.next_below(p));
                auto inv = try_inverse(a);
                auto expect = oracle::inverse(to_oracle(a), p);
                CHECK(inv.has_value() == expect.has_value());
                if (!inv) continue;
                ++found;
                CHECK(mat_mul(a, *inv) == FpMatrix::identity(n, p));
                CHECK(mat_mul(*inv, a) == FpMatrix::identity(n, p));
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j) CHECK(inv->at(i, j) == (*expect)[i][j]);
            }
        }
    }
}

TEST_CASE("inverse of a determinant-one 2x2 matrix is (d,-b;-c,a)") {
    const std::uint32_t p = 13;
    SplitMix64 rng(0x55);
    int found = 0;
    while (found < 25) {
        FpMatrix m(2, p);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) m.set(i, j, rng.next_below(p));
        if (det_value(m) != 1) continue;
        ++found;
        FpMatrix inv = inverse(m);
        CHECK(inv.at(0, 0) == m.at(1, 1));
        CHECK(inv.at(0, 1) == (p - m.at(0, 1)) % p);
        CHECK(inv.at(1, 0) == (p - m.at(1, 0)) % p);
        CHECK(inv.at(1, 1) == m.at(0, 0));
    }
}

TEST_CASE("entrywise dot product") {
    FpMatrix u = from_rows(5, {{1, 2}, {3, 4}});
    FpMatrix x = from_rows(5, {{4, 3}, {2, 1}});
    CHECK(entrywise_dot(u, x).value() == 0); // 4+6+6+4 = 20
    CHECK(entrywise_dot(FpMatrix::zero(2, 5), x).value() == 0);
    CHECK(entrywise_dot(FpMatrix::identity(2, 5), FpMatrix::identity(2, 5)).value() == 2);
    CHECK_THROWS_AS(entrywise_dot(u, FpMatrix(3, 5)), DimensionMismatch);

    // Bilinearity: dot(U + U', X) = dot(U, X) + dot(U', X).
    SplitMix64 rng(0x66);
    const std::uint32_t p = 7;
    for (int trial = 0; trial < 40; ++trial) {
        FpMatrix a(2, p), b(2, p), y(2, p), sum(2, p);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                a.set(i, j, rng.next_below(p));
                b.set(i, j, rng.next_below(p));
                y.set(i, j, rng.next_below(p));
                sum.set(i, j, a.at(i, j) + b.at(i, j));
            }
        CHECK(entrywise_dot(sum, y).value() ==
              (entrywise_dot(a, y).value() + entrywise_dot(b, y).value()) % p);
    }
}

TEST_CASE("scalar ops are exact near the modulus cap") {
    const std::uint32_t p = 2147483647u; // 2^31 - 1
    Residue a(p - 1, p), b(p - 2, p);
    CHECK((a * b).value() == 2); // (p-1)(p-2) = 2 mod p
    FpMatrix m(4, p);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m.set(i, j, p - 1);
    CHECK(entrywise_dot_value(m, m) == 16); // 16 (p-1)^2 = 16 mod p
}
