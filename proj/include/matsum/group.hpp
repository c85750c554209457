#pragma once

#include <cstdint>
#include <string>

#include "matsum/fp_matrix.hpp"

namespace matsum {

// M_n, GL_n, SL_n and the singular complement Z_n = M_n \ GL_n.
enum class GroupKind { FullMatrixSet, GeneralLinear, SpecialLinear, Singular };

const char* group_tag(GroupKind k);           // "m" | "gl" | "sl" | "z"
GroupKind group_from_tag(const std::string&); // throws ConfigError

// Half-open index range over the p^(n^2) base ordering of M_n.
struct EnumChunk {
    std::uint64_t start = 0;
    std::uint64_t end = 0;
};

// p^(n^2); throws OverflowError past 2^63.
std::uint64_t base_space_size(int n, std::uint32_t p);

// Exact cardinalities from the classical formulas:
//   |M_n| = p^(n^2),  |GL_n| = prod_{k<n} (p^n - p^k),
//   |SL_n| = |GL_n| / (p - 1),  |Z_n| = |M_n| - |GL_n|.
std::uint64_t group_order(GroupKind kind, int n, std::uint32_t p);

// Enumeration refuses p^(n^2) > 2^40 unless overridden.
inline constexpr std::uint64_t kDeskScaleLimit = 1ull << 40;

void check_desk_scale(int n, std::uint32_t p, bool override_scale);

bool member_of(GroupKind kind, std::uint32_t det_val);

// Streams every member of the kind whose base-p row-major index lies in
// [chunk.start, chunk.end); the base ordering is lexicographic over the n^2
// entries with a_11 most significant. Stateless given the chunk.
template <typename Fn>
void for_each_in_chunk(GroupKind kind, int n, std::uint32_t p, EnumChunk chunk, Fn&& fn) {
    const std::uint64_t total = base_space_size(n, p);
    if (chunk.start > chunk.end || chunk.end > total)
        throw OverflowError("enumeration chunk outside [0, p^(n^2)]");
    const int nn = n * n;
    FpMatrix m(n, p);
    std::uint64_t idx = chunk.start;
    // Decode the starting index into mixed-radix digits, least significant last.
    std::uint64_t rest = idx;
    for (int t = nn - 1; t >= 0; --t) {
        m.data()[t] = static_cast<std::uint32_t>(rest % p);
        rest /= p;
    }
    const bool need_det = kind != GroupKind::FullMatrixSet;
    for (; idx < chunk.end; ++idx) {
        if (!need_det || member_of(kind, det_value(m))) fn(m);
        // Odometer increment on the entry digits.
        for (int t = nn - 1; t >= 0; --t) {
            if (++m.data()[t] < p) break;
            m.data()[t] = 0;
        }
    }
}

template <typename Fn>
void for_each_member(GroupKind kind, int n, std::uint32_t p, Fn&& fn) {
    for_each_in_chunk(kind, n, p, EnumChunk{0, base_space_size(n, p)}, std::forward<Fn>(fn));
}

// Streamed membership count over a chunk.
std::uint64_t count_in_chunk(GroupKind kind, int n, std::uint32_t p, EnumChunk chunk);

// Full streamed count: enumerates M_n and filters. The brute-force
// counterpart of group_order.
std::uint64_t streamed_order(GroupKind kind, int n, std::uint32_t p, int threads = 1,
                             bool override_scale = false);

} // namespace matsum
