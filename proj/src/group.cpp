#include "matsum/group.hpp"

#include "matsum/parallel.hpp"

namespace matsum {

const char* group_tag(GroupKind k) {
    switch (k) {
        case GroupKind::FullMatrixSet: return "m";
        case GroupKind::GeneralLinear: return "gl";
        case GroupKind::SpecialLinear: return "sl";
        case GroupKind::Singular: return "z";
    }
    return "?";
}

GroupKind group_from_tag(const std::string& tag) {
    if (tag == "m") return GroupKind::FullMatrixSet;
    if (tag == "gl") return GroupKind::GeneralLinear;
    if (tag == "sl") return GroupKind::SpecialLinear;
    if (tag == "z") return GroupKind::Singular;
    throw ConfigError("unknown group tag '" + tag + "' (expected m|gl|sl|z)");
}

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
    unsigned __int128 r = (unsigned __int128)a * b;
    if (r > (unsigned __int128)INT64_MAX)
        throw OverflowError("group order exceeds 64 bits");
    return static_cast<std::uint64_t>(r);
}

std::uint64_t checked_pow(std::uint64_t base, int exp) {
    std::uint64_t r = 1;
    for (int i = 0; i < exp; ++i) r = checked_mul(r, base);
    return r;
}

} // namespace

std::uint64_t base_space_size(int n, std::uint32_t p) {
    if (n < 1 || n > kMaxN) throw DimensionMismatch("dimension out of range");
    return checked_pow(p, n * n);
}

std::uint64_t group_order(GroupKind kind, int n, std::uint32_t p) {
    check_prime_modulus(p);
    const std::uint64_t m_order = base_space_size(n, p);
    if (kind == GroupKind::FullMatrixSet) return m_order;
    // |GL_n| = prod_{k=0}^{n-1} (p^n - p^k)
    std::uint64_t p_n = checked_pow(p, n);
    std::uint64_t gl = 1;
    std::uint64_t p_k = 1;
    for (int k = 0; k < n; ++k) {
        gl = checked_mul(gl, p_n - p_k);
        p_k *= p;
    }
    switch (kind) {
        case GroupKind::GeneralLinear: return gl;
        case GroupKind::SpecialLinear: return gl / (p - 1);
        case GroupKind::Singular: return m_order - gl;
        default: return m_order;
    }
}

void check_desk_scale(int n, std::uint32_t p, bool override_scale) {
    if (override_scale) return;
    unsigned __int128 size = 1;
    for (int i = 0; i < n * n; ++i) size *= p;
    if (size > kDeskScaleLimit)
        throw DeskScaleExceeded("p^(n^2) exceeds 2^40; pass the scale override to proceed");
}

bool member_of(GroupKind kind, std::uint32_t det_val) {
    switch (kind) {
        case GroupKind::FullMatrixSet: return true;
        case GroupKind::GeneralLinear: return det_val != 0;
        case GroupKind::SpecialLinear: return det_val == 1;
        case GroupKind::Singular: return det_val == 0;
    }
    return false;
}

std::uint64_t count_in_chunk(GroupKind kind, int n, std::uint32_t p, EnumChunk chunk) {
    std::uint64_t count = 0;
    for_each_in_chunk(kind, n, p, chunk, [&](const FpMatrix&) { ++count; });
    return count;
}

std::uint64_t streamed_order(GroupKind kind, int n, std::uint32_t p, int threads,
                             bool override_scale) {
    check_prime_modulus(p);
    check_desk_scale(n, p, override_scale);
    const std::uint64_t total = base_space_size(n, p);
    const std::uint64_t n_chunks = parallel_chunk_count(total, threads);
    std::vector<std::uint64_t> partial(n_chunks, 0);
    parallel_chunks(total, threads, 4,
                    [&](std::uint64_t c, std::uint64_t start, std::uint64_t end) {
        partial[c] = count_in_chunk(kind, n, p, EnumChunk{start, end});
    });
    std::uint64_t count = 0;
    for (std::uint64_t c : partial) count += c;
    return count;
}

} // namespace matsum
