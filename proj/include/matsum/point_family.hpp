#pragma once

#include <cstdint>
#include <optional>

#include "matsum/embed.hpp"
#include "matsum/group.hpp"
#include "matsum/residue.hpp"

namespace matsum {

// A finite family of exact points in [0,1)^k with common denominator
// `modulus`: the image of a matrix group under one of the embeddings, or of
// the units mod m under the classical pair map. Streaming and chunkable over
// the underlying base index space.
struct PointFamily {
    Embedding embedding;
    GroupKind kind = GroupKind::GeneralLinear; // ignored for UnitWithInverse
    int n = 1;                                 // ignored for UnitWithInverse
    std::uint32_t modulus = 2;
    std::optional<FpMatrix> aux;               // C for HyperbolaPair

    int dim() const {
        return embedding_dim(embedding, n);
    }

    // Size of the base index space the chunking runs over.
    std::uint64_t base_size() const {
        if (embedding == Embedding::UnitWithInverse) return modulus;
        return base_space_size(n, modulus);
    }

    // Exact number of points (= member count; the embeddings are injective).
    std::uint64_t size() const;

    void validate() const;
};

PointFamily matrix_family(Embedding e, GroupKind kind, int n, std::uint32_t p,
                          std::optional<FpMatrix> aux = std::nullopt);
PointFamily unit_family(std::uint32_t modulus);

// Streams the coordinate vectors (k numerators each) of the family members
// whose base index lies in [start, end), in index order.
template <typename Fn>
void family_scan_chunk(const PointFamily& fam, std::uint64_t start, std::uint64_t end, Fn&& fn) {
    const int k = fam.dim();
    std::uint32_t coords[2 * kMaxN * kMaxN];
    if (fam.embedding == Embedding::UnitWithInverse) {
        const std::uint64_t m = fam.modulus;
        for (std::uint64_t x = start; x < end; ++x) {
            if (x == 0 || gcd_u64(x, m) != 1) continue;
            coords[0] = static_cast<std::uint32_t>(x);
            coords[1] = static_cast<std::uint32_t>(inv_mod_u64(x, m));
            fn(coords, k);
        }
        return;
    }
    const bool with_inverse = fam.embedding == Embedding::MatrixWithInverse ||
                              fam.embedding == Embedding::HyperbolaPair;
    const bool hyperbola = fam.embedding == Embedding::HyperbolaPair;
    for_each_in_chunk(fam.kind, fam.n, fam.modulus, EnumChunk{start, end}, [&](const FpMatrix& x) {
        if (with_inverse) {
            FpMatrix second = inverse(x);
            if (hyperbola) second = mat_mul(*fam.aux, second);
            fill_coords(fam.embedding, x, &second, coords);
        } else {
            fill_coords(fam.embedding, x, nullptr, coords);
        }
        fn(coords, k);
    });
}

} // namespace matsum
