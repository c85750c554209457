#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "matsum/fp_matrix.hpp"
#include "matsum/group.hpp"

namespace matsum {

// A point of [0,1)^k whose coordinates are numerator/modulus fractions.
// Numerators stay exact integers; callers convert to real only at the edge.
struct UnitPoint {
    int k = 0;
    std::uint32_t modulus = 2;
    std::vector<std::uint32_t> numerators;

    double coord(int i) const { return double(numerators[i]) / double(modulus); }
};

// The unit-cube embeddings under study. CLI tags in parentheses.
enum class Embedding {
    MatrixWithInverse,   // (g)  rows of A interleaved with rows of A^{-1}, k = 2n^2
    MatrixEntries,       // (h)  rows of A only, over GL_n, k = n^2
    SpecialMatrixEntries,// (s)  rows of A only, over SL_n, k = n^2
    HyperbolaPair,       // (gt) rows of A interleaved with rows of B, BA = C, k = 2n^2
    UnitWithInverse,     // (f)  (x/m, x^{-1}/m) over (Z/mZ)^*, k = 2
};

const char* embedding_tag(Embedding e);
Embedding embedding_from_tag(const std::string& tag);
int embedding_dim(Embedding e, int n);
GroupKind embedding_default_group(Embedding e);
// Which domains an embedding can be evaluated on.
bool embedding_allows_group(Embedding e, GroupKind kind);
bool embedding_needs_aux(Embedding e);

// Row-major flattening over the displayed 2n-column layout: for each row i,
// the n entries of A's row i, then the n entries of the inverse's row i.
UnitPoint embed_matrix_with_inverse(const FpMatrix& a);
UnitPoint embed_matrix_entries(const FpMatrix& a);
UnitPoint embed_special_matrix_entries(const FpMatrix& a);
UnitPoint embed_hyperbola_pair(const FpMatrix& a, const FpMatrix& c);
// ({x/m}, {x^{-1} mod m / m}); m need not be prime, x must be a unit.
UnitPoint embed_unit_with_inverse(std::uint64_t x, std::uint64_t modulus);

UnitPoint embed_point(Embedding e, const FpMatrix& a, const FpMatrix* aux = nullptr);

// Hot-loop filler: writes the k numerators of a member into `out`.
// `second` is X^{-1} for MatrixWithInverse and C*X^{-1} for HyperbolaPair;
// ignored otherwise.
void fill_coords(Embedding e, const FpMatrix& x, const FpMatrix* second, std::uint32_t* out);

} // namespace matsum
