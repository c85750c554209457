#include "matsum/embed.hpp"

namespace matsum {

const char* embedding_tag(Embedding e) {
    switch (e) {
        case Embedding::MatrixWithInverse: return "g";
        case Embedding::MatrixEntries: return "h";
        case Embedding::SpecialMatrixEntries: return "s";
        case Embedding::HyperbolaPair: return "gt";
        case Embedding::UnitWithInverse: return "f";
    }
    return "?";
}

Embedding embedding_from_tag(const std::string& tag) {
    if (tag == "g") return Embedding::MatrixWithInverse;
    if (tag == "h") return Embedding::MatrixEntries;
    if (tag == "s") return Embedding::SpecialMatrixEntries;
    if (tag == "gt") return Embedding::HyperbolaPair;
    if (tag == "f") return Embedding::UnitWithInverse;
    throw ConfigError("unknown embedding '" + tag + "' (expected g|h|s|gt|f)");
}

int embedding_dim(Embedding e, int n) {
    switch (e) {
        case Embedding::MatrixWithInverse:
        case Embedding::HyperbolaPair: return 2 * n * n;
        case Embedding::MatrixEntries:
        case Embedding::SpecialMatrixEntries: return n * n;
        case Embedding::UnitWithInverse: return 2;
    }
    return 0;
}

GroupKind embedding_default_group(Embedding e) {
    return e == Embedding::SpecialMatrixEntries ? GroupKind::SpecialLinear
                                                : GroupKind::GeneralLinear;
}

bool embedding_allows_group(Embedding e, GroupKind kind) {
    switch (e) {
        case Embedding::MatrixWithInverse:
        case Embedding::HyperbolaPair:
        case Embedding::MatrixEntries:
            return kind == GroupKind::GeneralLinear || kind == GroupKind::SpecialLinear;
        case Embedding::SpecialMatrixEntries:
            return kind == GroupKind::SpecialLinear;
        case Embedding::UnitWithInverse:
            return false; // not a matrix domain
    }
    return false;
}

bool embedding_needs_aux(Embedding e) { return e == Embedding::HyperbolaPair; }

namespace {

UnitPoint interleaved_point(const FpMatrix& a, const FpMatrix& b) {
    const int n = a.n();
    UnitPoint pt;
    pt.k = 2 * n * n;
    pt.modulus = a.modulus();
    pt.numerators.resize(pt.k);
    fill_coords(Embedding::MatrixWithInverse, a, &b, pt.numerators.data());
    return pt;
}

} // namespace

void fill_coords(Embedding e, const FpMatrix& x, const FpMatrix* second, std::uint32_t* out) {
    const int n = x.n();
    switch (e) {
        case Embedding::MatrixWithInverse:
        case Embedding::HyperbolaPair: {
            int t = 0;
            for (int i = 0; i < n; ++i) {
                for (int j = 0; j < n; ++j) out[t++] = x.at(i, j);
                for (int j = 0; j < n; ++j) out[t++] = second->at(i, j);
            }
            return;
        }
        case Embedding::MatrixEntries:
        case Embedding::SpecialMatrixEntries: {
            const int nn = n * n;
            for (int i = 0; i < nn; ++i) out[i] = x.data()[i];
            return;
        }
        case Embedding::UnitWithInverse:
            throw ConfigError("unit embedding has no matrix coordinates");
    }
}

UnitPoint embed_matrix_with_inverse(const FpMatrix& a) {
    return interleaved_point(a, inverse(a));
}

UnitPoint embed_matrix_entries(const FpMatrix& a) {
    if (det_value(a) == 0)
        throw MembershipViolation("matrix-entries embedding requires an invertible matrix");
    UnitPoint pt;
    pt.k = a.n() * a.n();
    pt.modulus = a.modulus();
    pt.numerators.assign(a.data(), a.data() + pt.k);
    return pt;
}

UnitPoint embed_special_matrix_entries(const FpMatrix& a) {
    if (det_value(a) != 1)
        throw MembershipViolation("determinant-one embedding requires det = 1");
    UnitPoint pt;
    pt.k = a.n() * a.n();
    pt.modulus = a.modulus();
    pt.numerators.assign(a.data(), a.data() + pt.k);
    return pt;
}

UnitPoint embed_hyperbola_pair(const FpMatrix& a, const FpMatrix& c) {
    if (det_value(c) == 0) throw SingularMatrix("hyperbola matrix C must be invertible");
    FpMatrix b = mat_mul(c, inverse(a)); // BA = C
    return interleaved_point(a, b);
}

UnitPoint embed_unit_with_inverse(std::uint64_t x, std::uint64_t modulus) {
    if (modulus < 2) throw ConfigError("modulus must be at least 2");
    if (modulus > kMaxPrime) throw OverflowError("modulus exceeds the scalar cap");
    x %= modulus;
    std::uint64_t x_inv = inv_mod_u64(x, modulus); // throws NotAUnit
    UnitPoint pt;
    pt.k = 2;
    pt.modulus = static_cast<std::uint32_t>(modulus);
    pt.numerators = {static_cast<std::uint32_t>(x), static_cast<std::uint32_t>(x_inv)};
    return pt;
}

UnitPoint embed_point(Embedding e, const FpMatrix& a, const FpMatrix* aux) {
    switch (e) {
        case Embedding::MatrixWithInverse: return embed_matrix_with_inverse(a);
        case Embedding::MatrixEntries: return embed_matrix_entries(a);
        case Embedding::SpecialMatrixEntries: return embed_special_matrix_entries(a);
        case Embedding::HyperbolaPair:
            if (!aux) throw ConfigError("hyperbola embedding needs the auxiliary matrix C");
            return embed_hyperbola_pair(a, *aux);
        case Embedding::UnitWithInverse:
            throw ConfigError("unit embedding takes an integer, not a matrix");
    }
    throw ConfigError("bad embedding");
}

} // namespace matsum
