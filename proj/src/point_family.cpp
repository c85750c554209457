#include "matsum/point_family.hpp"

namespace matsum {

std::uint64_t PointFamily::size() const {
    if (embedding == Embedding::UnitWithInverse) {
        // Euler phi by trial-division factorization.
        std::uint64_t m = modulus, phi = m;
        for (std::uint64_t d = 2; d * d <= m; ++d) {
            if (m % d == 0) {
                phi -= phi / d;
                while (m % d == 0) m /= d;
            }
        }
        if (m > 1) phi -= phi / m;
        return phi;
    }
    return group_order(kind, n, modulus);
}

void PointFamily::validate() const {
    if (embedding == Embedding::UnitWithInverse) {
        if (modulus < 2) throw ConfigError("unit family needs modulus >= 2");
        return;
    }
    check_prime_modulus(modulus);
    if (!embedding_allows_group(embedding, kind))
        throw MembershipViolation(std::string("embedding '") + embedding_tag(embedding) +
                                  "' is not defined on group '" + group_tag(kind) + "'");
    if (embedding_needs_aux(embedding)) {
        if (!aux) throw ConfigError("hyperbola embedding needs the auxiliary matrix C");
        if (aux->n() != n || aux->modulus() != modulus)
            throw DimensionMismatch("auxiliary matrix does not match (n, p)");
        if (det_value(*aux) == 0) throw SingularMatrix("auxiliary matrix C is singular");
    }
}

PointFamily matrix_family(Embedding e, GroupKind kind, int n, std::uint32_t p,
                          std::optional<FpMatrix> aux) {
    PointFamily fam;
    fam.embedding = e;
    fam.kind = kind;
    fam.n = n;
    fam.modulus = p;
    fam.aux = std::move(aux);
    fam.validate();
    return fam;
}

PointFamily unit_family(std::uint32_t modulus) {
    PointFamily fam;
    fam.embedding = Embedding::UnitWithInverse;
    fam.modulus = modulus;
    fam.validate();
    return fam;
}

} // namespace matsum
