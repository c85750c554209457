#include "matsum/charsum.hpp"

#include <string>

#include "matsum/parallel.hpp"

namespace matsum {

namespace {

void validate_forms(GroupKind kind, int n, std::uint32_t p, const std::vector<LinearForm>& forms) {
    const bool invertible_domain =
        kind == GroupKind::GeneralLinear || kind == GroupKind::SpecialLinear;
    for (const LinearForm& f : forms) {
        if (f.u.n() != n || f.u.modulus() != p)
            throw DimensionMismatch("form matrix U does not match (n, p)");
        if (f.v) {
            if (f.v->n() != n || f.v->modulus() != p)
                throw DimensionMismatch("form matrix V does not match (n, p)");
            if (!invertible_domain)
                throw MembershipViolation("forms with an inverse part need an invertible domain");
        }
        if (f.m) {
            if (!f.v) throw ConfigError("form has M but no V");
            if (f.m->n() != n || f.m->modulus() != p)
                throw DimensionMismatch("form matrix M does not match (n, p)");
            if (det_value(*f.m) == 0) throw SingularMatrix("form matrix M is singular");
        }
    }
}

} // namespace

std::vector<FreqVector> multi_histogram(GroupKind kind, int n, std::uint32_t p,
                                        const std::vector<LinearForm>& forms,
                                        const SumOptions& opt) {
    check_prime_modulus(p);
    validate_forms(kind, n, p, forms);
    check_desk_scale(n, p, opt.override_scale);

    bool any_inverse = false;
    for (const LinearForm& f : forms) any_inverse = any_inverse || f.v.has_value();

    const std::uint64_t total = base_space_size(n, p);
    const int threads = opt.threads;
    const std::uint64_t n_chunks = parallel_chunk_count(total, threads);
    std::vector<std::vector<FreqVector>> banks(n_chunks,
                                               std::vector<FreqVector>(forms.size(), FreqVector(p)));

    parallel_chunks(total, threads, 4,
                    [&](std::uint64_t c, std::uint64_t start, std::uint64_t end) {
        auto& bank = banks[c];
        for_each_in_chunk(kind, n, p, EnumChunk{start, end}, [&](const FpMatrix& x) {
            std::optional<FpMatrix> inv;
            if (any_inverse) inv = inverse(x);
            for (std::size_t f = 0; f < forms.size(); ++f) {
                const LinearForm& form = forms[f];
                std::uint64_t phase = entrywise_dot_value(form.u, x);
                if (form.v) {
                    const FpMatrix rhs = form.m ? mat_mul(*form.m, *inv) : *inv;
                    phase += entrywise_dot_value(*form.v, rhs);
                    if (phase >= p) phase -= p;
                }
                ++bank[f].counts[phase];
            }
        });
    });

    std::vector<FreqVector> out(forms.size(), FreqVector(p));
    for (const auto& bank : banks)
        for (std::size_t f = 0; f < forms.size(); ++f) out[f].merge(bank[f]);
    return out;
}

FreqVector s_freq(GroupKind kind, const FpMatrix& u, const SumOptions& opt) {
    std::vector<LinearForm> forms{LinearForm(u)};
    return multi_histogram(kind, u.n(), u.modulus(), forms, opt)[0];
}

FreqVector k_gl(const FpMatrix& u, const FpMatrix& v, const FpMatrix& m, const SumOptions& opt) {
    std::vector<LinearForm> forms{LinearForm(u, v, m)};
    return multi_histogram(GroupKind::GeneralLinear, u.n(), u.modulus(), forms, opt)[0];
}

FreqVector k_sl(const FpMatrix& u, const FpMatrix& v, const SumOptions& opt) {
    std::vector<LinearForm> forms{LinearForm(u, v)};
    return multi_histogram(GroupKind::SpecialLinear, u.n(), u.modulus(), forms, opt)[0];
}

ComplexValue classical_kloosterman(std::uint64_t u, std::uint64_t v, std::uint32_t p) {
    check_prime_modulus(p);
    FreqVector f(p);
    for (std::uint64_t x = 1; x < p; ++x) {
        std::uint64_t phase = (u % p * x + v % p * inv_mod_u64(x, p)) % p;
        ++f.counts[phase];
    }
    return freq_to_complex(f);
}

FreqVector hyper_kloosterman_freq(const std::vector<Residue>& a, const SumOptions& opt) {
    if (a.empty()) throw DimensionMismatch("hyper-Kloosterman needs at least one coefficient");
    const std::uint32_t p = a[0].modulus();
    for (const Residue& r : a)
        if (r.modulus() != p) throw ModulusMismatch("coefficients have mixed moduli");
    const int n = static_cast<int>(a.size());

    FreqVector out(p);
    if (n == 1) {
        // Only the empty product; the single factor is forced to 1.
        ++out.counts[a[0].value()];
        return out;
    }

    // (p-1)^(n-1) free factors.
    unsigned __int128 tuples_wide = 1;
    for (int i = 0; i < n - 1; ++i) tuples_wide *= (p - 1);
    if (!opt.override_scale && tuples_wide > kDeskScaleLimit)
        throw DeskScaleExceeded("(p-1)^(n-1) exceeds 2^40; pass the scale override to proceed");
    const std::uint64_t tuples = static_cast<std::uint64_t>(tuples_wide);

    // inv_table[x] = x^{-1} mod p for x in [1, p).
    std::vector<std::uint32_t> inv_table(p, 0);
    if (p > 1) inv_table[1] = 1;
    for (std::uint32_t x = 2; x < p; ++x)
        inv_table[x] = static_cast<std::uint32_t>(
            std::uint64_t(p - p / x) * inv_table[p % x] % p);

    const int threads = opt.threads;
    const std::uint64_t n_chunks = parallel_chunk_count(tuples, threads);
    std::vector<FreqVector> banks(n_chunks, FreqVector(p));

    parallel_chunks(tuples, threads, 4,
                    [&](std::uint64_t c, std::uint64_t start, std::uint64_t end) {
        FreqVector& bank = banks[c];
        // Decode start into factor digits; digit t ranges over [1, p).
        std::vector<std::uint32_t> lambda(n - 1);
        std::uint64_t rest = start;
        for (int t = n - 2; t >= 0; --t) {
            lambda[t] = static_cast<std::uint32_t>(rest % (p - 1)) + 1;
            rest /= (p - 1);
        }
        for (std::uint64_t idx = start; idx < end; ++idx) {
            std::uint64_t phase = 0;
            std::uint64_t prod = 1;
            for (int t = 0; t < n - 1; ++t) {
                phase += std::uint64_t(lambda[t]) * a[t].value() % p;
                prod = prod * lambda[t] % p;
            }
            std::uint32_t last = inv_table[prod];
            phase = (phase + std::uint64_t(last) * a[n - 1].value()) % p;
            ++bank.counts[phase];
            for (int t = n - 2; t >= 0; --t) {
                if (++lambda[t] < p) break;
                lambda[t] = 1;
            }
        }
    });

    for (const FreqVector& bank : banks) out.merge(bank);
    return out;
}

ComplexValue hyper_kloosterman(const std::vector<Residue>& a, const SumOptions& opt) {
    return freq_to_complex(hyper_kloosterman_freq(a, opt));
}

} // namespace matsum
