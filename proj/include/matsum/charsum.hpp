#pragma once

#include <optional>
#include <vector>

#include "matsum/fp_matrix.hpp"
#include "matsum/freq.hpp"
#include "matsum/group.hpp"

namespace matsum {

// One additive phase over a matrix domain: U.X, plus V.(M X^{-1}) when V is
// present (M defaults to the identity).
struct LinearForm {
    FpMatrix u;
    std::optional<FpMatrix> v;
    std::optional<FpMatrix> m;

    explicit LinearForm(FpMatrix u_) : u(std::move(u_)) {}
    LinearForm(FpMatrix u_, FpMatrix v_) : u(std::move(u_)), v(std::move(v_)) {}
    LinearForm(FpMatrix u_, FpMatrix v_, FpMatrix m_)
        : u(std::move(u_)), v(std::move(v_)), m(std::move(m_)) {}
};

struct SumOptions {
    int threads = 1;
    bool override_scale = false;
};

// Histograms of several linear forms over one kind, filled in a single
// enumeration pass. Workers own disjoint chunks and per-chunk banks are
// merged by integer addition, so results are identical for any thread count.
std::vector<FreqVector> multi_histogram(GroupKind kind, int n, std::uint32_t p,
                                        const std::vector<LinearForm>& forms,
                                        const SumOptions& opt = {});

// Histogram of U.X over X in the kind; S(kind, U) is its complex evaluation.
FreqVector s_freq(GroupKind kind, const FpMatrix& u, const SumOptions& opt = {});

// Histogram of U.X + V.(M X^{-1}) over X in GL_n: the matrix Kloosterman sum
// K(GL_n, U, V, M).
FreqVector k_gl(const FpMatrix& u, const FpMatrix& v, const FpMatrix& m,
                const SumOptions& opt = {});

// Histogram of U.X + V.X^{-1} over X in SL_n: K(SL_n, U, V).
FreqVector k_sl(const FpMatrix& u, const FpMatrix& v, const SumOptions& opt = {});

// Classical Kloosterman sum K(u, v; p) = sum over units of e_p(ux + vx^{-1}).
ComplexValue classical_kloosterman(std::uint64_t u, std::uint64_t v, std::uint32_t p);

// Sum of e_p(sum_i lambda_i a_i) over tuples with lambda_1 ... lambda_n = 1;
// the first n-1 factors run free, the last is forced.
FreqVector hyper_kloosterman_freq(const std::vector<Residue>& a, const SumOptions& opt = {});
ComplexValue hyper_kloosterman(const std::vector<Residue>& a, const SumOptions& opt = {});

} // namespace matsum
