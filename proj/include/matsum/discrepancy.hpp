#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "matsum/charsum.hpp"
#include "matsum/point_family.hpp"
#include "matsum/region.hpp"

namespace matsum {

// Integer frequency vector h of the Erdos-Turan-Koksma inequality.
struct HVector {
    std::vector<std::int64_t> h;

    int dim() const { return static_cast<int>(h.size()); }
    std::int64_t inf_norm() const;
    bool is_zero() const;
};

// r(h) = prod max(1, |h_i|); overflow-checked.
std::int64_t r_of_h(const HVector& h);

// Index codec for the grid {-H..H}^k, most significant coordinate first.
std::uint64_t h_space_size(int k, std::uint32_t H); // (2H+1)^k, guarded against 64-bit overflow
void h_from_index(std::uint64_t idx, int k, std::uint32_t H, std::int64_t* out);
std::uint64_t h_to_index(const HVector& h, std::uint32_t H);

// Splits h into the phase matrices of the embedding layout, reduced mod p:
// for the interleaved embeddings row i of the layout carries U's row i then
// V's row i; the entries-only embeddings have no V block.
std::pair<FpMatrix, std::optional<FpMatrix>> h_to_matrices(const HVector& h, Embedding e, int n,
                                                           std::uint32_t p);

// (1/N) * sum over the family of e(h . x). Matrix families reduce to a
// single matrix character sum (K or S); the unit family reduces to a
// classical Kloosterman-type sum mod m.
ComplexValue exp_sum_over_image(const HVector& h, const PointFamily& fam,
                                const SumOptions& opt = {});

// Exact per-h histograms over the family for every h in {-H..H}^k, indexed
// by h_from_index order. The family is materialized once as a coordinate
// table when it fits the memory cap; otherwise the h-range is slabbed and
// each slab re-streams the family.
struct EtkOptions {
    std::uint32_t H = 1;
    std::uint64_t h_cap = 500000;             // max count of nonzero h vectors
    std::uint64_t mem_cap_bytes = 1ull << 30; // histogram bank / coordinate table budget
    int threads = 1;
    bool override_scale = false;
};

// The right-hand side of the ETK inequality:
//   (3/2)^k ( 2/(H+1) + sum_{0<||h||<=H} |(1/N) sum e(h.x)| / r(h) ).
struct EtkReport {
    int k = 0;
    std::uint64_t N = 0;
    std::uint32_t H = 1;
    std::uint64_t h_count = 0; // (2H+1)^k - 1
    double tail_term = 0;      // 2/(H+1)
    double series_term = 0;    // the h-sum
    double bound = 0;
    // |(1/N) sum e(h.x)| per h index; the all-zero slot holds its true
    // value 1 and is excluded from the series.
    std::vector<double> magnitudes;
};

EtkReport etk_bound_over_family(const PointFamily& fam, const EtkOptions& opt);

// Pure arithmetic form: magnitudes supplied by the caller for every h with
// 0 < ||h||_inf <= H, in h-index order.
EtkReport etk_bound_from_magnitudes(std::uint32_t H, int k, std::uint64_t N,
                                    const std::function<double(const HVector&)>& magnitude,
                                    std::uint64_t h_cap = 500000);

// Exact |count/N - area| per box, one streaming pass for all boxes.
struct BoxError {
    std::uint64_t count = 0;
    Rat fraction;
    Rat area;
    Rat error;     // |fraction - area|, exact
    double value = 0;
};

std::vector<BoxError> empirical_box_errors(const PointFamily& fam, const std::vector<Box>& boxes,
                                           const CountOptions& opt = {});

// floor(p^(1/(2(k+1)))), the truncation the ETK pipeline uses by default;
// never below 1.
std::uint32_t default_etk_H(std::uint64_t p, int k);

} // namespace matsum
