#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "matsum/discrepancy.hpp"
#include "matsum/json_io.hpp"
#include "matsum/rng.hpp"

namespace matsum {

// Named verification suites. Reports are deterministic given (parameters,
// seed); the worker count never appears in the JSON.
struct ExperimentOptions {
    int threads = 1;
    bool override_scale = false;
};

struct ExperimentResult {
    Json report;
    bool passed = true;
};

inline constexpr std::uint64_t kDefaultSeed = 0x6d617473756d21ull;

// Seeded samplers used by every experiment; splitmix64 + rejection keeps
// the draws identical across platforms.
FpMatrix random_matrix(SplitMix64& rng, int n, std::uint32_t p);
FpMatrix random_nonzero_matrix(SplitMix64& rng, int n, std::uint32_t p);
FpMatrix random_invertible_matrix(SplitMix64& rng, int n, std::uint32_t p);

// Per-modulus decay scan of |count/N - area| for one embedding and region,
// with the same-modulus ETK bound alongside. Asserts that the exact errors
// strictly decrease along the modulus list and stay below the bound.
ExperimentResult theorem_scan(Embedding e, GroupKind kind, int n,
                              const std::vector<std::uint32_t>& moduli, const RegionUnion& region,
                              std::optional<FpMatrix> aux = std::nullopt,
                              std::optional<std::uint32_t> etk_H = std::nullopt,
                              const ExperimentOptions& opt = {});

// The determinant-one obstruction in dimension two: for any nonzero h with
//   h[0]+h[7] = 0, h[1]-h[3] = 0, h[2]+h[5] = 0, h[4]-h[6] = 0
// (interleaved layout), the phase h.x vanishes identically on the image of
// SL_2, so the histogram concentrates at zero and the normalized sum is
// exactly 1, while the cube integral of e(h.x) is 0. If h violates the
// conditions the sum is computed and reported without assertions.
ExperimentResult sl2_counterexample(const std::vector<std::uint32_t>& p_list, const HVector& h,
                                    const ExperimentOptions& opt = {});

HVector default_sl2_h();
bool sl2_conditions_hold(const HVector& h);

// Normalized-magnitude suites for the character sum bounds. Each suite
// records max |sum| / p^e over seeded nonzero samples, per modulus:
//   L1: K(GL_n, U, V, M) / p^(n^2-1/2)   (n = 1 runs the exhaustive Weil check)
//   L2: S(Z_n, U)        / p^(n^2-5/2)
//   L3: S(GL_n, U)       / p^(n^2-5/2)  plus the exact cancellation identity
//   L4: S(SL_n, U)       / p^(n^2-2)
//   S4: K(SL_n, U, V)    / p^(n^2-2)    (n >= 3)
//   R2: S(GL_n, U) and S(SL_n, U) / p^(n^2-n)
enum class LemmaSuite { L1, L2, L3, L4, S4, R2 };

const char* lemma_tag(LemmaSuite s);
LemmaSuite lemma_from_tag(const std::string& tag);

ExperimentResult verify_lemma_bounds(LemmaSuite suite, int n,
                                     const std::vector<std::uint32_t>& p_list, int samples,
                                     std::uint64_t seed = kDefaultSeed,
                                     const ExperimentOptions& opt = {});

// Two-column whitespace-separated plot data with a '#' header, one row per
// record: (p, value of `field`).
std::string plot_data_from_report(const Json& report, const std::string& field);

} // namespace matsum
