#pragma once

#include <cstdint>
#include <vector>

#include "matsum/embed.hpp"
#include "matsum/point_family.hpp"
#include "matsum/rational.hpp"

namespace matsum {

// Axis-aligned half-open box prod [lo_i, hi_i) inside [0,1)^k, with exact
// rational endpoints.
struct Box {
    std::vector<Rat> lo;
    std::vector<Rat> hi;

    int dim() const { return static_cast<int>(lo.size()); }
    Rat area() const;
    bool contains(const UnitPoint& x) const;
    bool overlaps(const Box& other) const;
};

Box make_box(std::vector<Rat> lo, std::vector<Rat> hi);
Box full_cube(int k);

// Finite union of pairwise non-overlapping boxes; overlap is checked at
// construction.
struct RegionUnion {
    int k = 0;
    std::vector<Box> boxes;

    Rat area() const;
    bool contains(const UnitPoint& x) const;
};

RegionUnion make_region(int k, std::vector<Box> boxes);

// Deterministic box family used by the discrepancy experiments: a few fixed
// landmarks plus seeded dyadic boxes.
std::vector<Box> preset_boxes(int k, int count, std::uint64_t seed = 0x626f786573ull);

struct CountOptions {
    int threads = 1;
    bool override_scale = false;
};

// Number of family members whose image lies in each box (boxes may overlap;
// each is counted independently). Exact; one streaming pass.
std::vector<std::uint64_t> count_in_boxes(const PointFamily& fam, const std::vector<Box>& boxes,
                                          const CountOptions& opt = {});

// Members whose image lies in the union. Exact.
std::uint64_t count_image(const PointFamily& fam, const RegionUnion& region,
                          const CountOptions& opt = {});

std::uint64_t count_image(GroupKind kind, int n, std::uint32_t p, Embedding e,
                          const RegionUnion& region,
                          std::optional<FpMatrix> aux = std::nullopt,
                          const CountOptions& opt = {});

} // namespace matsum
