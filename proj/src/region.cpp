#include "matsum/region.hpp"

#include <string>

#include "matsum/parallel.hpp"
#include "matsum/rng.hpp"

namespace matsum {

namespace {

const Rat kZero(0);
const Rat kOne(1);

// Smallest integer t with t/m >= r, i.e. ceil(r.num * m / r.den).
std::uint64_t lower_threshold(const Rat& r, std::uint32_t m) {
    __int128 a = (__int128)r.num() * m;
    __int128 q = (a + r.den() - 1) / r.den();
    return static_cast<std::uint64_t>(q < 0 ? 0 : q);
}

} // namespace

Rat Box::area() const {
    Rat a(1);
    for (int i = 0; i < dim(); ++i) a = a * (hi[i] - lo[i]);
    return a;
}

bool Box::contains(const UnitPoint& x) const {
    if (x.k != dim()) throw DimensionMismatch("point and box dimensions differ");
    for (int i = 0; i < dim(); ++i) {
        // lo <= num/m < hi, exactly.
        __int128 num_scaled = (__int128)x.numerators[i];
        if ((__int128)lo[i].num() * x.modulus > num_scaled * lo[i].den()) return false;
        if (num_scaled * hi[i].den() >= (__int128)hi[i].num() * x.modulus) return false;
    }
    return true;
}

bool Box::overlaps(const Box& other) const {
    for (int i = 0; i < dim(); ++i) {
        const Rat& lo_max = lo[i] >= other.lo[i] ? lo[i] : other.lo[i];
        const Rat& hi_min = hi[i] <= other.hi[i] ? hi[i] : other.hi[i];
        if (!(lo_max < hi_min)) return false;
    }
    return true;
}

Box make_box(std::vector<Rat> lo, std::vector<Rat> hi) {
    if (lo.size() != hi.size() || lo.empty())
        throw DimensionMismatch("box needs matching, nonempty lo/hi");
    for (std::size_t i = 0; i < lo.size(); ++i) {
        if (lo[i] < kZero || lo[i] > hi[i] || hi[i] > kOne)
            throw ConfigError("box requires 0 <= lo <= hi <= 1 in every coordinate");
    }
    Box b;
    b.lo = std::move(lo);
    b.hi = std::move(hi);
    return b;
}

Box full_cube(int k) {
    return make_box(std::vector<Rat>(k, kZero), std::vector<Rat>(k, kOne));
}

Rat RegionUnion::area() const {
    Rat a(0);
    for (const Box& b : boxes) a = a + b.area();
    return a;
}

bool RegionUnion::contains(const UnitPoint& x) const {
    if (x.k != k) throw DimensionMismatch("point and region dimensions differ");
    for (const Box& b : boxes)
        if (b.contains(x)) return true;
    return false;
}

RegionUnion make_region(int k, std::vector<Box> boxes) {
    for (const Box& b : boxes)
        if (b.dim() != k) throw DimensionMismatch("region boxes must all have dimension k");
    for (std::size_t i = 0; i < boxes.size(); ++i)
        for (std::size_t j = i + 1; j < boxes.size(); ++j)
            if (boxes[i].overlaps(boxes[j]))
                throw ConfigError("region boxes " + std::to_string(i) + " and " +
                                  std::to_string(j) + " overlap");
    RegionUnion r;
    r.k = k;
    r.boxes = std::move(boxes);
    return r;
}

std::vector<Box> preset_boxes(int k, int count, std::uint64_t seed) {
    std::vector<Box> out;
    out.reserve(count);
    const Rat half(1, 2), quarter(1, 4), three_quarters(3, 4);
    auto push = [&](std::vector<Rat> lo, std::vector<Rat> hi) {
        if (static_cast<int>(out.size()) < count) out.push_back(make_box(std::move(lo), std::move(hi)));
    };
    push(std::vector<Rat>(k, kZero), std::vector<Rat>(k, kOne));
    push(std::vector<Rat>(k, kZero), std::vector<Rat>(k, half));
    push(std::vector<Rat>(k, half), std::vector<Rat>(k, kOne));
    if (k >= 2) {
        std::vector<Rat> lo(k, kZero), hi(k, kOne);
        hi[0] = half;
        hi[1] = half;
        push(std::move(lo), std::move(hi));
    }
    push(std::vector<Rat>(k, quarter), std::vector<Rat>(k, three_quarters));
    for (int i = static_cast<int>(out.size()); i < count; ++i) {
        SplitMix64 rng(mix_seed(seed ^ (std::uint64_t)k, (std::uint64_t)i));
        std::vector<Rat> lo(k), hi(k);
        for (int d = 0; d < k; ++d) {
            std::int64_t den = std::int64_t(1) << (1 + rng.next_below(3)); // 2, 4 or 8
            std::int64_t a = static_cast<std::int64_t>(rng.next_below(den + 1));
            std::int64_t b = static_cast<std::int64_t>(rng.next_below(den + 1));
            if (a > b) std::swap(a, b);
            if (a == b) (b < den) ? ++b : --a;
            lo[d] = Rat(a, den);
            hi[d] = Rat(b, den);
        }
        out.push_back(make_box(std::move(lo), std::move(hi)));
    }
    return out;
}

std::vector<std::uint64_t> count_in_boxes(const PointFamily& fam, const std::vector<Box>& boxes,
                                          const CountOptions& opt) {
    fam.validate();
    const int k = fam.dim();
    for (const Box& b : boxes)
        if (b.dim() != k) throw DimensionMismatch("box dimension does not match the family");
    if (fam.embedding != Embedding::UnitWithInverse)
        check_desk_scale(fam.n, fam.modulus, opt.override_scale);

    // Precomputed integer windows: x in [lo, hi) iff Lo <= num(x) < Hi.
    const std::size_t nb = boxes.size();
    std::vector<std::uint64_t> lo_t(nb * k), hi_t(nb * k);
    for (std::size_t b = 0; b < nb; ++b) {
        for (int d = 0; d < k; ++d) {
            lo_t[b * k + d] = lower_threshold(boxes[b].lo[d], fam.modulus);
            hi_t[b * k + d] = lower_threshold(boxes[b].hi[d], fam.modulus);
        }
    }

    const std::uint64_t total = fam.base_size();
    const int threads = opt.threads;
    const std::uint64_t n_chunks = parallel_chunk_count(total, threads);
    std::vector<std::vector<std::uint64_t>> partial_counts; // per-chunk counters
    partial_counts.assign(n_chunks, std::vector<std::uint64_t>(nb, 0));

    parallel_chunks(total, threads, 4, [&](std::uint64_t c, std::uint64_t start, std::uint64_t end) {
        auto& counters = partial_counts[c];
        family_scan_chunk(fam, start, end, [&](const std::uint32_t* coords, int kk) {
            for (std::size_t b = 0; b < nb; ++b) {
                const std::uint64_t* lo_row = &lo_t[b * kk];
                const std::uint64_t* hi_row = &hi_t[b * kk];
                bool inside = true;
                for (int d = 0; d < kk; ++d) {
                    if (coords[d] < lo_row[d] || coords[d] >= hi_row[d]) {
                        inside = false;
                        break;
                    }
                }
                if (inside) ++counters[b];
            }
        });
    });

    std::vector<std::uint64_t> counts(nb, 0);
    for (const auto& counters : partial_counts)
        for (std::size_t b = 0; b < nb; ++b) counts[b] += counters[b];
    return counts;
}

std::uint64_t count_image(const PointFamily& fam, const RegionUnion& region,
                          const CountOptions& opt) {
    if (region.k != fam.dim())
        throw DimensionMismatch("region dimension does not match the embedding");
    if (region.boxes.empty()) return 0;
    auto counts = count_in_boxes(fam, region.boxes, opt);
    std::uint64_t total = 0;
    for (std::uint64_t c : counts) total += c; // boxes are disjoint
    return total;
}

std::uint64_t count_image(GroupKind kind, int n, std::uint32_t p, Embedding e,
                          const RegionUnion& region, std::optional<FpMatrix> aux,
                          const CountOptions& opt) {
    return count_image(matrix_family(e, kind, n, p, std::move(aux)), region, opt);
}

} // namespace matsum
