#include "matsum/discrepancy.hpp"

#include <cmath>
#include <cstring>
#include <string>

#include "matsum/parallel.hpp"

namespace matsum {

std::int64_t HVector::inf_norm() const {
    std::int64_t m = 0;
    for (std::int64_t v : h) m = std::max(m, v < 0 ? -v : v);
    return m;
}

bool HVector::is_zero() const {
    for (std::int64_t v : h)
        if (v != 0) return false;
    return true;
}

std::int64_t r_of_h(const HVector& h) {
    __int128 r = 1;
    for (std::int64_t v : h.h) {
        std::int64_t a = v < 0 ? -v : v;
        r *= std::max<std::int64_t>(1, a);
        if (r > INT64_MAX) throw OverflowError("r(h) exceeds 64 bits");
    }
    return static_cast<std::int64_t>(r);
}

std::uint64_t h_space_size(int k, std::uint32_t H) {
    unsigned __int128 size = 1;
    const std::uint64_t d = 2ull * H + 1;
    for (int i = 0; i < k; ++i) {
        size *= d;
        if (size > UINT64_MAX) throw OverflowError("(2H+1)^k exceeds 64 bits");
    }
    return static_cast<std::uint64_t>(size);
}

void h_from_index(std::uint64_t idx, int k, std::uint32_t H, std::int64_t* out) {
    const std::uint64_t d = 2ull * H + 1;
    for (int t = k - 1; t >= 0; --t) {
        out[t] = static_cast<std::int64_t>(idx % d) - static_cast<std::int64_t>(H);
        idx /= d;
    }
}

std::uint64_t h_to_index(const HVector& h, std::uint32_t H) {
    const std::uint64_t d = 2ull * H + 1;
    std::uint64_t idx = 0;
    for (std::int64_t v : h.h) {
        if (v < -static_cast<std::int64_t>(H) || v > static_cast<std::int64_t>(H))
            throw ConfigError("h coordinate outside [-H, H]");
        idx = idx * d + static_cast<std::uint64_t>(v + static_cast<std::int64_t>(H));
    }
    return idx;
}

namespace {

std::uint32_t reduce_mod(std::int64_t v, std::uint32_t p) {
    std::int64_t r = v % static_cast<std::int64_t>(p);
    if (r < 0) r += p;
    return static_cast<std::uint32_t>(r);
}

} // namespace

std::pair<FpMatrix, std::optional<FpMatrix>> h_to_matrices(const HVector& h, Embedding e, int n,
                                                           std::uint32_t p) {
    const int k = embedding_dim(e, n);
    if (h.dim() != k) throw DimensionMismatch("h has dimension " + std::to_string(h.dim()) +
                                              ", embedding needs " + std::to_string(k));
    switch (e) {
        case Embedding::MatrixWithInverse:
        case Embedding::HyperbolaPair: {
            FpMatrix u(n, p), v(n, p);
            int t = 0;
            for (int i = 0; i < n; ++i) {
                for (int j = 0; j < n; ++j) u.set(i, j, reduce_mod(h.h[t++], p));
                for (int j = 0; j < n; ++j) v.set(i, j, reduce_mod(h.h[t++], p));
            }
            return {u, v};
        }
        case Embedding::MatrixEntries:
        case Embedding::SpecialMatrixEntries: {
            FpMatrix u(n, p);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) u.set(i, j, reduce_mod(h.h[i * n + j], p));
            return {u, std::nullopt};
        }
        case Embedding::UnitWithInverse:
            throw ConfigError("unit family has no matrix split; handled separately");
    }
    throw ConfigError("bad embedding");
}

ComplexValue exp_sum_over_image(const HVector& h, const PointFamily& fam, const SumOptions& opt) {
    fam.validate();
    const std::uint64_t N = fam.size();
    if (fam.embedding == Embedding::UnitWithInverse) {
        if (h.dim() != 2) throw DimensionMismatch("unit family needs a 2-dimensional h");
        const std::uint32_t m = fam.modulus;
        const std::uint64_t a = reduce_mod(h.h[0], m);
        const std::uint64_t b = reduce_mod(h.h[1], m);
        FreqVector f(m);
        for (std::uint64_t x = 1; x < m; ++x) {
            if (gcd_u64(x, m) != 1) continue;
            ++f.counts[(a * x + b * inv_mod_u64(x, m)) % m];
        }
        ComplexValue value = freq_to_complex(f);
        return ComplexValue{value.re / double(N), value.im / double(N)};
    }

    auto [u, v] = h_to_matrices(h, fam.embedding, fam.n, fam.modulus);
    std::vector<LinearForm> forms;
    if (v) {
        if (fam.embedding == Embedding::HyperbolaPair)
            forms.emplace_back(u, *v, *fam.aux);
        else
            forms.emplace_back(u, *v);
    } else {
        forms.emplace_back(u);
    }
    FreqVector f = multi_histogram(fam.kind, fam.n, fam.modulus, forms, opt)[0];
    ComplexValue value = freq_to_complex(f);
    return ComplexValue{value.re / double(N), value.im / double(N)};
}

namespace {

// Flat coordinate table: N rows of k numerators each. Entries are uint8
// when the modulus allows, else uint32.
struct CoordTable {
    std::uint64_t rows = 0;
    int k = 0;
    bool narrow = false;
    std::vector<std::uint8_t> bytes;
    std::vector<std::uint32_t> words;
};

CoordTable build_coord_table(const PointFamily& fam, const EtkOptions& opt) {
    const std::uint64_t n_members = fam.size();
    const int k = fam.dim();
    CoordTable table;
    table.rows = n_members;
    table.k = k;
    table.narrow = fam.modulus < 256;
    const std::uint64_t bytes_needed = n_members * std::uint64_t(k) * (table.narrow ? 1 : 4);
    if (bytes_needed > opt.mem_cap_bytes)
        throw DeskScaleExceeded("coordinate table (" + std::to_string(bytes_needed) +
                                " bytes) exceeds the memory cap");

    const std::uint64_t total = fam.base_size();
    const int threads = opt.threads;
    const std::uint64_t n_chunks = parallel_chunk_count(total, threads);

    // Pass 1: member count per chunk, for stable row offsets.
    std::vector<std::uint64_t> chunk_members(n_chunks, 0);
    parallel_chunks(total, threads, 4,
                    [&](std::uint64_t c, std::uint64_t start, std::uint64_t end) {
        std::uint64_t count = 0;
        family_scan_chunk(fam, start, end, [&](const std::uint32_t*, int) { ++count; });
        chunk_members[c] = count;
    });
    std::vector<std::uint64_t> offsets(n_chunks + 1, 0);
    for (std::uint64_t c = 0; c < n_chunks; ++c) offsets[c + 1] = offsets[c] + chunk_members[c];
    if (offsets[n_chunks] != n_members)
        throw Error("family size does not match the streamed member count");

    if (table.narrow)
        table.bytes.resize(n_members * k);
    else
        table.words.resize(n_members * k);

    // Pass 2: fill rows at the precomputed offsets.
    parallel_chunks(total, threads, 4,
                    [&](std::uint64_t c, std::uint64_t start, std::uint64_t end) {
        std::uint64_t row = offsets[c];
        family_scan_chunk(fam, start, end, [&](const std::uint32_t* coords, int kk) {
            if (table.narrow) {
                std::uint8_t* dst = table.bytes.data() + row * kk;
                for (int t = 0; t < kk; ++t) dst[t] = static_cast<std::uint8_t>(coords[t]);
            } else {
                std::uint32_t* dst = table.words.data() + row * kk;
                for (int t = 0; t < kk; ++t) dst[t] = coords[t];
            }
            ++row;
        });
    });
    return table;
}

// Histogram of (h . coords) mod p over the table rows.
template <typename Entry, int K>
void histogram_over_table_fixed(const Entry* rows, std::uint64_t n_rows, const std::uint32_t* h_mod,
                                std::uint32_t p, std::uint64_t* hist) {
    for (std::uint64_t r = 0; r < n_rows; ++r) {
        const Entry* row = rows + r * K;
        std::uint64_t acc = 0;
        for (int t = 0; t < K; ++t) acc += std::uint64_t(h_mod[t]) * row[t];
        ++hist[acc % p];
    }
}

template <typename Entry>
void histogram_over_table(const Entry* rows, std::uint64_t n_rows, int k,
                          const std::uint32_t* h_mod, std::uint32_t p, std::uint64_t* hist) {
    switch (k) {
        case 2: return histogram_over_table_fixed<Entry, 2>(rows, n_rows, h_mod, p, hist);
        case 4: return histogram_over_table_fixed<Entry, 4>(rows, n_rows, h_mod, p, hist);
        case 8: return histogram_over_table_fixed<Entry, 8>(rows, n_rows, h_mod, p, hist);
        case 9: return histogram_over_table_fixed<Entry, 9>(rows, n_rows, h_mod, p, hist);
        case 18: return histogram_over_table_fixed<Entry, 18>(rows, n_rows, h_mod, p, hist);
        default: break;
    }
    for (std::uint64_t r = 0; r < n_rows; ++r) {
        const Entry* row = rows + r * k;
        std::uint64_t acc = 0;
        for (int t = 0; t < k; ++t) acc += std::uint64_t(h_mod[t]) * row[t];
        ++hist[acc % p];
    }
}

// Negating h conjugates every phase, so only one of {h, -h} needs a group
// scan: with D = 2H+1 the index of -h is D^k - 1 - index(h), and the half
// whose most-significant nonzero digit is positive is exactly the index
// range above the zero vector's slot (D^k - 1) / 2.
bool h_index_canonical(std::uint64_t idx, std::uint64_t zero_idx) {
    return idx >= zero_idx;
}

double pow_double(double base, int exp) {
    double r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

void kahan_add(double& sum, double& comp, double term) {
    double y = term - comp;
    double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
}

} // namespace

EtkReport etk_bound_over_family(const PointFamily& fam, const EtkOptions& opt) {
    fam.validate();
    if (fam.embedding != Embedding::UnitWithInverse)
        check_desk_scale(fam.n, fam.modulus, opt.override_scale);
    if (opt.H < 1) throw ConfigError("H must be a positive integer");
    const int k = fam.dim();
    const std::uint32_t p = fam.modulus;
    const std::uint64_t n_h_total = h_space_size(k, opt.H);
    if (n_h_total - 1 > opt.h_cap)
        throw CombinatorialBlowup("(2H+1)^k - 1 = " + std::to_string(n_h_total - 1) +
                                  " h-vectors exceed the cap of " + std::to_string(opt.h_cap));
    // The unreduced dot products below must stay below 2^64.
    if ((unsigned __int128)k * p * p > UINT64_MAX)
        throw DeskScaleExceeded("modulus too large for the batched h-scan");

    const std::uint64_t N = fam.size();
    EtkReport report;
    report.k = k;
    report.N = N;
    report.H = opt.H;
    report.h_count = n_h_total - 1;
    report.tail_term = 2.0 / (opt.H + 1.0);
    report.magnitudes.assign(n_h_total, 0.0);

    const int threads = opt.threads < 1 ? 1 : opt.threads;
    const std::uint64_t bank_slab =
        std::max<std::uint64_t>(1, opt.mem_cap_bytes / (std::uint64_t(p) * sizeof(std::uint64_t)));

    // Fast path: materialize the family once and scan it per h.
    const std::uint64_t table_bytes = N * std::uint64_t(k) * (p < 256 ? 1 : 4);
    const bool table_mode = table_bytes <= opt.mem_cap_bytes;
    CoordTable table;
    if (table_mode) table = build_coord_table(fam, opt);

    CharTable char_table(p);
    report.magnitudes.assign(n_h_total, -1.0);
    const std::uint64_t zero_idx = (n_h_total - 1) / 2;
    report.magnitudes[zero_idx] = 1.0;

    for (std::uint64_t slab_start = 0; slab_start < n_h_total; slab_start += bank_slab) {
        const std::uint64_t slab_end = std::min(n_h_total, slab_start + bank_slab);

        // Canonical, nonzero h indices of this slab; only these are scanned.
        std::vector<std::uint64_t> todo;
        todo.reserve(slab_end - slab_start);
        for (std::uint64_t h_idx = slab_start; h_idx < slab_end; ++h_idx)
            if (h_idx != zero_idx && h_index_canonical(h_idx, zero_idx)) todo.push_back(h_idx);
        if (todo.empty()) continue;
        std::vector<std::uint64_t> bank(todo.size() * p, 0);

        if (table_mode) {
            // Each h owns its bank slice; writes are disjoint across workers.
            parallel_chunks(todo.size(), threads, 4,
                            [&](std::uint64_t, std::uint64_t start, std::uint64_t end) {
                std::vector<std::int64_t> digits(k);
                std::vector<std::uint32_t> h_mod(k);
                for (std::uint64_t i = start; i < end; ++i) {
                    h_from_index(todo[i], k, opt.H, digits.data());
                    for (int t = 0; t < k; ++t) h_mod[t] = reduce_mod(digits[t], p);
                    std::uint64_t* hist = bank.data() + i * p;
                    if (table.narrow)
                        histogram_over_table(table.bytes.data(), table.rows, k, h_mod.data(), p, hist);
                    else
                        histogram_over_table(table.words.data(), table.rows, k, h_mod.data(), p, hist);
                }
            });
        } else {
            // Streaming fallback: one family pass per slab, per-chunk banks.
            const std::uint64_t total = fam.base_size();
            const std::uint64_t n_chunks = parallel_chunk_count(total, threads);
            std::vector<std::vector<std::uint64_t>> chunk_banks(
                n_chunks, std::vector<std::uint64_t>(todo.size() * p, 0));
            std::vector<std::uint32_t> h_mods(todo.size() * k);
            std::vector<std::int64_t> digits(k);
            for (std::size_t i = 0; i < todo.size(); ++i) {
                h_from_index(todo[i], k, opt.H, digits.data());
                for (int t = 0; t < k; ++t) h_mods[i * k + t] = reduce_mod(digits[t], p);
            }
            parallel_chunks(total, threads, 4,
                            [&](std::uint64_t c, std::uint64_t start, std::uint64_t end) {
                auto& local = chunk_banks[c];
                family_scan_chunk(fam, start, end, [&](const std::uint32_t* coords, int kk) {
                    for (std::size_t i = 0; i < todo.size(); ++i) {
                        const std::uint32_t* hm = &h_mods[i * kk];
                        std::uint64_t acc = 0;
                        for (int t = 0; t < kk; ++t) acc += std::uint64_t(hm[t]) * coords[t];
                        ++local[i * p + acc % p];
                    }
                });
            });
            for (const auto& local : chunk_banks)
                for (std::size_t j = 0; j < bank.size(); ++j) bank[j] += local[j];
        }

        // Evaluate the slab; all float work happens after the integer
        // histograms are final.
        FreqVector freq(p);
        for (std::size_t i = 0; i < todo.size(); ++i) {
            std::memcpy(freq.counts.data(), bank.data() + i * p, p * sizeof(std::uint64_t));
            ComplexValue value = freq_to_complex(freq, char_table);
            report.magnitudes[todo[i]] = value.abs() / double(N);
        }
    }

    // Mirror the skipped half and accumulate the series in index order.
    double series = 0, series_comp = 0;
    std::vector<std::int64_t> digits(k);
    for (std::uint64_t h_idx = 0; h_idx < n_h_total; ++h_idx) {
        if (report.magnitudes[h_idx] < 0)
            report.magnitudes[h_idx] = report.magnitudes[n_h_total - 1 - h_idx];
        if (h_idx == zero_idx) continue;
        h_from_index(h_idx, k, opt.H, digits.data());
        kahan_add(series, series_comp,
                  report.magnitudes[h_idx] / double(r_of_h(HVector{digits})));
    }

    report.series_term = series;
    report.bound = pow_double(1.5, k) * (report.tail_term + report.series_term);
    return report;
}

EtkReport etk_bound_from_magnitudes(std::uint32_t H, int k, std::uint64_t N,
                                    const std::function<double(const HVector&)>& magnitude,
                                    std::uint64_t h_cap) {
    if (H < 1) throw ConfigError("H must be a positive integer");
    const std::uint64_t n_h_total = h_space_size(k, H);
    if (n_h_total - 1 > h_cap)
        throw CombinatorialBlowup("(2H+1)^k - 1 h-vectors exceed the cap");
    EtkReport report;
    report.k = k;
    report.N = N;
    report.H = H;
    report.h_count = n_h_total - 1;
    report.tail_term = 2.0 / (H + 1.0);
    report.magnitudes.assign(n_h_total, 0.0);
    double series = 0, series_comp = 0;
    std::vector<std::int64_t> digits(k);
    for (std::uint64_t idx = 0; idx < n_h_total; ++idx) {
        h_from_index(idx, k, H, digits.data());
        HVector hv{digits};
        if (hv.is_zero()) {
            report.magnitudes[idx] = 1.0;
            continue;
        }
        const double mag = magnitude(hv);
        report.magnitudes[idx] = mag;
        kahan_add(series, series_comp, mag / double(r_of_h(hv)));
    }
    report.series_term = series;
    report.bound = pow_double(1.5, k) * (report.tail_term + report.series_term);
    return report;
}

std::vector<BoxError> empirical_box_errors(const PointFamily& fam, const std::vector<Box>& boxes,
                                           const CountOptions& opt) {
    const std::uint64_t N = fam.size();
    auto counts = count_in_boxes(fam, boxes, opt);
    std::vector<BoxError> out(boxes.size());
    for (std::size_t b = 0; b < boxes.size(); ++b) {
        BoxError& e = out[b];
        e.count = counts[b];
        e.fraction = Rat(static_cast<std::int64_t>(counts[b]), static_cast<std::int64_t>(N));
        e.area = boxes[b].area();
        e.error = (e.fraction - e.area).abs();
        e.value = e.error.to_double();
    }
    return out;
}

std::uint32_t default_etk_H(std::uint64_t p, int k) {
    const int m = 2 * (k + 1);
    std::uint32_t h = 1;
    for (;;) {
        // (h+1)^m <= p?
        unsigned __int128 pow = 1;
        bool fits = true;
        for (int i = 0; i < m; ++i) {
            pow *= (h + 1);
            if (pow > p) {
                fits = false;
                break;
            }
        }
        if (!fits) return h;
        ++h;
    }
}

} // namespace matsum
