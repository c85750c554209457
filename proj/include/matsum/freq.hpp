#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "matsum/errors.hpp"

namespace matsum {

struct ComplexValue {
    double re = 0.0;
    double im = 0.0;

    double abs() const { return std::hypot(re, im); }
};

// Exact integer histogram of a mod-m linear form over a finite domain:
// counts[z] = #{X : form(X) = z}. The lossless precursor of any character
// sum; complex evaluation happens once, at the edge.
struct FreqVector {
    std::uint32_t modulus = 2;
    std::vector<std::uint64_t> counts;

    explicit FreqVector(std::uint32_t m = 2) : modulus(m), counts(m, 0) {}

    std::uint64_t total() const {
        std::uint64_t t = 0;
        for (std::uint64_t c : counts) t += c;
        return t;
    }

    void merge(const FreqVector& rhs) {
        if (rhs.modulus != modulus) throw ModulusMismatch("frequency vectors differ in modulus");
        for (std::uint32_t z = 0; z < modulus; ++z) counts[z] += rhs.counts[z];
    }
};

// Precomputed values of e_m(z) = exp(2 pi i z / m).
class CharTable {
  public:
    explicit CharTable(std::uint32_t m);

    std::uint32_t modulus() const { return m_; }
    double re(std::uint32_t z) const { return re_[z]; }
    double im(std::uint32_t z) const { return im_[z]; }

  private:
    std::uint32_t m_;
    std::vector<double> re_;
    std::vector<double> im_;
};

// sum_z counts[z] e_m(z), accumulated in index order with Kahan
// compensation.
ComplexValue freq_to_complex(const FreqVector& f, const CharTable& table);
ComplexValue freq_to_complex(const FreqVector& f);

} // namespace matsum
