#include "matsum/freq.hpp"

namespace matsum {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

inline void kahan_add(double& sum, double& comp, double term) {
    double y = term - comp;
    double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
}

} // namespace

CharTable::CharTable(std::uint32_t m) : m_(m), re_(m), im_(m) {
    for (std::uint32_t z = 0; z < m; ++z) {
        double arg = kTwoPi * (double(z) / double(m));
        re_[z] = std::cos(arg);
        im_[z] = std::sin(arg);
    }
}

ComplexValue freq_to_complex(const FreqVector& f, const CharTable& table) {
    if (table.modulus() != f.modulus)
        throw ModulusMismatch("character table modulus differs from frequency vector");
    double re = 0, re_c = 0, im = 0, im_c = 0;
    for (std::uint32_t z = 0; z < f.modulus; ++z) {
        if (f.counts[z] == 0) continue;
        double w = static_cast<double>(f.counts[z]);
        kahan_add(re, re_c, w * table.re(z));
        kahan_add(im, im_c, w * table.im(z));
    }
    return ComplexValue{re, im};
}

ComplexValue freq_to_complex(const FreqVector& f) {
    return freq_to_complex(f, CharTable(f.modulus));
}

} // namespace matsum
