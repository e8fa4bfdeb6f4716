#include "coopsim/modem.hpp"

#include <cmath>

#include "coopsim/errors.hpp"

namespace coopsim::modem {

namespace {
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
}

cd map_pair(std::uint8_t b_re, std::uint8_t b_im) {
    if (b_re > 1 || b_im > 1) throw Error("map_pair: bit value not 0/1");
    return {(1.0 - 2.0 * b_re) * kInvSqrt2, (1.0 - 2.0 * b_im) * kInvSqrt2};
}

void hard_pair(cd z, std::uint8_t& b_re, std::uint8_t& b_im) {
    b_re = z.real() < 0.0 ? 1 : 0;
    b_im = z.imag() < 0.0 ? 1 : 0;
}

std::vector<cd> modulate(const std::vector<std::uint8_t>& bits) {
    if (bits.size() % 2 != 0) throw LengthMismatch("modulate: odd number of bits");
    std::vector<cd> out(bits.size() / 2);
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = map_pair(bits[2 * i], bits[2 * i + 1]);
    }
    return out;
}

std::vector<std::uint8_t> demodulate(const std::vector<cd>& symbols) {
    std::vector<std::uint8_t> out(symbols.size() * 2);
    for (std::size_t i = 0; i < symbols.size(); ++i) {
        hard_pair(symbols[i], out[2 * i], out[2 * i + 1]);
    }
    return out;
}

std::size_t count_bit_errors(const std::vector<std::uint8_t>& a, const std::vector<std::uint8_t>& b) {
    if (a.size() != b.size()) throw LengthMismatch("count_bit_errors: lengths differ");
    std::size_t n = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if ((a[i] != 0) != (b[i] != 0)) ++n;
    }
    return n;
}

}  // namespace coopsim::modem
