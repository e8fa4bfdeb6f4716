#pragma once

// Gray-mapped QPSK, unit symbol energy.  First bit of a pair selects the sign
// of the real part, second bit the imaginary part.

#include <complex>
#include <cstdint>
#include <vector>

namespace coopsim::modem {

using cd = std::complex<double>;

inline constexpr double kSymbolEnergy = 1.0;
inline constexpr unsigned kBitsPerSymbol = 2;

// (b_re, b_im) -> ((1-2*b_re) + (1-2*b_im) i) / sqrt(2)
cd map_pair(std::uint8_t b_re, std::uint8_t b_im);

// Quadrant decision; boundary values (component exactly 0) decide bit 0.
void hard_pair(cd z, std::uint8_t& b_re, std::uint8_t& b_im);

// Throws LengthMismatch on odd bit count, Error on bit values other than 0/1.
std::vector<cd> modulate(const std::vector<std::uint8_t>& bits);
std::vector<std::uint8_t> demodulate(const std::vector<cd>& symbols);

std::size_t count_bit_errors(const std::vector<std::uint8_t>& a, const std::vector<std::uint8_t>& b);

}  // namespace coopsim::modem
