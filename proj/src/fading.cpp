#include "coopsim/fading.hpp"

#include <cmath>
#include <numbers>

namespace coopsim::fading {

namespace {

inline std::uint64_t splitmix(std::uint64_t& x) {
    x += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

Rng::Rng(std::uint64_t seed) : seed_(seed) {
    std::uint64_t x = seed;
    for (auto& w : s_) w = splitmix(x);
}

Rng Rng::derive(std::uint64_t key0, std::uint64_t key1) const {
    std::uint64_t x = seed_;
    std::uint64_t h = splitmix(x);
    x ^= key0 * 0xD6E8FEB86659FD93ULL;
    h ^= splitmix(x);
    x ^= rotl(key1 * 0xA3B195354A39B70DULL, 23);
    h ^= splitmix(x);
    return Rng(h);
}

std::uint64_t Rng::next_u64() {
    // xoshiro256**
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double Rng::uniform() {
    return 1.0 - static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
    const double u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

cd Rng::cnormal() {
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-std::log(u1));
    const double th = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(th), r * std::sin(th)};
}

std::uint8_t Rng::bit() { return static_cast<std::uint8_t>(next_u64() >> 63); }

linalg::CMat draw_channel_matrix(Rng& rng, std::size_t rows, std::size_t cols) {
    linalg::CMat m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = rng.cnormal();
    }
    return m;
}

ChannelSet draw_channels(Rng& rng, std::size_t n_relays, std::size_t n) {
    ChannelSet cs;
    cs.H = draw_channel_matrix(rng, n, n);
    cs.F.reserve(n_relays);
    cs.G.reserve(n_relays);
    for (std::size_t k = 0; k < n_relays; ++k) cs.F.push_back(draw_channel_matrix(rng, n, n));
    for (std::size_t k = 0; k < n_relays; ++k) cs.G.push_back(draw_channel_matrix(rng, n, n));
    return cs;
}

linalg::CVec draw_noise(Rng& rng, std::size_t n, double sigma2) {
    linalg::CVec out(n);
    const double s = std::sqrt(sigma2);
    for (auto& z : out) {
        const cd g = rng.cnormal();
        z = {g.real() * s, g.imag() * s};
    }
    return out;
}

double ebn0_to_sigma2(double ebn0_db, unsigned bits_per_symbol, double code_rate) {
    return 1.0 / (bits_per_symbol * code_rate * std::pow(10.0, ebn0_db / 10.0));
}

}  // namespace coopsim::fading
