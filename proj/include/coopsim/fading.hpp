#pragma once

// Quasi-static Rayleigh fading draws and the simulation RNG.
//
// Rng is xoshiro256** seeded through splitmix64.  derive(k0, k1) builds an
// independent substream from the original seed and the two keys, not from the
// current state, so a fixed (seed, packet, link) triple always yields the same
// stream no matter how the parent was used or which thread runs the packet.

#include <complex>
#include <cstdint>
#include <vector>

#include "coopsim/linalg.hpp"

namespace coopsim::fading {

using cd = std::complex<double>;

class Rng {
  public:
    explicit Rng(std::uint64_t seed);

    Rng derive(std::uint64_t key0, std::uint64_t key1 = 0) const;

    std::uint64_t next_u64();
    // Uniform in (0, 1].
    double uniform();
    // Standard normal, Box-Muller.
    double normal();
    // Circularly symmetric complex normal with E|z|^2 = 1.
    cd cnormal();
    // One uniform bit.
    std::uint8_t bit();

    std::uint64_t seed() const { return seed_; }

  private:
    std::uint64_t seed_;
    std::uint64_t s_[4];
};

struct ChannelSet {
    linalg::CMat H;                  // source -> destination, N x N
    std::vector<linalg::CMat> F;     // source -> relay k, N x N
    std::vector<linalg::CMat> G;     // relay k -> destination, N x N
};

// Entries i.i.d. CN(0,1), frozen for a packet.
ChannelSet draw_channels(Rng& rng, std::size_t n_relays, std::size_t n);
linalg::CMat draw_channel_matrix(Rng& rng, std::size_t rows, std::size_t cols);

// n complex noise samples, CN(0, sigma2) each.
linalg::CVec draw_noise(Rng& rng, std::size_t n, double sigma2);

// Noise variance giving the requested per-bit SNR with unit-energy symbols:
// sigma2 = 1 / (bits_per_symbol * code_rate * 10^(ebn0_db/10)).
double ebn0_to_sigma2(double ebn0_db, unsigned bits_per_symbol = 2, double code_rate = 1.0);

}  // namespace coopsim::fading
