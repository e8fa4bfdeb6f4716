#pragma once

// Distributed Alamouti coding at the relays and the per-symbol effective
// channel of the stacked destination vector.
//
// Codeword for symbols [s1, s2]:
//     slot 1: [s1, s2]          slot 2: [-conj(s2), conj(s1)]
// The randomised variant left-multiplies the codeword by a per-relay unitary.
// The destination conjugates slot-2 receive vectors, which makes the stacked
// model linear in the symbols:
//     r = sum_j B_j a_j s_j + noise
// with B_j = [h_j | D_{j,1} | ... | D_{j,L}] in block-column form and a_j the
// matching power coefficients.  Power coefficients are carried in this
// already-conjugated model form; the transmit side applies the conjugate of a
// slot coefficient on conjugated slots so the two views agree exactly.

#include <cstdint>
#include <vector>

#include "coopsim/fading.hpp"
#include "coopsim/linalg.hpp"

namespace coopsim::dstc {

using linalg::CMat;
using linalg::CVec;
using linalg::cd;

enum class CodeScheme { DAlamouti, RAlamouti };

inline constexpr std::size_t kCodeN = 2;  // antennas / symbols per codeword
inline constexpr std::size_t kCodeT = 2;  // slots per codeword

struct Codeword {
    CMat m;                                // N x T, column t sent in slot t
    std::vector<std::uint8_t> conj_slot;   // 1 if the receiver conjugates slot t
};

// Which slots the receiver conjugates for this code family.
std::vector<std::uint8_t> conj_slots();

// Column c_{j,t} holding the antenna coefficients of (conj-)symbol j in slot t.
CVec code_column(std::size_t j, std::size_t t);

// Throws UnsupportedDims unless symbols.size()==2 (and randomizer is 2x2 for
// RAlamouti, which requires one).
Codeword encode(CodeScheme scheme, const CVec& symbols, const CMat* randomizer);

// Haar-like random unitary via Gram-Schmidt on a Gaussian matrix.
CMat draw_randomizer(fading::Rng& rng, std::size_t n);

// Per-symbol effective relay channel D_j, (N*T) x T block diagonal with block
// d_{j,t} = G~ c_{j,t} (conjugated on conjugated slots), G~ = G * randomizer.
std::vector<CMat> build_effective_D(const CMat& G, CodeScheme scheme, const CMat* randomizer);

// Stacked per-symbol channel B_j, (N + L*N*T) x (1 + L*T).  relay_D holds the
// build_effective_D output per participating relay, in stack order.
std::vector<CMat> build_B(const CMat& H, const std::vector<std::vector<CMat>>& relay_D);

}  // namespace coopsim::dstc
