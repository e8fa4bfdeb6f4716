#pragma once

// Channel view shared by the allocation and adaptation rules.  The engine
// fills it with true channels (genie CSI) or with estimates; everything
// downstream is agnostic.

#include <cstddef>
#include <vector>

#include "coopsim/linalg.hpp"

namespace coopsim::model {

struct LinkModel {
    linalg::CMat H;                             // source -> destination
    std::vector<linalg::CMat> F;                // per relay (all of them)
    std::vector<std::size_t> reliable;          // participating relay ids, ascending
    std::vector<std::vector<linalg::CMat>> D;   // per participating relay, per symbol
    std::size_t n_sym = 2;
    std::size_t n_slots = 2;

    std::size_t stack_dim() const { return n_sym * (1 + reliable.size() * n_slots); }
};

// Offsets into the stacked receive/filter vector of length N*(1+L*T):
// [direct N | relay 0: T*N | relay 1: T*N | ...].
inline std::size_t direct_offset() { return 0; }
inline std::size_t relay_offset(std::size_t n, std::size_t t_slots, std::size_t l) {
    return n + l * n * t_slots;
}
inline std::size_t slot_offset(std::size_t n, std::size_t t_slots, std::size_t l, std::size_t t) {
    return relay_offset(n, t_slots, l) + t * n;
}

}  // namespace coopsim::model
