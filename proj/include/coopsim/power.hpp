#pragma once

// Power allocation coefficients and the two sum-power constraint groups:
//   group 1 (source):  sum_j |alpha_sd_j|^2 + sum_k sum_j |alpha_sr_kj|^2 = P_T
//   group 2 (relays):  sum over participating relays l, slots t  N |alpha_rd_lt|^2 = P_T
// Each relay-phase slot carries a codeword column holding all N symbols at unit
// energy apiece, so a slot coefficient contributes N times its squared magnitude
// to the transmitted energy; the weight keeps the constraint equal to energy.
// Coefficients are complex; projection rescales each group by a positive real
// factor, so ratios and phases inside a group are preserved.

#include <complex>
#include <cstddef>
#include <vector>

#include "coopsim/linalg.hpp"

namespace coopsim::power {

using linalg::CVec;
using linalg::cd;

struct PowerAllocation {
    std::vector<cd> sd;                  // per symbol j, N entries
    std::vector<std::vector<cd>> sr;     // per relay k, N entries each
    std::vector<std::vector<cd>> rd;     // per relay k, T entries each (per slot)
};

PowerAllocation equal_power(std::size_t n_sym, std::size_t n_relays, std::size_t n_slots,
                            double total_power);

double source_group_power(const PowerAllocation& p);
double relay_group_power(const PowerAllocation& p, const std::vector<std::size_t>& reliable);

// Rescales group 1 (always) and group 2 (over `reliable`; skipped when the set
// is empty) so both sums equal total_power.  Throws DegenerateGroup when a
// group to be rescaled has zero power.
void project(PowerAllocation& p, const std::vector<std::size_t>& reliable, double total_power);

// Model-form coefficient stack a_j = [alpha_sd_j; alpha_rd_{l1}; ...] matching
// the column layout of dstc::build_B over the participating relays.
CVec stack_coefficients(const PowerAllocation& p, std::size_t j,
                        const std::vector<std::size_t>& reliable);

}  // namespace coopsim::power
