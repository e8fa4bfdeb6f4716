#pragma once

// Linear MMSE receiver pieces: sample statistics over a pilot block, the
// Wiener solution, and the closed-form power update that alternates with it.
// Expectations are realised as sample averages over the block.

#include <complex>
#include <span>
#include <vector>

#include "coopsim/linalg.hpp"
#include "coopsim/model.hpp"
#include "coopsim/power.hpp"

namespace coopsim::mmse {

using linalg::CMat;
using linalg::CVec;
using linalg::cd;

struct Stats {
    CMat R;                    // mean r r^H, exactly Hermitian by construction
    std::vector<CVec> p;       // mean r conj(s_j), per symbol
    std::size_t count = 0;
};

// Throws Empty without samples, LengthMismatch on ragged inputs.
Stats estimate_stats(const std::vector<CVec>& r_samples, const std::vector<CVec>& s_samples);

// w_j = (R + ridge I)^{-1} p_j.
CVec wiener_filter(const Stats& st, std::size_t j, double ridge);

cd detect(std::span<const cd> w, std::span<const cd> r);

// Mean |s_j - w_j^H r|^2 over samples and symbols.
double empirical_mse(const std::vector<CVec>& r_samples, const std::vector<CVec>& s_samples,
                     const std::vector<CVec>& w);

// One closed-form update of every power coefficient given fixed filters: each
// coefficient is the scalar Wiener solution of its own signal path under the
// group constraint multiplier, with the multiplier of each group solved by
// bisection so the group sum meets the budget, then a final projection cleans
// up residual scaling.  A silent relay's source-side coefficients feed no
// path in the model, so their stationary value under an active multiplier is
// zero and their budget share moves to the live paths (matching the SG
// update, whose shrinkage term decays them toward zero).
//   w       destination filters per symbol, stacked layout
//   w_sr    relay detection filters, per relay (all of them), per symbol
power::PowerAllocation fixed_point_power(const model::LinkModel& m,
                                         const std::vector<CVec>& w,
                                         const std::vector<std::vector<CVec>>& w_sr,
                                         const power::PowerAllocation& current,
                                         const std::vector<CVec>& pilot_symbols,
                                         double total_power);

}  // namespace coopsim::mmse
