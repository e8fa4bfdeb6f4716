#pragma once

// Stochastic-gradient adaptation of the destination filters, the relay
// detection filters, and the power coefficients.
//
// Gradients are with respect to the conjugate coordinate of the instantaneous
// squared error plus the constraint terms, so a real cost J gives the update
// x <- x - rate * (dJ/dconj(x)).  Each power coefficient is differentiated
// through its own symbol's signal path; the per-slot relay coefficients are
// shared across symbols, so their gradient accumulates those per-symbol terms
// (cross-symbol interference terms are not part of the update).  Steps are
// normalised by the instantaneous regressor power.

#include <complex>
#include <span>
#include <vector>

#include "coopsim/linalg.hpp"
#include "coopsim/model.hpp"
#include "coopsim/power.hpp"

namespace coopsim::adapt {

using linalg::CMat;
using linalg::CVec;
using linalg::cd;

struct SGConfig {
    double mu = 0.005;        // filter step
    double gamma = 0.002;     // power step
    double lambda1 = 0.0;     // source constraint multiplier
    double lambda2 = 0.0;     // relay constraint multiplier
    double eps = 1e-12;       // normalisation floor
    double divergence_limit = 1e6;
    bool adapt_powers = true;
    bool adapt_relay_filters = true;
};

struct ReceiverState {
    std::vector<CVec> w;                    // destination filter per symbol, stacked layout
    std::vector<std::vector<CVec>> w_sr;    // relay detection filters, per relay per symbol
};

// One training sample as seen by the destination.
struct Sample {
    CVec r;                       // stacked receive vector
    CVec s;                       // known symbols
    std::vector<CVec> r_sr;       // per participating relay: its local receive vector
};

cd error_signal(std::span<const cd> w, std::span<const cd> r, cd s_j);

// d|e_j|^2/dconj(w_j) = -r conj(e_j)
void grad_w(std::span<const cd> r, cd e_j, std::span<cd> out);

// -conj(s_j) (h_j^H w_j1) e_j + lambda1 alpha
cd grad_alpha_sd(cd s_j, std::span<const cd> h_j, std::span<const cd> w_direct, cd e_j,
                 double lambda1, cd alpha);

// Per-slot shared coefficient: sum_j -conj(s_j) (d_{j,t}^H w_{j,l,t}) e_j + lambda2 alpha
cd grad_alpha_rd(std::span<const cd> s, std::span<const cd> e,
                 const std::vector<CVec>& d_t, const std::vector<std::span<const cd>>& w_t,
                 double lambda2, cd alpha);

// Chain through the relay: kappa = (w_jl^H D_jl a_l)(w_sr^H f_j);
// gradient = -conj(s_j) conj(kappa) e_j + lambda1 alpha.
cd grad_alpha_sr(cd s_j, const CMat& D_jl, std::span<const cd> a_l,
                 std::span<const cd> w_relay_seg, std::span<const cd> w_sr,
                 std::span<const cd> f_j, cd e_j, double lambda1, cd alpha);

// d|e_j|^2/dconj(w_sr_j) = -(w_jl^H D_jl a_l) r_sr conj(e_j)
void grad_w_relay(const CMat& D_jl, std::span<const cd> a_l, std::span<const cd> w_relay_seg,
                  std::span<const cd> r_sr, cd e_j, std::span<cd> out);

// One pass over a training sample: filter updates, optional relay-filter and
// power updates, projection back onto the constraints.  Throws Diverged when
// any adapted magnitude exceeds cfg.divergence_limit.
void sg_step(ReceiverState& st, power::PowerAllocation& p, const model::LinkModel& m,
             const Sample& smp, const SGConfig& cfg, double total_power);

}  // namespace coopsim::adapt
