#pragma once

// Stochastic-gradient channel estimation from pilots: the direct channel from
// the destination's broadcast receive, the source->relay channels from the
// relays' own receives, and the effective relay blocks from the cooperative
// receive.  Each gradient is the conjugate-coordinate derivative of the
// instantaneous squared residual, arranged as -(residual)(regressor)^H, and
// steps are normalised by the regressor energy.

#include <complex>
#include <span>
#include <vector>

#include "coopsim/linalg.hpp"

namespace coopsim::chanest {

using linalg::CMat;
using linalg::CVec;
using linalg::cd;

struct Config {
    double beta = 0.01;   // estimation step
    double eps = 1e-12;   // normalisation floor
};

// ||r - H (alpha o s)||^2 with o the elementwise product.
double cost_H(std::span<const cd> r, const CMat& H, std::span<const cd> alpha,
              std::span<const cd> s);
// -(r - H x) x^H with x = alpha o s.
CMat grad_H(std::span<const cd> r, const CMat& H, std::span<const cd> alpha,
            std::span<const cd> s);
// Normalised step; also used for the relays' own channels, which obey the
// same pilot model.
void step_H(CMat& H, std::span<const cd> r, std::span<const cd> alpha, std::span<const cd> s,
            const Config& cfg);

// Destination-side cost of relay l's block when the relay's receive is
// modelled as F (alpha o s) + n_sr and the relay applies its filters w_sr:
// || r_l - sum_j (D_j a_l) w_sr_j^H (F (alpha o s) + n_sr) ||^2.
double cost_F(std::span<const cd> r_l, const CMat& F, std::span<const cd> alpha_sr,
              std::span<const cd> s, std::span<const cd> n_sr, const std::vector<CMat>& D,
              std::span<const cd> a_l, const std::vector<CVec>& w_sr);
CMat grad_F(std::span<const cd> r_l, const CMat& F, std::span<const cd> alpha_sr,
            std::span<const cd> s, std::span<const cd> n_sr, const std::vector<CMat>& D,
            std::span<const cd> a_l, const std::vector<CVec>& w_sr);

// || r_l - sum_j D_j a_l s_j ||^2 over the block-diagonal blocks of D.
double cost_D(std::span<const cd> r_l, const std::vector<CMat>& D, std::span<const cd> a_l,
              std::span<const cd> s_fwd);
// Per-symbol gradients, block-structured like D itself.
std::vector<CMat> grad_D(std::span<const cd> r_l, const std::vector<CMat>& D,
                         std::span<const cd> a_l, std::span<const cd> s_fwd);
void step_D(std::vector<CMat>& D, std::span<const cd> r_l, std::span<const cd> a_l,
            std::span<const cd> s_fwd, const Config& cfg);

double nmse(const CMat& est, const CMat& truth);

}  // namespace coopsim::chanest
