#include "coopsim/adapt.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "coopsim/errors.hpp"
#include "coopsim/kernels.hpp"

namespace coopsim::adapt {

cd error_signal(std::span<const cd> w, std::span<const cd> r, cd s_j) {
    if (w.size() != r.size()) throw DimensionMismatch("error_signal: sizes differ");
    return s_j - kern::cdotc(w.data(), r.data(), w.size());
}

void grad_w(std::span<const cd> r, cd e_j, std::span<cd> out) {
    const cd f = -std::conj(e_j);
    for (std::size_t i = 0; i < r.size(); ++i) out[i] = f * r[i];
}

cd grad_alpha_sd(cd s_j, std::span<const cd> h_j, std::span<const cd> w_direct, cd e_j,
                 double lambda1, cd alpha) {
    // h_j^H w_j1 = conj(w_j1^H h_j)
    const cd kappa = std::conj(kern::cdotc(w_direct.data(), h_j.data(), h_j.size()));
    return -std::conj(s_j) * kappa * e_j + lambda1 * alpha;
}

cd grad_alpha_rd(std::span<const cd> s, std::span<const cd> e,
                 const std::vector<CVec>& d_t, const std::vector<std::span<const cd>>& w_t,
                 double lambda2, cd alpha) {
    cd g = lambda2 * alpha;
    for (std::size_t j = 0; j < s.size(); ++j) {
        // d_{j,t}^H w_{j,l,t} = conj(w^H d)
        const cd kappa = std::conj(kern::cdotc(w_t[j].data(), d_t[j].data(), w_t[j].size()));
        g += -std::conj(s[j]) * kappa * e[j];
    }
    return g;
}

namespace {

// w_seg^H (D_jl a_l), the destination-side coupling of relay l for symbol j.
cd relay_coupling(const CMat& D_jl, std::span<const cd> a_l, std::span<const cd> w_relay_seg) {
    cd c{};
    for (std::size_t row = 0; row < D_jl.rows(); ++row) {
        const cd u = kern::cdotu(D_jl.row(row), a_l.data(), a_l.size());
        c += std::conj(w_relay_seg[row]) * u;
    }
    return c;
}

}  // namespace

cd grad_alpha_sr(cd s_j, const CMat& D_jl, std::span<const cd> a_l,
                 std::span<const cd> w_relay_seg, std::span<const cd> w_sr,
                 std::span<const cd> f_j, cd e_j, double lambda1, cd alpha) {
    const cd c = relay_coupling(D_jl, a_l, w_relay_seg);
    const cd q = kern::cdotc(w_sr.data(), f_j.data(), f_j.size());  // w_sr^H f_j
    return -std::conj(s_j) * std::conj(c * q) * e_j + lambda1 * alpha;
}

void grad_w_relay(const CMat& D_jl, std::span<const cd> a_l, std::span<const cd> w_relay_seg,
                  std::span<const cd> r_sr, cd e_j, std::span<cd> out) {
    const cd c = relay_coupling(D_jl, a_l, w_relay_seg);
    const cd f = -c * std::conj(e_j);
    for (std::size_t i = 0; i < r_sr.size(); ++i) out[i] = f * r_sr[i];
}

namespace {

void check_magnitude(const CVec& v, double limit) {
    for (const cd& z : v) {
        if (!(std::abs(z) <= limit)) throw Diverged("sg_step: filter magnitude out of range");
    }
}

}  // namespace

void sg_step(ReceiverState& st, power::PowerAllocation& p, const model::LinkModel& m,
             const Sample& smp, const SGConfig& cfg, double total_power) {
    const std::size_t n = m.n_sym;
    const std::size_t t_slots = m.n_slots;
    const std::size_t L = m.reliable.size();
    const std::size_t dim = m.stack_dim();
    if (smp.r.size() != dim) throw DimensionMismatch("sg_step: sample does not match model");

    // Errors at the pre-step state; every gradient below uses these.
    CVec e(n);
    for (std::size_t j = 0; j < n; ++j) e[j] = error_signal(st.w[j], smp.r, smp.s[j]);

    // Couplings c_jl = w_jl^H D_jl a_l at the pre-step state.
    std::vector<std::vector<cd>> coupling(L, std::vector<cd>(n));
    std::vector<CVec> a_l(L);
    for (std::size_t li = 0; li < L; ++li) {
        const std::size_t k = m.reliable[li];
        a_l[li] = CVec(p.rd[k].begin(), p.rd[k].end());
        for (std::size_t j = 0; j < n; ++j) {
            std::span<const cd> w_seg(st.w[j].data() + model::relay_offset(n, t_slots, li),
                                      n * t_slots);
            coupling[li][j] = relay_coupling(m.D[li][j], a_l[li], w_seg);
        }
    }

    // Power deltas from the pre-step state (Jacobi order: every gradient in
    // this step sees the filters and powers as they were on entry).
    std::vector<cd> sd_delta(n);
    std::vector<std::vector<cd>> rd_delta(p.rd.size());
    std::vector<std::vector<cd>> sr_delta(p.sr.size());
    if (cfg.adapt_powers) {
        // Direct-link coefficients.
        for (std::size_t j = 0; j < n; ++j) {
            const CVec h_j = m.H.col(j);
            std::span<const cd> w_dir(st.w[j].data(), n);
            const cd g = grad_alpha_sd(smp.s[j], h_j, w_dir, e[j], cfg.lambda1, p.sd[j]);
            const cd kappa = kern::cdotc(w_dir.data(), h_j.data(), n);
            sd_delta[j] = -cfg.gamma / (cfg.eps + std::norm(kappa) * std::norm(smp.s[j])) * g;
        }

        // Per-slot relay coefficients.
        for (std::size_t li = 0; li < L; ++li) {
            const std::size_t k = m.reliable[li];
            rd_delta[k].assign(t_slots, cd{});
            for (std::size_t t = 0; t < t_slots; ++t) {
                std::vector<CVec> d_t(n);
                std::vector<std::span<const cd>> w_t(n);
                double reg = 0.0;
                for (std::size_t j = 0; j < n; ++j) {
                    const CMat& D = m.D[li][j];
                    CVec block(n);
                    for (std::size_t a = 0; a < n; ++a) block[a] = D(t * n + a, t);
                    d_t[j] = std::move(block);
                    w_t[j] = std::span<const cd>(
                        st.w[j].data() + model::slot_offset(n, t_slots, li, t), n);
                    const cd kappa = kern::cdotc(w_t[j].data(), d_t[j].data(), n);
                    reg += std::norm(kappa) * std::norm(smp.s[j]);
                }
                const cd g = grad_alpha_rd(smp.s, e, d_t, w_t, cfg.lambda2, p.rd[k][t]);
                rd_delta[k][t] = -cfg.gamma / (cfg.eps + reg) * g;
            }
        }

        // Source->relay coefficients; silent relays see only the shrinkage term.
        for (std::size_t k = 0; k < p.sr.size(); ++k) {
            sr_delta[k].assign(n, cd{});
            auto pos = std::find(m.reliable.begin(), m.reliable.end(), k);
            if (pos == m.reliable.end()) {
                for (std::size_t j = 0; j < n; ++j) {
                    sr_delta[k][j] = -cfg.gamma / (cfg.eps + 1.0) * (cfg.lambda1 * p.sr[k][j]);
                }
                continue;
            }
            const std::size_t li = static_cast<std::size_t>(pos - m.reliable.begin());
            for (std::size_t j = 0; j < n; ++j) {
                std::span<const cd> w_seg(st.w[j].data() + model::relay_offset(n, t_slots, li),
                                          n * t_slots);
                const CVec f_j = m.F[k].col(j);
                const cd q = kern::cdotc(st.w_sr[k][j].data(), f_j.data(), n);
                const cd kappa = coupling[li][j] * q;
                const cd g = grad_alpha_sr(smp.s[j], m.D[li][j], a_l[li], w_seg, st.w_sr[k][j],
                                           f_j, e[j], cfg.lambda1, p.sr[k][j]);
                sr_delta[k][j] =
                    -cfg.gamma / (cfg.eps + std::norm(kappa) * std::norm(smp.s[j])) * g;
            }
        }
    }

    // Destination filters, normalised LMS.
    const double r_power = kern::sum_abs2(smp.r.data(), dim);
    const double mu_eff = cfg.mu / (cfg.eps + r_power);
    for (std::size_t j = 0; j < n; ++j) {
        // w -= mu_eff * (-r conj(e)) == w += mu_eff * r conj(e)
        kern::axpy(mu_eff * std::conj(e[j]), smp.r.data(), st.w[j].data(), dim);
        check_magnitude(st.w[j], cfg.divergence_limit);
    }

    // Relay detection filters through the destination error.
    if (cfg.adapt_relay_filters) {
        for (std::size_t li = 0; li < L; ++li) {
            const std::size_t k = m.reliable[li];
            const double rsr_power = kern::sum_abs2(smp.r_sr[li].data(), smp.r_sr[li].size());
            for (std::size_t j = 0; j < n; ++j) {
                const cd c = coupling[li][j];
                const double denom = cfg.eps + std::norm(c) * rsr_power;
                // w_sr -= mu/denom * (-c r_sr conj(e)) == w_sr += mu/denom * c r_sr conj(e)
                kern::axpy((cfg.mu / denom) * c * std::conj(e[j]), smp.r_sr[li].data(),
                           st.w_sr[k][j].data(), n);
                check_magnitude(st.w_sr[k][j], cfg.divergence_limit);
            }
        }
    }

    if (!cfg.adapt_powers) return;

    for (std::size_t j = 0; j < n; ++j) p.sd[j] += sd_delta[j];
    for (std::size_t li = 0; li < L; ++li) {
        const std::size_t k = m.reliable[li];
        for (std::size_t t = 0; t < t_slots; ++t) p.rd[k][t] += rd_delta[k][t];
    }
    for (std::size_t k = 0; k < p.sr.size(); ++k) {
        for (std::size_t j = 0; j < n; ++j) p.sr[k][j] += sr_delta[k][j];
    }

    power::project(p, m.reliable, total_power);

    for (const cd& z : p.sd) {
        if (!(std::abs(z) <= cfg.divergence_limit)) throw Diverged("sg_step: power out of range");
    }
}

}  // namespace coopsim::adapt
