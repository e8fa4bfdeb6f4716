#include "coopsim/mmse.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "coopsim/errors.hpp"
#include "coopsim/kernels.hpp"

namespace coopsim::mmse {

Stats estimate_stats(const std::vector<CVec>& r_samples, const std::vector<CVec>& s_samples) {
    if (r_samples.empty()) throw Empty("estimate_stats: no samples");
    if (r_samples.size() != s_samples.size()) throw LengthMismatch("estimate_stats: sample counts differ");
    const std::size_t m = r_samples[0].size();
    const std::size_t n_sym = s_samples[0].size();

    Stats st;
    st.R = CMat(m, m);
    st.p.assign(n_sym, CVec(m));
    st.count = r_samples.size();

    for (std::size_t i = 0; i < r_samples.size(); ++i) {
        const CVec& r = r_samples[i];
        const CVec& s = s_samples[i];
        if (r.size() != m || s.size() != n_sym) throw LengthMismatch("estimate_stats: ragged samples");
        // Upper triangle only; mirrored below so R is Hermitian to the bit.
        for (std::size_t a = 0; a < m; ++a) {
            for (std::size_t b = a; b < m; ++b) {
                st.R(a, b) += r[a] * std::conj(r[b]);
            }
        }
        for (std::size_t j = 0; j < n_sym; ++j) {
            kern::axpy(std::conj(s[j]), r.data(), st.p[j].data(), m);
        }
    }
    const double inv = 1.0 / static_cast<double>(st.count);
    for (std::size_t a = 0; a < m; ++a) {
        st.R(a, a) = cd{st.R(a, a).real() * inv, 0.0};
        for (std::size_t b = a + 1; b < m; ++b) {
            st.R(a, b) *= inv;
            st.R(b, a) = std::conj(st.R(a, b));
        }
    }
    for (auto& pj : st.p) kern::rscale(inv, pj.data(), m);
    return st;
}

CVec wiener_filter(const Stats& st, std::size_t j, double ridge) {
    CMat a = st.R;
    for (std::size_t i = 0; i < a.rows(); ++i) a(i, i) += ridge;
    return linalg::solve(std::move(a), st.p.at(j));
}

cd detect(std::span<const cd> w, std::span<const cd> r) {
    if (w.size() != r.size()) throw DimensionMismatch("detect: filter/input sizes differ");
    return kern::cdotc(w.data(), r.data(), w.size());
}

double empirical_mse(const std::vector<CVec>& r_samples, const std::vector<CVec>& s_samples,
                     const std::vector<CVec>& w) {
    if (r_samples.empty()) throw Empty("empirical_mse: no samples");
    double acc = 0.0;
    for (std::size_t i = 0; i < r_samples.size(); ++i) {
        for (std::size_t j = 0; j < w.size(); ++j) {
            const cd e = s_samples[i][j] - detect(w[j], r_samples[i]);
            acc += std::norm(e);
        }
    }
    return acc / static_cast<double>(r_samples.size() * w.size());
}

namespace {

// One constraint group: each coefficient's stationary value under the group
// multiplier lambda >= 0 is alpha_i = num_i / (den_i + weight_i lambda), where
// num_i / den_i aggregate the signal paths the coefficient feeds and weight_i
// is its quadratic weight in the constraint.  The group's constrained power
// sum_i weight_i |alpha_i|^2 is strictly decreasing in lambda, so bisection
// pins the multiplier to the budget; when lambda = 0 already leaves the sum
// short the multiplier clamps at zero and the final projection scales the
// group up instead.
struct GroupEntry {
    cd num;
    double den;
    double weight;
    cd* slot;
};

double group_power_at(const std::vector<GroupEntry>& g, double lambda) {
    double s = 0.0;
    for (const GroupEntry& e : g) {
        const double den = e.den + e.weight * lambda;
        if (den <= 1e-300) continue;
        s += e.weight * std::norm(e.num / den);
    }
    return s;
}

void solve_group(std::vector<GroupEntry>& g, double budget) {
    if (g.empty() || budget <= 0.0) return;
    double path = 0.0;
    for (const GroupEntry& e : g) path += std::norm(e.num);
    if (path <= 1e-300) return;  // no live path; keep current values
    double lambda = 0.0;
    if (group_power_at(g, 0.0) > budget) {
        double hi_sum = 0.0;
        for (const GroupEntry& e : g) hi_sum += std::norm(e.num) / e.weight;
        double lo = 0.0, hi = std::sqrt(hi_sum / budget) + 1.0;
        for (int it = 0; it < 200 && (hi - lo) > 1e-14 * (1.0 + hi); ++it) {
            const double mid = 0.5 * (lo + hi);
            (group_power_at(g, mid) > budget ? lo : hi) = mid;
        }
        lambda = 0.5 * (lo + hi);
    }
    for (GroupEntry& e : g) {
        const double den = e.den + e.weight * lambda;
        if (den <= 1e-300) continue;
        *e.slot = e.num / den;
    }
}

}  // namespace

power::PowerAllocation fixed_point_power(const model::LinkModel& m,
                                         const std::vector<CVec>& w,
                                         const std::vector<std::vector<CVec>>& w_sr,
                                         const power::PowerAllocation& current,
                                         const std::vector<CVec>& pilot_symbols,
                                         double total_power) {
    if (pilot_symbols.empty()) throw Empty("fixed_point_power: no pilot symbols");
    const std::size_t n = m.n_sym;
    const std::size_t t_slots = m.n_slots;

    std::vector<double> mean_s2(n, 0.0);
    for (const CVec& s : pilot_symbols) {
        for (std::size_t j = 0; j < n; ++j) mean_s2[j] += std::norm(s[j]);
    }
    for (double& v : mean_s2) v /= static_cast<double>(pilot_symbols.size());

    power::PowerAllocation next = current;
    std::vector<GroupEntry> g1, g2;

    // Direct-link coefficients: path h_j through the direct filter segment.
    for (std::size_t j = 0; j < n; ++j) {
        const CVec h_j = m.H.col(j);
        const cd kappa = kern::cdotc(w[j].data(), h_j.data(), n);  // w_j1^H h_j
        g1.push_back({mean_s2[j] * std::conj(kappa), mean_s2[j] * std::norm(kappa), 1.0,
                      &next.sd[j]});
    }

    // Source->relay coefficients: chain through the relay filter and the
    // relay's effective block at the destination.  A silent relay feeds no
    // path, so its coefficients have no update of their own; they are zeroed
    // and the live paths absorb the whole group budget (the SG update reaches
    // the same point through its shrinkage term).
    for (std::size_t k = 0; k < next.sr.size(); ++k) {
        auto pos = std::find(m.reliable.begin(), m.reliable.end(), k);
        if (pos == m.reliable.end()) {
            for (std::size_t j = 0; j < n; ++j) next.sr[k][j] = cd{};
            continue;
        }
        const std::size_t li = static_cast<std::size_t>(pos - m.reliable.begin());
        const CVec a_l = CVec(current.rd[k].begin(), current.rd[k].end());
        for (std::size_t j = 0; j < n; ++j) {
            const CVec u = linalg::matvec(m.D[li][j], a_l);  // D_jl a_l
            const cd* w_seg = w[j].data() + model::relay_offset(n, t_slots, li);
            cd c{};
            for (std::size_t a = 0; a < u.size(); ++a) c += std::conj(w_seg[a]) * u[a];
            const CVec f_j = m.F[k].col(j);
            const cd q = kern::cdotc(w_sr[k][j].data(), f_j.data(), n);  // w_sr^H f_j
            const cd kappa = c * q;
            g1.push_back({mean_s2[j] * std::conj(kappa), mean_s2[j] * std::norm(kappa), 1.0,
                          &next.sr[k][j]});
        }
    }

    // Relay slot coefficients, shared across symbols: the slot's numerator and
    // denominator aggregate its per-symbol couplings, and its constraint
    // weight is the n symbols a slot column carries.
    for (std::size_t li = 0; li < m.reliable.size(); ++li) {
        const std::size_t k = m.reliable[li];
        for (std::size_t t = 0; t < t_slots; ++t) {
            cd num{};
            double den = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                const CVec d_jt = m.D[li][j].col(t);
                const cd* w_seg = w[j].data() + model::slot_offset(n, t_slots, li, t);
                cd kappa{};  // w_{j,l,t}^H d_{j,t}
                for (std::size_t a = 0; a < n; ++a) {
                    kappa += std::conj(w_seg[a]) * d_jt[t * n + a];
                }
                num += mean_s2[j] * std::conj(kappa);
                den += mean_s2[j] * std::norm(kappa);
            }
            if (den > 1e-300) {
                g2.push_back({num, den, static_cast<double>(n), &next.rd[k][t]});
            }
        }
    }

    solve_group(g1, total_power);
    solve_group(g2, total_power);

    power::project(next, m.reliable, total_power);
    return next;
}

}  // namespace coopsim::mmse
