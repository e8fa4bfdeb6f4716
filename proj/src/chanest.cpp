#include "coopsim/chanest.hpp"

#include <cmath>
#include <complex>

#include "coopsim/errors.hpp"
#include "coopsim/kernels.hpp"

namespace coopsim::chanest {

namespace {

CVec regressor(std::span<const cd> alpha, std::span<const cd> s) {
    if (alpha.size() != s.size()) throw DimensionMismatch("regressor: sizes differ");
    CVec x(alpha.size());
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = alpha[i] * s[i];
    return x;
}

CVec residual_H(std::span<const cd> r, const CMat& H, const CVec& x) {
    if (r.size() != H.rows() || x.size() != H.cols()) {
        throw DimensionMismatch("residual: sizes differ");
    }
    CVec rho(r.begin(), r.end());
    for (std::size_t row = 0; row < H.rows(); ++row) {
        rho[row] -= kern::cdotu(H.row(row), x.data(), x.size());
    }
    return rho;
}

}  // namespace

double cost_H(std::span<const cd> r, const CMat& H, std::span<const cd> alpha,
              std::span<const cd> s) {
    const CVec rho = residual_H(r, H, regressor(alpha, s));
    return kern::sum_abs2(rho.data(), rho.size());
}

CMat grad_H(std::span<const cd> r, const CMat& H, std::span<const cd> alpha,
            std::span<const cd> s) {
    const CVec x = regressor(alpha, s);
    const CVec rho = residual_H(r, H, x);
    CMat g(H.rows(), H.cols());
    for (std::size_t row = 0; row < H.rows(); ++row) {
        for (std::size_t col = 0; col < H.cols(); ++col) {
            g(row, col) = -rho[row] * std::conj(x[col]);
        }
    }
    return g;
}

void step_H(CMat& H, std::span<const cd> r, std::span<const cd> alpha, std::span<const cd> s,
            const Config& cfg) {
    const CVec x = regressor(alpha, s);
    const CVec rho = residual_H(r, H, x);
    const double denom = cfg.eps + kern::sum_abs2(x.data(), x.size());
    const double f = cfg.beta / denom;
    for (std::size_t row = 0; row < H.rows(); ++row) {
        for (std::size_t col = 0; col < H.cols(); ++col) {
            H(row, col) += f * rho[row] * std::conj(x[col]);
        }
    }
}

namespace {

// Reconstruction sum_j (D_j a_l) z_j with z_j = w_sr_j^H (F x + n_sr).
CVec reconstruct_F(const CMat& F, const CVec& x, std::span<const cd> n_sr,
                   const std::vector<CMat>& D, std::span<const cd> a_l,
                   const std::vector<CVec>& w_sr, CVec* z_out) {
    const std::size_t n = F.rows();
    CVec r_sr(n);
    for (std::size_t row = 0; row < n; ++row) {
        r_sr[row] = kern::cdotu(F.row(row), x.data(), n) + n_sr[row];
    }
    const std::size_t nt = D[0].rows();
    CVec y(nt);
    CVec z(D.size());
    for (std::size_t j = 0; j < D.size(); ++j) {
        z[j] = kern::cdotc(w_sr[j].data(), r_sr.data(), n);
        const CVec u = linalg::matvec(D[j], CVec(a_l.begin(), a_l.end()));
        kern::axpy(z[j], u.data(), y.data(), nt);
    }
    if (z_out) *z_out = z;
    return y;
}

}  // namespace

double cost_F(std::span<const cd> r_l, const CMat& F, std::span<const cd> alpha_sr,
              std::span<const cd> s, std::span<const cd> n_sr, const std::vector<CMat>& D,
              std::span<const cd> a_l, const std::vector<CVec>& w_sr) {
    const CVec x = regressor(alpha_sr, s);
    const CVec y = reconstruct_F(F, x, n_sr, D, a_l, w_sr, nullptr);
    double acc = 0.0;
    for (std::size_t i = 0; i < r_l.size(); ++i) acc += std::norm(r_l[i] - y[i]);
    return acc;
}

CMat grad_F(std::span<const cd> r_l, const CMat& F, std::span<const cd> alpha_sr,
            std::span<const cd> s, std::span<const cd> n_sr, const std::vector<CMat>& D,
            std::span<const cd> a_l, const std::vector<CVec>& w_sr) {
    const std::size_t n = F.rows();
    const CVec x = regressor(alpha_sr, s);
    const CVec y = reconstruct_F(F, x, n_sr, D, a_l, w_sr, nullptr);
    CVec rho(r_l.size());
    for (std::size_t i = 0; i < rho.size(); ++i) rho[i] = r_l[i] - y[i];
    // d cost / dconj(F_{mn}) = -sum_j ((D_j a_l)^H rho) w_sr_j[m] conj(x[n])
    CMat g(n, n);
    for (std::size_t j = 0; j < D.size(); ++j) {
        const CVec u = linalg::matvec(D[j], CVec(a_l.begin(), a_l.end()));
        const cd kappa = kern::cdotc(u.data(), rho.data(), u.size());  // (D_j a_l)^H rho
        for (std::size_t m = 0; m < n; ++m) {
            for (std::size_t col = 0; col < n; ++col) {
                g(m, col) -= kappa * w_sr[j][m] * std::conj(x[col]);
            }
        }
    }
    return g;
}

double cost_D(std::span<const cd> r_l, const std::vector<CMat>& D, std::span<const cd> a_l,
              std::span<const cd> s_fwd) {
    const std::size_t nt = D[0].rows();
    CVec y(nt);
    for (std::size_t j = 0; j < D.size(); ++j) {
        const CVec u = linalg::matvec(D[j], CVec(a_l.begin(), a_l.end()));
        kern::axpy(s_fwd[j], u.data(), y.data(), nt);
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < r_l.size(); ++i) acc += std::norm(r_l[i] - y[i]);
    return acc;
}

std::vector<CMat> grad_D(std::span<const cd> r_l, const std::vector<CMat>& D,
                         std::span<const cd> a_l, std::span<const cd> s_fwd) {
    const std::size_t nt = D[0].rows();
    const std::size_t t_slots = D[0].cols();
    const std::size_t n = nt / t_slots;
    CVec y(nt);
    for (std::size_t j = 0; j < D.size(); ++j) {
        const CVec u = linalg::matvec(D[j], CVec(a_l.begin(), a_l.end()));
        kern::axpy(s_fwd[j], u.data(), y.data(), nt);
    }
    CVec rho(r_l.size());
    for (std::size_t i = 0; i < rho.size(); ++i) rho[i] = r_l[i] - y[i];
    // Block t of symbol j: -rho_t conj(a_t s_j); off-block entries stay zero.
    std::vector<CMat> g(D.size());
    for (std::size_t j = 0; j < D.size(); ++j) {
        g[j] = CMat(nt, t_slots);
        for (std::size_t t = 0; t < t_slots; ++t) {
            const cd f = -std::conj(a_l[t] * s_fwd[j]);
            for (std::size_t a = 0; a < n; ++a) {
                g[j](t * n + a, t) = rho[t * n + a] * f;
            }
        }
    }
    return g;
}

void step_D(std::vector<CMat>& D, std::span<const cd> r_l, std::span<const cd> a_l,
            std::span<const cd> s_fwd, const Config& cfg) {
    const std::vector<CMat> g = grad_D(r_l, D, a_l, s_fwd);
    for (std::size_t j = 0; j < D.size(); ++j) {
        double reg = cfg.eps;
        for (std::size_t t = 0; t < a_l.size(); ++t) reg += std::norm(a_l[t] * s_fwd[j]);
        const double f = cfg.beta / reg;
        for (std::size_t r = 0; r < D[j].rows(); ++r) {
            for (std::size_t c = 0; c < D[j].cols(); ++c) {
                D[j](r, c) -= f * g[j](r, c);
            }
        }
    }
}

double nmse(const CMat& est, const CMat& truth) {
    double num = 0.0, den = 0.0;
    for (std::size_t r = 0; r < truth.rows(); ++r) {
        for (std::size_t c = 0; c < truth.cols(); ++c) {
            num += std::norm(est(r, c) - truth(r, c));
            den += std::norm(truth(r, c));
        }
    }
    return den > 0 ? num / den : num;
}

}  // namespace coopsim::chanest
