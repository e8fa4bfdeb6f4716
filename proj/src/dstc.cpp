#include "coopsim/dstc.hpp"

#include <cmath>
#include <complex>

#include "coopsim/errors.hpp"
#include "coopsim/kernels.hpp"

namespace coopsim::dstc {

std::vector<std::uint8_t> conj_slots() { return {0, 1}; }

CVec code_column(std::size_t j, std::size_t t) {
    // Slot 1 carries [s1, s2]; slot 2 carries [-conj(s2), conj(s1)].
    if (j >= kCodeN || t >= kCodeT) throw UnsupportedDims("code_column: index out of range");
    CVec c(kCodeN);
    if (t == 0) {
        c[j] = 1.0;
    } else {
        if (j == 0) c[1] = 1.0;   // conj(s1) on antenna 2
        else c[0] = -1.0;         // -conj(s2) on antenna 1
    }
    return c;
}

Codeword encode(CodeScheme scheme, const CVec& symbols, const CMat* randomizer) {
    if (symbols.size() != kCodeN) throw UnsupportedDims("encode: needs exactly 2 symbols");
    Codeword cw;
    cw.conj_slot = conj_slots();
    cw.m = CMat(kCodeN, kCodeT);
    for (std::size_t t = 0; t < kCodeT; ++t) {
        for (std::size_t j = 0; j < kCodeN; ++j) {
            const CVec c = code_column(j, t);
            const cd sym = cw.conj_slot[t] ? std::conj(symbols[j]) : symbols[j];
            for (std::size_t a = 0; a < kCodeN; ++a) cw.m(a, t) += c[a] * sym;
        }
    }
    if (scheme == CodeScheme::RAlamouti) {
        if (!randomizer || randomizer->rows() != kCodeN || randomizer->cols() != kCodeN) {
            throw UnsupportedDims("encode: RAlamouti needs a 2x2 randomizer");
        }
        cw.m = linalg::matmul(*randomizer, cw.m);
    }
    return cw;
}

CMat draw_randomizer(fading::Rng& rng, std::size_t n) {
    // Gram-Schmidt on a Gaussian matrix, with the pivot phases normalised.
    CMat g = fading::draw_channel_matrix(rng, n, n);
    for (std::size_t c = 0; c < n; ++c) {
        CVec v = g.col(c);
        for (std::size_t prev = 0; prev < c; ++prev) {
            const CVec q = g.col(prev);
            const cd proj = kern::cdotc(q.data(), v.data(), n);
            for (std::size_t r = 0; r < n; ++r) v[r] -= proj * q[r];
        }
        const double norm = std::sqrt(kern::sum_abs2(v.data(), n));
        if (norm < 1e-12) return draw_randomizer(rng, n);  // degenerate draw, retry
        const cd phase = std::abs(v[c]) > 0 ? v[c] / std::abs(v[c]) : cd{1.0};
        for (std::size_t r = 0; r < n; ++r) g(r, c) = v[r] / (norm * phase);
    }
    return g;
}

std::vector<CMat> build_effective_D(const CMat& G, CodeScheme scheme, const CMat* randomizer) {
    if (G.rows() != kCodeN || G.cols() != kCodeN) throw UnsupportedDims("build_effective_D: G must be 2x2");
    CMat gt = G;
    if (scheme == CodeScheme::RAlamouti) {
        if (!randomizer || randomizer->rows() != kCodeN || randomizer->cols() != kCodeN) {
            throw UnsupportedDims("build_effective_D: RAlamouti needs a 2x2 randomizer");
        }
        gt = linalg::matmul(G, *randomizer);
    }
    const auto conj_flags = conj_slots();
    std::vector<CMat> out;
    out.reserve(kCodeN);
    for (std::size_t j = 0; j < kCodeN; ++j) {
        CMat D(kCodeN * kCodeT, kCodeT);
        for (std::size_t t = 0; t < kCodeT; ++t) {
            CVec d = linalg::matvec(gt, code_column(j, t));
            if (conj_flags[t]) {
                for (auto& z : d) z = std::conj(z);
            }
            for (std::size_t a = 0; a < kCodeN; ++a) D(t * kCodeN + a, t) = d[a];
        }
        out.push_back(std::move(D));
    }
    return out;
}

std::vector<CMat> build_B(const CMat& H, const std::vector<std::vector<CMat>>& relay_D) {
    const std::size_t n = H.rows();
    const std::size_t n_sym = H.cols();
    const std::size_t L = relay_D.size();
    std::size_t slot_rows = 0, slot_cols = 0;
    for (const auto& d : relay_D) {
        if (d.size() != n_sym) throw DimensionMismatch("build_B: relay block count != symbol count");
        slot_rows = d[0].rows();
        slot_cols = d[0].cols();
    }
    std::vector<CMat> out;
    out.reserve(n_sym);
    for (std::size_t j = 0; j < n_sym; ++j) {
        CMat B(n + L * slot_rows, 1 + L * slot_cols);
        for (std::size_t r = 0; r < n; ++r) B(r, 0) = H(r, j);
        for (std::size_t l = 0; l < L; ++l) {
            const CMat& D = relay_D[l][j];
            if (D.rows() != slot_rows || D.cols() != slot_cols) {
                throw DimensionMismatch("build_B: inconsistent relay block shapes");
            }
            for (std::size_t r = 0; r < slot_rows; ++r) {
                for (std::size_t c = 0; c < slot_cols; ++c) {
                    B(n + l * slot_rows + r, 1 + l * slot_cols + c) = D(r, c);
                }
            }
        }
        out.push_back(std::move(B));
    }
    return out;
}

}  // namespace coopsim::dstc
