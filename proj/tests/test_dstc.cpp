#include "doctest.h"

#include <cmath>
#include <complex>
#include <vector>

#include "coopsim/dstc.hpp"
#include "coopsim/errors.hpp"
#include "coopsim/power.hpp"
#include "testutil.hpp"

using namespace coopsim;
using namespace coopsim::dstc;
using testutil::cd;
using linalg::CMat;
using linalg::CVec;

namespace {

// Physical destination receive of one relay's codeword, written out directly
// from the code definition rather than through build_effective_D: slot t
// sends coef_t * Gtilde * m_t, and the receiver conjugates flagged slots.
CVec physical_relay_rx(const CMat& g, CodeScheme scheme, const CMat* u, const CVec& s,
                       const std::vector<cd>& alpha_rd, const CVec& noise) {
    // Alamouti matrix by hand.
    CMat m(2, 2);
    m(0, 0) = s[0];
    m(1, 0) = s[1];
    m(0, 1) = -std::conj(s[1]);
    m(1, 1) = std::conj(s[0]);
    if (scheme == CodeScheme::RAlamouti) m = linalg::matmul(*u, m);

    const auto flags = conj_slots();
    CVec out(4);
    for (std::size_t t = 0; t < 2; ++t) {
        const cd coef = flags[t] ? std::conj(alpha_rd[t]) : alpha_rd[t];
        const CVec y = linalg::matvec(g, m.col(t));
        for (std::size_t a = 0; a < 2; ++a) {
            cd v = coef * y[a] + noise[t * 2 + a];
            out[t * 2 + a] = flags[t] ? std::conj(v) : v;
        }
    }
    return out;
}

}  // namespace

TEST_SUITE("dstc") {

TEST_CASE("alamouti codeword frozen layout") {
    const CVec s = {cd{1.0, 2.0}, cd{-0.5, 0.25}};
    const Codeword cw = encode(CodeScheme::DAlamouti, s, nullptr);
    CHECK(cw.m(0, 0) == s[0]);
    CHECK(cw.m(1, 0) == s[1]);
    CHECK(cw.m(0, 1) == -std::conj(s[1]));
    CHECK(cw.m(1, 1) == std::conj(s[0]));
    CHECK(cw.conj_slot == std::vector<std::uint8_t>{0, 1});
}

TEST_CASE("codeword columns are orthogonal with equal energy") {
    coopsim::fading::Rng rng(21);
    for (int it = 0; it < 20; ++it) {
        const CVec s = testutil::random_cvec(rng, 2);
        const CMat u = draw_randomizer(rng, 2);
        for (CodeScheme scheme : {CodeScheme::DAlamouti, CodeScheme::RAlamouti}) {
            const Codeword cw = encode(scheme, s, &u);
            const CVec c0 = cw.m.col(0), c1 = cw.m.col(1);
            const double e = std::norm(s[0]) + std::norm(s[1]);
            double e0 = 0, e1 = 0;
            cd dot{};
            for (std::size_t a = 0; a < 2; ++a) {
                e0 += std::norm(c0[a]);
                e1 += std::norm(c1[a]);
                dot += std::conj(c0[a]) * c1[a];
            }
            CHECK(e0 == doctest::Approx(e).epsilon(1e-12));
            CHECK(e1 == doctest::Approx(e).epsilon(1e-12));
            CHECK(std::abs(dot) < 1e-12);
        }
    }
}

TEST_CASE("randomizer is unitary") {
    coopsim::fading::Rng rng(22);
    for (int it = 0; it < 25; ++it) {
        const CMat u = draw_randomizer(rng, 2);
        const CMat uhu = linalg::matmul(linalg::hermitian(u), u);
        for (std::size_t r = 0; r < 2; ++r) {
            for (std::size_t c = 0; c < 2; ++c) {
                const cd want = r == c ? cd{1.0, 0.0} : cd{0.0, 0.0};
                CHECK(std::abs(uhu(r, c) - want) < 1e-12);
            }
        }
    }
}

TEST_CASE("effective blocks on the identity channel") {
    const auto D = build_effective_D(CMat::identity(2), CodeScheme::DAlamouti, nullptr);
    REQUIRE(D.size() == 2);
    // Symbol 1: slot-1 block [1,0], slot-2 block [0,1].
    CHECK(D[0](0, 0) == cd{1, 0});
    CHECK(D[0](1, 0) == cd{0, 0});
    CHECK(D[0](2, 1) == cd{0, 0});
    CHECK(D[0](3, 1) == cd{1, 0});
    // Symbol 2: slot-1 block [0,1], slot-2 block [-1,0].
    CHECK(D[1](0, 0) == cd{0, 0});
    CHECK(D[1](1, 0) == cd{1, 0});
    CHECK(D[1](2, 1) == cd{-1, 0});
    CHECK(D[1](3, 1) == cd{0, 0});
    // Off-diagonal blocks stay zero.
    CHECK(D[0](0, 1) == cd{0, 0});
    CHECK(D[1](2, 0) == cd{0, 0});
}

TEST_CASE("build_B shapes and direct column") {
    coopsim::fading::Rng rng(23);
    const CMat h = testutil::random_cmat(rng, 2, 2);

    const auto b0 = build_B(h, {});
    REQUIRE(b0.size() == 2);
    CHECK(b0[0].rows() == 2);
    CHECK(b0[0].cols() == 1);
    CHECK(b0[1](0, 0) == h(0, 1));

    const CMat g = testutil::random_cmat(rng, 2, 2);
    const auto d = build_effective_D(g, CodeScheme::DAlamouti, nullptr);
    const auto b2 = build_B(h, {d, d});
    CHECK(b2[0].rows() == 2 + 2 * 4);
    CHECK(b2[0].cols() == 1 + 2 * 2);
    CHECK(b2[0](2, 1) == d[0](0, 0));
    CHECK(b2[0](6, 3) == d[0](0, 0));
    CHECK(b2[0](2, 3) == cd{0, 0});
}

TEST_CASE("dimension and argument validation") {
    CHECK_THROWS_AS(encode(CodeScheme::DAlamouti, CVec(3), nullptr), UnsupportedDims);
    CHECK_THROWS_AS(encode(CodeScheme::RAlamouti, CVec(2), nullptr), UnsupportedDims);
    const CMat bad(3, 3);
    CHECK_THROWS_AS(encode(CodeScheme::RAlamouti, CVec(2), &bad), UnsupportedDims);
    CHECK_THROWS_AS(build_effective_D(bad, CodeScheme::DAlamouti, nullptr), UnsupportedDims);
    CHECK_THROWS_AS(code_column(2, 0), UnsupportedDims);
}

TEST_CASE("stacked linear model matches the physical simulation") {
    // r = sum_j B_j a_j s_j + noise must reproduce, entry for entry, a direct
    // simulation of the broadcast and relay transmissions.
    coopsim::fading::Rng rng(24);
    int checked = 0;
    for (int it = 0; it < 1000; ++it) {
        const CodeScheme scheme = (it % 2) ? CodeScheme::RAlamouti : CodeScheme::DAlamouti;
        const std::size_t n_relays = 1 + (it % 3);
        std::vector<std::size_t> reliable;
        for (std::size_t k = 0; k < n_relays; ++k) {
            if (rng.bit()) reliable.push_back(k);
        }
        const auto inst = testutil::random_model(rng, n_relays, reliable, scheme);
        const auto p =
            testutil::random_power(rng, 2, n_relays, 2, {/*project group 1 only*/}, 1.0);
        const CVec s = testutil::random_symbols(rng, 2);
        const CVec n_sd = testutil::random_cvec(rng, 2);

        // Physical side.
        CVec r_phys(2 + reliable.size() * 4);
        {
            CVec direct(2);
            for (std::size_t a = 0; a < 2; ++a) {
                direct[a] = n_sd[a];
                for (std::size_t j = 0; j < 2; ++j) {
                    direct[a] += inst.ch.H(a, j) * p.sd[j] * s[j];
                }
            }
            std::copy(direct.begin(), direct.end(), r_phys.begin());
        }
        std::vector<CVec> relay_noise(reliable.size());
        for (std::size_t li = 0; li < reliable.size(); ++li) {
            const std::size_t k = reliable[li];
            relay_noise[li] = testutil::random_cvec(rng, 4);
            const CMat* u = inst.u.empty() ? nullptr : &inst.u[k];
            const CVec block =
                physical_relay_rx(inst.ch.G[k], scheme, u, s, p.rd[k], relay_noise[li]);
            std::copy(block.begin(), block.end(), r_phys.begin() + 2 + 4 * li);
        }

        // Model side.
        std::vector<std::vector<CMat>> relay_D;
        for (std::size_t li = 0; li < reliable.size(); ++li) relay_D.push_back(inst.m.D[li]);
        const auto B = build_B(inst.ch.H, relay_D);
        CVec r_model(r_phys.size());
        const auto flags = conj_slots();
        for (std::size_t a = 0; a < 2; ++a) r_model[a] = n_sd[a];
        for (std::size_t li = 0; li < reliable.size(); ++li) {
            for (std::size_t t = 0; t < 2; ++t) {
                for (std::size_t a = 0; a < 2; ++a) {
                    const cd z = relay_noise[li][t * 2 + a];
                    r_model[2 + 4 * li + t * 2 + a] = flags[t] ? std::conj(z) : z;
                }
            }
        }
        for (std::size_t j = 0; j < 2; ++j) {
            const CVec a_j = power::stack_coefficients(p, j, reliable);
            const CVec bj_aj = linalg::matvec(B[j], a_j);
            for (std::size_t i = 0; i < r_model.size(); ++i) r_model[i] += bj_aj[i] * s[j];
        }

        for (std::size_t i = 0; i < r_phys.size(); ++i) {
            CHECK(std::abs(r_phys[i] - r_model[i]) < 1e-10);
            ++checked;
        }
    }
    CHECK(checked > 2000);
}

}  // TEST_SUITE
