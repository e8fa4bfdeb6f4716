#include "doctest.h"

#include <cmath>

#include "coopsim/fading.hpp"
#include "testutil.hpp"

using namespace coopsim::fading;
using testutil::cd;

TEST_SUITE("fading") {

TEST_CASE("same seed, same stream") {
    Rng a(42), b(42);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("derive is a pure function of seed and keys") {
    Rng parent(9001);
    Rng c1 = parent.derive(3, 7);
    // Burn parent state; derivation must not care.
    for (int i = 0; i < 17; ++i) parent.next_u64();
    Rng c2 = parent.derive(3, 7);
    for (int i = 0; i < 50; ++i) CHECK(c1.next_u64() == c2.next_u64());

    Rng d1 = parent.derive(3, 8);
    Rng d2 = parent.derive(4, 7);
    CHECK(d1.next_u64() != d2.next_u64());
    CHECK(parent.derive(3, 7).next_u64() != d1.next_u64());
}

TEST_CASE("uniform lies in (0,1]") {
    Rng rng(1);
    for (int i = 0; i < 10000; ++i) {
        const double u = rng.uniform();
        CHECK(u > 0.0);
        CHECK(u <= 1.0);
    }
}

TEST_CASE("complex normal moments") {
    Rng rng(2024);
    const int n = 200000;
    cd mean{};
    double pow2 = 0.0, re2 = 0.0, im2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const cd z = rng.cnormal();
        mean += z;
        pow2 += std::norm(z);
        re2 += z.real() * z.real();
        im2 += z.imag() * z.imag();
    }
    mean /= static_cast<double>(n);
    CHECK(std::abs(mean) < 0.01);
    CHECK(pow2 / n == doctest::Approx(1.0).epsilon(0.01));        // E|z|^2 = 1
    CHECK(re2 / n == doctest::Approx(0.5).epsilon(0.02));         // split evenly
    CHECK(im2 / n == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("bit is a fair coin") {
    Rng rng(3);
    int ones = 0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) ones += rng.bit();
    CHECK(std::abs(ones / static_cast<double>(n) - 0.5) < 0.01);
}

TEST_CASE("noise variance tracks sigma2") {
    Rng rng(4);
    const double sigma2 = 0.3;
    double acc = 0.0;
    const int reps = 20000;
    for (int i = 0; i < reps; ++i) {
        const auto v = draw_noise(rng, 4, sigma2);
        for (const cd& z : v) acc += std::norm(z);
    }
    CHECK(acc / (4.0 * reps) == doctest::Approx(sigma2).epsilon(0.02));
}

TEST_CASE("channel draws are unit variance and frozen per call") {
    Rng rng(5);
    const ChannelSet cs = draw_channels(rng, 2, 2);
    CHECK(cs.F.size() == 2);
    CHECK(cs.G.size() == 2);
    CHECK(cs.H.rows() == 2);

    Rng rng2(5);
    const ChannelSet again = draw_channels(rng2, 2, 2);
    CHECK(cs.H(0, 0) == again.H(0, 0));
    CHECK(cs.G[1](1, 1) == again.G[1](1, 1));

    double acc = 0.0;
    Rng rng3(6);
    const int reps = 5000;
    for (int i = 0; i < reps; ++i) {
        const auto m = draw_channel_matrix(rng3, 2, 2);
        for (std::size_t r = 0; r < 2; ++r) {
            for (std::size_t c = 0; c < 2; ++c) acc += std::norm(m(r, c));
        }
    }
    CHECK(acc / (4.0 * reps) == doctest::Approx(1.0).epsilon(0.03));
}

TEST_CASE("ebn0_to_sigma2 frozen points") {
    // QPSK, rate 1: sigma2 = 1 / (2 * 10^(dB/10))
    CHECK(ebn0_to_sigma2(0.0) == doctest::Approx(0.5));
    CHECK(ebn0_to_sigma2(10.0) == doctest::Approx(0.05));
    CHECK(ebn0_to_sigma2(20.0) == doctest::Approx(0.005));
    CHECK(ebn0_to_sigma2(10.0, 1, 1.0) == doctest::Approx(0.1));
    CHECK(ebn0_to_sigma2(10.0, 2, 0.5) == doctest::Approx(0.1));
}

}  // TEST_SUITE
