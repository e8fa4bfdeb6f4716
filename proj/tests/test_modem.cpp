#include "doctest.h"

#include <cmath>
#include <vector>

#include "coopsim/errors.hpp"
#include "coopsim/fading.hpp"
#include "coopsim/modem.hpp"

using namespace coopsim::modem;
using cd = std::complex<double>;

TEST_SUITE("modem") {

TEST_CASE("frozen constellation map") {
    const double a = 1.0 / std::sqrt(2.0);
    const std::vector<std::uint8_t> bits = {0, 0, 0, 1, 1, 0, 1, 1};
    const std::vector<cd> want = {{a, a}, {a, -a}, {-a, a}, {-a, -a}};
    const std::vector<cd> got = modulate(bits);
    REQUIRE(got.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(got[i] - want[i]) < 1e-15);
    for (const cd& z : got) CHECK(std::norm(z) == doctest::Approx(kSymbolEnergy));
}

TEST_CASE("gray property: adjacent quadrants differ in one bit") {
    // Neighbours along the real axis share the imag bit and vice versa.
    std::uint8_t b0, b1, c0, c1;
    hard_pair(map_pair(0, 0), b0, b1);
    hard_pair(map_pair(1, 0), c0, c1);
    CHECK(b1 == c1);
    CHECK(b0 != c0);
    hard_pair(map_pair(0, 1), c0, c1);
    CHECK(b0 == c0);
    CHECK(b1 != c1);
}

TEST_CASE("round trip over random bits") {
    coopsim::fading::Rng rng(5);
    std::vector<std::uint8_t> bits(2000);
    for (auto& b : bits) b = rng.bit();
    CHECK(demodulate(modulate(bits)) == bits);
}

TEST_CASE("hard decision ties go to bit 0") {
    std::uint8_t b0 = 9, b1 = 9;
    hard_pair(cd{0.0, 0.0}, b0, b1);
    CHECK(b0 == 0);
    CHECK(b1 == 0);
    hard_pair(cd{0.0, -1.0}, b0, b1);
    CHECK(b0 == 0);
    CHECK(b1 == 1);
}

TEST_CASE("noisy but in-quadrant symbols decode exactly") {
    coopsim::fading::Rng rng(6);
    std::vector<std::uint8_t> bits(400);
    for (auto& b : bits) b = rng.bit();
    auto sym = modulate(bits);
    for (auto& z : sym) z += 0.2 * (z / std::abs(z));  // push further into the quadrant
    CHECK(demodulate(sym) == bits);
}

TEST_CASE("input validation") {
    CHECK_THROWS_AS(modulate({0}), coopsim::LengthMismatch);
    CHECK_THROWS_AS(modulate({0, 2}), coopsim::Error);
    CHECK(count_bit_errors({0, 1, 1}, {1, 1, 0}) == 2);
    CHECK_THROWS_AS(count_bit_errors({0}, {0, 1}), coopsim::LengthMismatch);
}

}  // TEST_SUITE
