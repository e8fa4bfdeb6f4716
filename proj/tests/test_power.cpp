#include "doctest.h"

#include <cmath>
#include <complex>

#include "coopsim/errors.hpp"
#include "coopsim/power.hpp"
#include "testutil.hpp"

using namespace coopsim::power;
using testutil::cd;

TEST_SUITE("power") {

TEST_CASE("equal power frozen values for the 2x2 single-relay system") {
    // Source group: 2 sd + 2 sr entries at P/(N(1+n_r)) = 1/4 each -> 1/2.
    // Relay group: N * T * |rd|^2 = 4 * 1/4 = 1 with rd = 1/2.
    const PowerAllocation p = equal_power(2, 1, 2, 1.0);
    CHECK(p.sd.size() == 2);
    CHECK(p.sr.size() == 1);
    CHECK(p.rd.size() == 1);
    CHECK(std::abs(p.sd[0] - cd{0.5, 0.0}) < 1e-15);
    CHECK(std::abs(p.sr[0][1] - cd{0.5, 0.0}) < 1e-15);
    CHECK(std::abs(p.rd[0][0] - cd{0.5, 0.0}) < 1e-15);

    CHECK(source_group_power(p) == doctest::Approx(1.0));
    CHECK(relay_group_power(p, {0}) == doctest::Approx(1.0));
}

TEST_CASE("equal power satisfies both budgets for any shape") {
    coopsim::fading::Rng rng(31);
    for (std::size_t n_relays : {1u, 2u, 3u}) {
        const double pt = 0.25 + rng.uniform();
        const PowerAllocation p = equal_power(2, n_relays, 2, pt);
        std::vector<std::size_t> all;
        for (std::size_t k = 0; k < n_relays; ++k) all.push_back(k);
        CHECK(source_group_power(p) == doctest::Approx(pt).epsilon(1e-12));
        CHECK(relay_group_power(p, all) == doctest::Approx(pt).epsilon(1e-12));
    }
}

TEST_CASE("projection meets both budgets exactly and is idempotent") {
    coopsim::fading::Rng rng(32);
    for (int it = 0; it < 50; ++it) {
        auto p = testutil::random_power(rng, 2, 2, 2, {0, 1}, 1.0);
        CHECK(source_group_power(p) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(relay_group_power(p, {0, 1}) == doctest::Approx(1.0).epsilon(1e-12));

        const cd before = p.sd[0];
        project(p, {0, 1}, 1.0);
        CHECK(std::abs(p.sd[0] - before) < 1e-12);
    }
}

TEST_CASE("projection preserves ratios and phases inside a group") {
    coopsim::fading::Rng rng(33);
    PowerAllocation p;
    p.sd = testutil::random_cvec(rng, 2);
    p.sr = {testutil::random_cvec(rng, 2)};
    p.rd = {testutil::random_cvec(rng, 2)};
    const cd ratio_before = p.sd[0] / p.sr[0][1];
    const cd rd_phase_before = p.rd[0][0] / std::abs(p.rd[0][0]);
    project(p, {0}, 2.0);
    const cd ratio_after = p.sd[0] / p.sr[0][1];
    CHECK(std::abs(ratio_before - ratio_after) < 1e-12);
    CHECK(std::abs(rd_phase_before - p.rd[0][0] / std::abs(p.rd[0][0])) < 1e-12);
}

TEST_CASE("projection over a subset rescales only that subset") {
    PowerAllocation p = equal_power(2, 2, 2, 1.0);
    const cd silent_before = p.rd[1][0];
    project(p, {0}, 1.0);
    // Relay 1 untouched; relay 0 alone now carries the whole budget.
    CHECK(std::abs(p.rd[1][0] - silent_before) < 1e-15);
    CHECK(relay_group_power(p, {0}) == doctest::Approx(1.0).epsilon(1e-12));
    // Silent relay's source-side coefficients still count in group 1.
    CHECK(source_group_power(p) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("degenerate groups are rejected") {
    PowerAllocation p;
    p.sd = {cd{0, 0}, cd{0, 0}};
    p.sr = {};
    p.rd = {{cd{1, 0}, cd{1, 0}}};
    CHECK_THROWS_AS(project(p, {}, 1.0), coopsim::DegenerateGroup);

    PowerAllocation q = equal_power(2, 1, 2, 1.0);
    q.rd[0] = {cd{0, 0}, cd{0, 0}};
    CHECK_THROWS_AS(project(q, {0}, 1.0), coopsim::DegenerateGroup);
    CHECK_NOTHROW(project(q, {}, 1.0));  // empty reliable set skips group 2
}

TEST_CASE("stacked coefficients follow the model column layout") {
    PowerAllocation p = equal_power(2, 2, 2, 1.0);
    p.rd[1][1] = cd{0.0, 0.25};
    const auto a0 = stack_coefficients(p, 0, {1});
    REQUIRE(a0.size() == 3);
    CHECK(a0[0] == p.sd[0]);
    CHECK(a0[1] == p.rd[1][0]);
    CHECK(a0[2] == p.rd[1][1]);
    const auto a1 = stack_coefficients(p, 1, {0, 1});
    REQUIRE(a1.size() == 5);
    CHECK(a1[0] == p.sd[1]);
    CHECK(a1[3] == p.rd[1][0]);
}

}  // TEST_SUITE
