#include "doctest.h"

#include <complex>

#include "coopsim/errors.hpp"
#include "coopsim/linalg.hpp"
#include "testutil.hpp"

using namespace coopsim::linalg;
using testutil::cd;

TEST_SUITE("linalg") {

TEST_CASE("construction and shape checks") {
    CMat a(2, 3);
    CHECK(a.rows() == 2);
    CHECK(a.cols() == 3);
    CHECK(a(1, 2) == cd{0.0, 0.0});
    CHECK_THROWS_AS(CMat(2, 2, {cd{1.0, 0.0}}), coopsim::DimensionMismatch);

    const CMat i2 = CMat::identity(2);
    CHECK(i2(0, 0) == cd{1.0, 0.0});
    CHECK(i2(0, 1) == cd{0.0, 0.0});
}

TEST_CASE("hermitian, matmul, matvec against hand values") {
    const CMat a(2, 2, {cd{1, 0}, cd{0, 1}, cd{2, -1}, cd{0, 0}});
    const CMat ah = hermitian(a);
    CHECK(ah(0, 1) == cd{2, 1});
    CHECK(ah(1, 0) == cd{0, -1});

    const CMat b(2, 2, {cd{0, 0}, cd{1, 0}, cd{1, 0}, cd{0, 0}});
    const CMat ab = matmul(a, b);
    CHECK(ab(0, 0) == cd{0, 1});
    CHECK(ab(0, 1) == cd{1, 0});
    CHECK(ab(1, 0) == cd{0, 0});
    CHECK(ab(1, 1) == cd{2, -1});

    const CVec x = {cd{1, 0}, cd{0, 1}};
    const CVec ax = matvec(a, x);
    // 1*1 + i*i = 0 and (2-i)*1 + 0*i = 2-i
    CHECK(std::abs(ax[0]) < 1e-15);
    CHECK(std::abs(ax[1] - cd{2, -1}) < 1e-15);
}

TEST_CASE("solve frozen 2x2 system") {
    // [[1, i], [-i, 2]] x = [1, i]  ->  x = [3, 2i] ... verify by residual and
    // direct substitution.
    CMat a(2, 2, {cd{1, 0}, cd{0, 1}, cd{0, -1}, cd{2, 0}});
    const CVec b = {cd{1, 0}, cd{0, 1}};
    const CVec x = solve(a, b);
    const CVec r = matvec(a, x);
    CHECK(std::abs(r[0] - b[0]) < 1e-12);
    CHECK(std::abs(r[1] - b[1]) < 1e-12);
    // det = 2 - 1 = 1; x = [[2, -i], [i, 1]] b = [2 - i*i, i + i] = [3, 2i]
    CHECK(std::abs(x[0] - cd{3, 0}) < 1e-12);
    CHECK(std::abs(x[1] - cd{0, 2}) < 1e-12);
}

TEST_CASE("solve random systems by residual") {
    coopsim::fading::Rng rng(11);
    for (int it = 0; it < 50; ++it) {
        const std::size_t n = 1 + static_cast<std::size_t>(rng.next_u64() % 8);
        const CMat a = testutil::random_cmat(rng, n, n);
        const CVec b = testutil::random_cvec(rng, n);
        const CVec x = solve(a, b);
        const CVec r = matvec(a, x);
        double err = 0.0;
        for (std::size_t i = 0; i < n; ++i) err += std::norm(r[i] - b[i]);
        CHECK(std::sqrt(err) < 1e-9);
    }
}

TEST_CASE("solve_multi matches column-wise solve") {
    coopsim::fading::Rng rng(12);
    const CMat a = testutil::random_cmat(rng, 4, 4);
    const CMat b = testutil::random_cmat(rng, 4, 3);
    const CMat x = solve_multi(a, b);
    for (std::size_t c = 0; c < 3; ++c) {
        const CVec xc = solve(a, b.col(c));
        for (std::size_t r = 0; r < 4; ++r) CHECK(std::abs(x(r, c) - xc[r]) < 1e-10);
    }
}

TEST_CASE("singular matrix is rejected") {
    CMat a(2, 2, {cd{1, 0}, cd{2, 0}, cd{2, 0}, cd{4, 0}});
    CHECK_THROWS_AS(solve(std::move(a), CVec{cd{1, 0}, cd{0, 0}}), coopsim::Singular);
    CMat z(3, 3);
    CHECK_THROWS_AS(solve(std::move(z), CVec(3)), coopsim::Singular);
}

TEST_CASE("dimension mismatches are rejected") {
    const CMat a(2, 3);
    const CMat b(2, 2);
    CHECK_THROWS_AS(matmul(a, b), coopsim::DimensionMismatch);
    CHECK_THROWS_AS(matvec(b, CVec(3)), coopsim::DimensionMismatch);
    CHECK_THROWS_AS(add(a, b), coopsim::DimensionMismatch);
}

TEST_CASE("max_abs and all_finite") {
    const CMat a(2, 2, {cd{1, 0}, cd{0, -3}, cd{0.5, 0.5}, cd{0, 0}});
    CHECK(max_abs(a) == doctest::Approx(3.0));
    CHECK(all_finite(a));
}

}  // TEST_SUITE
