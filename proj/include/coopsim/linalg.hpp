#pragma once

// Small dense complex matrices (system dimensions here are <= ~10), row major,
// with direct Gaussian elimination.  Not a general BLAS; the hot paths go
// through the kern:: primitives.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace coopsim::linalg {

using cd = std::complex<double>;
using CVec = std::vector<cd>;

// Relative pivot threshold below which a matrix is reported Singular.
inline constexpr double kPivotTol = 1e-12;

class CMat {
  public:
    CMat() = default;
    CMat(std::size_t rows, std::size_t cols);  // zero-filled
    // Row-major entries; throws DimensionMismatch on count, Error on non-finite.
    CMat(std::size_t rows, std::size_t cols, std::initializer_list<cd> entries);
    CMat(std::size_t rows, std::size_t cols, CVec entries);

    static CMat identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return d_.empty(); }

    cd& operator()(std::size_t r, std::size_t c) { return d_[r * cols_ + c]; }
    const cd& operator()(std::size_t r, std::size_t c) const { return d_[r * cols_ + c]; }

    cd* data() { return d_.data(); }
    const cd* data() const { return d_.data(); }
    cd* row(std::size_t r) { return d_.data() + r * cols_; }
    const cd* row(std::size_t r) const { return d_.data() + r * cols_; }

    CVec col(std::size_t c) const;

  private:
    std::size_t rows_ = 0, cols_ = 0;
    CVec d_;
};

bool all_finite(const CMat& a);
bool all_finite(const CVec& v);

// Conjugate transpose.
CMat hermitian(const CMat& a);

CMat matmul(const CMat& a, const CMat& b);
CVec matvec(const CMat& a, const CVec& x);

CMat add(const CMat& a, const CMat& b);
CMat scale(const CMat& a, cd s);

// Solve a x = b by partially pivoted Gaussian elimination.  Throws Singular
// when the best pivot falls below kPivotTol relative to the largest entry
// magnitude of a.  The multi-RHS overload solves all columns of b at once.
CVec solve(CMat a, CVec b);
CMat solve_multi(CMat a, CMat b);

// Largest entry magnitude, used for relative comparisons in tests as well.
double max_abs(const CMat& a);

}  // namespace coopsim::linalg
