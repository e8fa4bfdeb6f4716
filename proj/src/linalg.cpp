#include "coopsim/linalg.hpp"

#include <cmath>
#include <utility>

#include "coopsim/errors.hpp"
#include "coopsim/kernels.hpp"

namespace coopsim::linalg {

CMat::CMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), d_(rows * cols) {}

CMat::CMat(std::size_t rows, std::size_t cols, std::initializer_list<cd> entries)
    : CMat(rows, cols, CVec(entries)) {}

CMat::CMat(std::size_t rows, std::size_t cols, CVec entries)
    : rows_(rows), cols_(cols), d_(std::move(entries)) {
    if (d_.size() != rows_ * cols_) {
        throw DimensionMismatch("CMat: entry count does not match shape");
    }
    if (!all_finite(d_)) {
        throw Error("CMat: non-finite entry");
    }
}

CMat CMat::identity(std::size_t n) {
    CMat out(n, n);
    for (std::size_t i = 0; i < n; ++i) out(i, i) = 1.0;
    return out;
}

CVec CMat::col(std::size_t c) const {
    CVec out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
}

bool all_finite(const CVec& v) {
    for (const cd& z : v) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    }
    return true;
}

bool all_finite(const CMat& a) {
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) {
            const cd& z = a(r, c);
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
        }
    }
    return true;
}

CMat hermitian(const CMat& a) {
    CMat out(a.cols(), a.rows());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) {
            out(c, r) = std::conj(a(r, c));
        }
    }
    return out;
}

CMat matmul(const CMat& a, const CMat& b) {
    if (a.cols() != b.rows()) throw DimensionMismatch("matmul: inner dimensions differ");
    CMat out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const cd aik = a(i, k);
            if (aik == cd{}) continue;
            kern::axpy(aik, b.row(k), out.row(i), b.cols());
        }
    }
    return out;
}

CVec matvec(const CMat& a, const CVec& x) {
    if (a.cols() != x.size()) throw DimensionMismatch("matvec: dimensions differ");
    CVec out(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        out[i] = kern::cdotu(a.row(i), x.data(), x.size());
    }
    return out;
}

CMat add(const CMat& a, const CMat& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionMismatch("add: shapes differ");
    CMat out = a;
    kern::axpy(1.0, b.data(), out.data(), b.rows() * b.cols());
    return out;
}

CMat scale(const CMat& a, cd s) {
    CMat out(a.rows(), a.cols());
    kern::axpy(s, a.data(), out.data(), a.rows() * a.cols());
    return out;
}

double max_abs(const CMat& a) {
    double m = 0.0;
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) {
            m = std::max(m, std::abs(a(r, c)));
        }
    }
    return m;
}

CMat solve_multi(CMat a, CMat b) {
    if (a.rows() != a.cols()) throw DimensionMismatch("solve: matrix not square");
    if (a.rows() != b.rows()) throw DimensionMismatch("solve: rhs rows differ");
    const std::size_t n = a.rows();
    const std::size_t k = b.cols();
    if (n == 0) return b;

    const double scale = max_abs(a);
    if (scale == 0.0) throw Singular("solve: zero matrix");
    const double tol = kPivotTol * scale;

    // Forward elimination with partial pivoting, applied to rhs in lockstep.
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        double best = std::abs(a(col, col));
        for (std::size_t r = col + 1; r < n; ++r) {
            const double m = std::abs(a(r, col));
            if (m > best) {
                best = m;
                piv = r;
            }
        }
        if (best < tol) throw Singular("solve: pivot below tolerance");
        if (piv != col) {
            for (std::size_t c = col; c < n; ++c) std::swap(a(col, c), a(piv, c));
            for (std::size_t c = 0; c < k; ++c) std::swap(b(col, c), b(piv, c));
        }
        const cd inv = 1.0 / a(col, col);
        for (std::size_t r = col + 1; r < n; ++r) {
            const cd f = a(r, col) * inv;
            if (f == cd{}) continue;
            a(r, col) = 0.0;
            for (std::size_t c = col + 1; c < n; ++c) a(r, c) -= f * a(col, c);
            for (std::size_t c = 0; c < k; ++c) b(r, c) -= f * b(col, c);
        }
    }

    // Back substitution.
    CMat x(n, k);
    for (std::size_t ri = n; ri-- > 0;) {
        for (std::size_t c = 0; c < k; ++c) {
            cd acc = b(ri, c);
            for (std::size_t j = ri + 1; j < n; ++j) acc -= a(ri, j) * x(j, c);
            x(ri, c) = acc / a(ri, ri);
        }
    }
    return x;
}

CVec solve(CMat a, CVec b) {
    if (a.rows() != b.size()) throw DimensionMismatch("solve: rhs rows differ");
    const std::size_t n = b.size();  // read before the move below
    CMat rhs(n, 1, std::move(b));
    CMat x = solve_multi(std::move(a), std::move(rhs));
    return x.col(0);
}

}  // namespace coopsim::linalg
