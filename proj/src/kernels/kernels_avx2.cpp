// AVX2/FMA variants of the complex kernels.  Compiled with -mavx2 -mfma in a
// separate translation unit; only ever called after a runtime CPU check.

#include "coopsim/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

namespace coopsim::kern {

namespace {

// Two complex doubles per 256-bit lane, interleaved [re0 im0 re1 im1].  The
// dot products keep two accumulators: one of (xr*yr, xi*yi) pairs, one of
// (xr*yi, xi*yr) pairs; the conjugate / plain variants differ only in the
// signs applied when the pairs are reduced.

struct DotAcc {
    double rr, ii, ri, ir;  // sums of xr*yr, xi*yi, xr*yi, xi*yr
};

inline DotAcc dot_accumulate(const cd* x, const cd* y, std::size_t n, std::size_t& done) {
    __m256d acc_a = _mm256_setzero_pd();  // xr*yr, xi*yi per complex
    __m256d acc_b = _mm256_setzero_pd();  // xr*yi, xi*yr per complex
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d vx = _mm256_loadu_pd(reinterpret_cast<const double*>(x + i));
        const __m256d vy = _mm256_loadu_pd(reinterpret_cast<const double*>(y + i));
        acc_a = _mm256_fmadd_pd(vx, vy, acc_a);
        const __m256d vys = _mm256_permute_pd(vy, 0x5);  // swap re/im in each complex
        acc_b = _mm256_fmadd_pd(vx, vys, acc_b);
    }
    done = i;
    alignas(32) double a[4], b[4];
    _mm256_store_pd(a, acc_a);
    _mm256_store_pd(b, acc_b);
    return {a[0] + a[2], a[1] + a[3], b[0] + b[2], b[1] + b[3]};
}

cd avx2_cdotc(const cd* x, const cd* y, std::size_t n) {
    std::size_t i = 0;
    const DotAcc s = dot_accumulate(x, y, n, i);
    double re = s.rr + s.ii;
    double im = s.ri - s.ir;
    for (; i < n; ++i) {  // scalar remainder
        const double xr = x[i].real(), xi = x[i].imag();
        const double yr = y[i].real(), yi = y[i].imag();
        re += xr * yr + xi * yi;
        im += xr * yi - xi * yr;
    }
    return {re, im};
}

cd avx2_cdotu(const cd* x, const cd* y, std::size_t n) {
    std::size_t i = 0;
    const DotAcc s = dot_accumulate(x, y, n, i);
    double re = s.rr - s.ii;
    double im = s.ri + s.ir;
    for (; i < n; ++i) {  // scalar remainder
        const double xr = x[i].real(), xi = x[i].imag();
        const double yr = y[i].real(), yi = y[i].imag();
        re += xr * yr - xi * yi;
        im += xr * yi + xi * yr;
    }
    return {re, im};
}

void avx2_axpy(cd a, const cd* x, cd* y, std::size_t n) {
    const __m256d var = _mm256_set1_pd(a.real());
    const __m256d vai = _mm256_set1_pd(a.imag());
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d vx = _mm256_loadu_pd(reinterpret_cast<const double*>(x + i));
        __m256d vy = _mm256_loadu_pd(reinterpret_cast<double*>(y + i));
        const __m256d t1 = _mm256_mul_pd(var, vx);                       // ar*xr, ar*xi
        const __m256d t2 = _mm256_mul_pd(vai, _mm256_permute_pd(vx, 0x5));  // ai*xi, ai*xr
        vy = _mm256_add_pd(vy, _mm256_addsub_pd(t1, t2));
        _mm256_storeu_pd(reinterpret_cast<double*>(y + i), vy);
    }
    const double ar = a.real(), ai = a.imag();
    for (; i < n; ++i) {  // scalar remainder
        const double xr = x[i].real(), xi = x[i].imag();
        y[i] = {y[i].real() + ar * xr - ai * xi, y[i].imag() + ar * xi + ai * xr};
    }
}

double avx2_sum_abs2(const cd* x, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d vx = _mm256_loadu_pd(reinterpret_cast<const double*>(x + i));
        acc = _mm256_fmadd_pd(vx, vx, acc);
    }
    alignas(32) double a[4];
    _mm256_store_pd(a, acc);
    double out = a[0] + a[1] + a[2] + a[3];
    for (; i < n; ++i) {  // scalar remainder
        out += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
    }
    return out;
}

void avx2_rscale(double a, cd* x, std::size_t n) {
    const __m256d va = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d vx = _mm256_loadu_pd(reinterpret_cast<double*>(x + i));
        vx = _mm256_mul_pd(vx, va);
        _mm256_storeu_pd(reinterpret_cast<double*>(x + i), vx);
    }
    for (; i < n; ++i) {  // scalar remainder
        x[i] = {x[i].real() * a, x[i].imag() * a};
    }
}

const Backend kAvx2 = {
    "avx2", avx2_cdotc, avx2_cdotu, avx2_axpy, avx2_sum_abs2, avx2_rscale,
};

}  // namespace

const Backend& avx2_backend() { return kAvx2; }

bool avx2_supported() {
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}

}  // namespace coopsim::kern

#endif  // x86-64
