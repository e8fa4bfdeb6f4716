#pragma once

// Complex double-precision primitives behind the hot loops (filter dots,
// gradient updates, covariance accumulation).  Every primitive has a scalar
// reference implementation and, on x86-64, an AVX2/FMA variant.  The active
// backend is picked once at startup from CPU capabilities and can be forced
// with COOPSIM_KERNELS=scalar|avx2.

#include <complex>
#include <cstddef>
#include <string>

namespace coopsim::kern {

using cd = std::complex<double>;

struct Backend {
    const char* name;
    // sum_i conj(x[i]) * y[i]
    cd (*cdotc)(const cd* x, const cd* y, std::size_t n);
    // sum_i x[i] * y[i]
    cd (*cdotu)(const cd* x, const cd* y, std::size_t n);
    // y += a * x
    void (*axpy)(cd a, const cd* x, cd* y, std::size_t n);
    // sum_i |x[i]|^2
    double (*sum_abs2)(const cd* x, std::size_t n);
    // x *= a, real a
    void (*rscale)(double a, cd* x, std::size_t n);
};

const Backend& scalar_backend();

#if defined(__x86_64__) || defined(_M_X64)
const Backend& avx2_backend();
bool avx2_supported();
#endif

// Active backend (auto-selected on first use, honours COOPSIM_KERNELS).
const Backend& active();
// Force a backend by name; throws UnknownBackend if absent on this machine.
void select(const std::string& name);
// Names of backends usable on this machine.
std::string available_names();

inline cd cdotc(const cd* x, const cd* y, std::size_t n) { return active().cdotc(x, y, n); }
inline cd cdotu(const cd* x, const cd* y, std::size_t n) { return active().cdotu(x, y, n); }
inline void axpy(cd a, const cd* x, cd* y, std::size_t n) { active().axpy(a, x, y, n); }
inline double sum_abs2(const cd* x, std::size_t n) { return active().sum_abs2(x, n); }
inline void rscale(double a, cd* x, std::size_t n) { active().rscale(a, x, n); }

}  // namespace coopsim::kern
