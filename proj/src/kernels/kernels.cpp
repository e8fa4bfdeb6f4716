#include "coopsim/kernels.hpp"

#include <atomic>
#include <cstdlib>

#include "coopsim/errors.hpp"

namespace coopsim::kern {

// ===== scalar reference kernels =====

namespace {

cd scalar_cdotc(const cd* x, const cd* y, std::size_t n) {
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        const double yr = y[i].real(), yi = y[i].imag();
        re += xr * yr + xi * yi;
        im += xr * yi - xi * yr;
    }
    return {re, im};
}

cd scalar_cdotu(const cd* x, const cd* y, std::size_t n) {
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        const double yr = y[i].real(), yi = y[i].imag();
        re += xr * yr - xi * yi;
        im += xr * yi + xi * yr;
    }
    return {re, im};
}

void scalar_axpy(cd a, const cd* x, cd* y, std::size_t n) {
    const double ar = a.real(), ai = a.imag();
    for (std::size_t i = 0; i < n; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        y[i] = {y[i].real() + ar * xr - ai * xi, y[i].imag() + ar * xi + ai * xr};
    }
}

double scalar_sum_abs2(const cd* x, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        acc += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
    }
    return acc;
}

void scalar_rscale(double a, cd* x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = {x[i].real() * a, x[i].imag() * a};
    }
}

const Backend kScalar = {
    "scalar", scalar_cdotc, scalar_cdotu, scalar_axpy, scalar_sum_abs2, scalar_rscale,
};

}  // namespace

const Backend& scalar_backend() { return kScalar; }

// ===== backend selection =====

namespace {

std::atomic<const Backend*> g_active{nullptr};

const Backend* pick_default() {
    if (const char* env = std::getenv("COOPSIM_KERNELS")) {
        const std::string want = env;
        if (want == "scalar") return &kScalar;
#if defined(__x86_64__) || defined(_M_X64)
        if (want == "avx2" && avx2_supported()) return &avx2_backend();
#endif
        // Unknown or unavailable request in the environment: fall through to
        // auto-selection rather than failing at startup.
    }
#if defined(__x86_64__) || defined(_M_X64)
    if (avx2_supported()) return &avx2_backend();
#endif
    return &kScalar;
}

}  // namespace

const Backend& active() {
    const Backend* b = g_active.load(std::memory_order_acquire);
    if (!b) {
        b = pick_default();
        g_active.store(b, std::memory_order_release);
    }
    return *b;
}

void select(const std::string& name) {
    if (name == "scalar") {
        g_active.store(&kScalar, std::memory_order_release);
        return;
    }
#if defined(__x86_64__) || defined(_M_X64)
    if (name == "avx2") {
        if (!avx2_supported()) throw UnknownBackend("kernel backend avx2 not supported on this CPU");
        g_active.store(&avx2_backend(), std::memory_order_release);
        return;
    }
#endif
    throw UnknownBackend("unknown kernel backend: " + name + " (available: " + available_names() + ")");
}

std::string available_names() {
    std::string names = "scalar";
#if defined(__x86_64__) || defined(_M_X64)
    if (avx2_supported()) names += ",avx2";
#endif
    return names;
}

}  // namespace coopsim::kern
