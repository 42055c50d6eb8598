#include <horolab/kernels.hpp>

#include <atomic>

namespace horolab::kernels {
namespace {

bool avx2_available() {
#if defined(HOROLAB_HAVE_AVX2)
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

const detail::Vtable* table_for(Backend b) {
#if defined(HOROLAB_HAVE_AVX2)
    if (b == Backend::avx2) return &detail::avx2_vtable;
#else
    (void)b;
#endif
    return &detail::scalar_vtable;
}

std::atomic<Backend> g_backend{[] {
    return avx2_available() ? Backend::avx2 : Backend::scalar;
}()};

}  // namespace

std::string to_string(Backend b) {
    return b == Backend::avx2 ? "avx2" : "scalar";
}

Backend active_backend() { return g_backend.load(std::memory_order_relaxed); }

Backend best_backend() {
    return avx2_available() ? Backend::avx2 : Backend::scalar;
}

bool set_backend(Backend b) {
    if (b == Backend::avx2 && !avx2_available()) return false;
    g_backend.store(b, std::memory_order_relaxed);
    return true;
}

void apply_map(const MapCoeffs& m, const double* xs, const double* ys, double* out_x,
               double* out_y, std::size_t n) {
    table_for(active_backend())->apply_map(m, xs, ys, out_x, out_y, n);
}

void apply_point(const double* as, const double* bs, const double* cs, const double* ds,
                 double zx, double zy, double* out_x, double* out_y, std::size_t n) {
    table_for(active_backend())->apply_point(as, bs, cs, ds, zx, zy, out_x, out_y, n);
}

void cosh_distance(double zx, double zy, const double* wx, const double* wy, double* out,
                   std::size_t n) {
    table_for(active_backend())->cosh_distance(zx, zy, wx, wy, out, n);
}

WordScan word_scan(const double* as, const double* cs, const double* ds, std::size_t n) {
    return table_for(active_backend())->word_scan(as, cs, ds, n);
}

}  // namespace horolab::kernels
