#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

namespace horolab::kernels {

// Plain coefficient block for batch calls; ad - bc = 1 is the caller's job.
struct MapCoeffs {
    double a, b, c, d;
};

enum class Backend { scalar, avx2 };

std::string to_string(Backend b);

// Backend chosen at startup (best supported by the CPU); override for tests
// or comparisons with set_backend, which reports whether the request stuck.
Backend active_backend();
Backend best_backend();
bool set_backend(Backend b);

// out_i = m(x_i + i y_i), split into real/imag planes.
void apply_map(const MapCoeffs& m, const double* xs, const double* ys,
               double* out_x, double* out_y, std::size_t n);

// out_i = m_i(zx + i zy) for coefficient arrays laid out as four planes.
void apply_point(const double* as, const double* bs, const double* cs, const double* ds,
                 double zx, double zy, double* out_x, double* out_y, std::size_t n);

// out_i = cosh d(z, w_i) = 1 + ((zx - wx_i)^2 + (zy - wy_i)^2) / (2 zy wy_i).
void cosh_distance(double zx, double zy, const double* wx, const double* wy,
                   double* out, std::size_t n);

// Fused reduction over a batch of word coefficients:
//   height_i = 1 / (c_i^2 + d_i^2)          (the imaginary part at i)
//   gap_i    = | |a_i + d_i| - 2 |          (distance of |trace| from parabolic)
// Ties in either extremum resolve to the smallest index, so scalar and SIMD
// backends agree exactly.
struct WordScan {
    double max_height;
    std::size_t max_height_index;
    double min_trace_gap;
    std::size_t min_trace_gap_index;
};

WordScan word_scan(const double* as, const double* cs, const double* ds, std::size_t n);

namespace detail {

struct Vtable {
    void (*apply_map)(const MapCoeffs&, const double*, const double*, double*, double*,
                      std::size_t);
    void (*apply_point)(const double*, const double*, const double*, const double*, double,
                        double, double*, double*, std::size_t);
    void (*cosh_distance)(double, double, const double*, const double*, double*, std::size_t);
    WordScan (*word_scan)(const double*, const double*, const double*, std::size_t);
};

extern const Vtable scalar_vtable;
#if defined(HOROLAB_HAVE_AVX2)
extern const Vtable avx2_vtable;
#endif

}  // namespace detail

}  // namespace horolab::kernels
