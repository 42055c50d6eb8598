#include <horolab/kernels.hpp>

// Reference kernels.  Every arithmetic step is written out so the vector
// variants can mirror the exact operation order; keep the two files in sync.

namespace horolab::kernels {
namespace {

void apply_map_scalar(const MapCoeffs& m, const double* xs, const double* ys,
                      double* out_x, double* out_y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const double dre = m.c * xs[i] + m.d;
        const double dim = m.c * ys[i];
        const double den = dre * dre + dim * dim;
        const double nre = m.a * xs[i] + m.b;
        const double nim = m.a * ys[i];
        out_x[i] = (nre * dre + nim * dim) / den;
        out_y[i] = ys[i] / den;
    }
}

void apply_point_scalar(const double* as, const double* bs, const double* cs,
                        const double* ds, double zx, double zy, double* out_x,
                        double* out_y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const double dre = cs[i] * zx + ds[i];
        const double dim = cs[i] * zy;
        const double den = dre * dre + dim * dim;
        const double nre = as[i] * zx + bs[i];
        const double nim = as[i] * zy;
        out_x[i] = (nre * dre + nim * dim) / den;
        out_y[i] = zy / den;
    }
}

void cosh_distance_scalar(double zx, double zy, const double* wx, const double* wy,
                          double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = zx - wx[i];
        const double dy = zy - wy[i];
        const double q = dx * dx + dy * dy;
        out[i] = 1.0 + q / (2.0 * zy * wy[i]);
    }
}

WordScan word_scan_scalar(const double* as, const double* cs, const double* ds,
                          std::size_t n) {
    WordScan r{-1.0, 0, -1.0, 0};
    for (std::size_t i = 0; i < n; ++i) {
        const double h = 1.0 / (cs[i] * cs[i] + ds[i] * ds[i]);
        const double t = as[i] + ds[i];
        const double at = t < 0.0 ? -t : t;
        const double g0 = at - 2.0;
        const double gap = g0 < 0.0 ? -g0 : g0;
        if (i == 0 || h > r.max_height) {
            r.max_height = h;
            r.max_height_index = i;
        }
        if (i == 0 || gap < r.min_trace_gap) {
            r.min_trace_gap = gap;
            r.min_trace_gap_index = i;
        }
    }
    return r;
}

}  // namespace

namespace detail {
const Vtable scalar_vtable{apply_map_scalar, apply_point_scalar, cosh_distance_scalar,
                           word_scan_scalar};
}

}  // namespace horolab::kernels
