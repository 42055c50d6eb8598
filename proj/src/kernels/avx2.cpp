#include <horolab/kernels.hpp>

#if defined(HOROLAB_HAVE_AVX2) && defined(__AVX2__)

#include <immintrin.h>

// AVX2 variants, 4 lanes of double.  Operation order mirrors scalar.cpp step
// for step and fused multiply-add is deliberately avoided (the TU is built
// with -ffp-contract=off), so results are bit-identical to the reference.

namespace horolab::kernels {
namespace {

inline __m256d abs_pd(__m256d v) {
    return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v);
}

void apply_map_avx2(const MapCoeffs& m, const double* xs, const double* ys,
                    double* out_x, double* out_y, std::size_t n) {
    const __m256d a = _mm256_set1_pd(m.a);
    const __m256d b = _mm256_set1_pd(m.b);
    const __m256d c = _mm256_set1_pd(m.c);
    const __m256d d = _mm256_set1_pd(m.d);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d x = _mm256_loadu_pd(xs + i);
        const __m256d y = _mm256_loadu_pd(ys + i);
        const __m256d dre = _mm256_add_pd(_mm256_mul_pd(c, x), d);
        const __m256d dim = _mm256_mul_pd(c, y);
        const __m256d den =
            _mm256_add_pd(_mm256_mul_pd(dre, dre), _mm256_mul_pd(dim, dim));
        const __m256d nre = _mm256_add_pd(_mm256_mul_pd(a, x), b);
        const __m256d nim = _mm256_mul_pd(a, y);
        const __m256d num =
            _mm256_add_pd(_mm256_mul_pd(nre, dre), _mm256_mul_pd(nim, dim));
        _mm256_storeu_pd(out_x + i, _mm256_div_pd(num, den));
        _mm256_storeu_pd(out_y + i, _mm256_div_pd(y, den));
    }
    for (; i < n; ++i) {
        const double dre = m.c * xs[i] + m.d;
        const double dim = m.c * ys[i];
        const double den = dre * dre + dim * dim;
        const double nre = m.a * xs[i] + m.b;
        const double nim = m.a * ys[i];
        out_x[i] = (nre * dre + nim * dim) / den;
        out_y[i] = ys[i] / den;
    }
}

void apply_point_avx2(const double* as, const double* bs, const double* cs,
                      const double* ds, double zx, double zy, double* out_x,
                      double* out_y, std::size_t n) {
    const __m256d x = _mm256_set1_pd(zx);
    const __m256d y = _mm256_set1_pd(zy);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d a = _mm256_loadu_pd(as + i);
        const __m256d b = _mm256_loadu_pd(bs + i);
        const __m256d c = _mm256_loadu_pd(cs + i);
        const __m256d d = _mm256_loadu_pd(ds + i);
        const __m256d dre = _mm256_add_pd(_mm256_mul_pd(c, x), d);
        const __m256d dim = _mm256_mul_pd(c, y);
        const __m256d den =
            _mm256_add_pd(_mm256_mul_pd(dre, dre), _mm256_mul_pd(dim, dim));
        const __m256d nre = _mm256_add_pd(_mm256_mul_pd(a, x), b);
        const __m256d nim = _mm256_mul_pd(a, y);
        const __m256d num =
            _mm256_add_pd(_mm256_mul_pd(nre, dre), _mm256_mul_pd(nim, dim));
        _mm256_storeu_pd(out_x + i, _mm256_div_pd(num, den));
        _mm256_storeu_pd(out_y + i, _mm256_div_pd(y, den));
    }
    for (; i < n; ++i) {
        const double dre = cs[i] * zx + ds[i];
        const double dim = cs[i] * zy;
        const double den = dre * dre + dim * dim;
        const double nre = as[i] * zx + bs[i];
        const double nim = as[i] * zy;
        out_x[i] = (nre * dre + nim * dim) / den;
        out_y[i] = zy / den;
    }
}

void cosh_distance_avx2(double zx, double zy, const double* wx, const double* wy,
                        double* out, std::size_t n) {
    const __m256d x = _mm256_set1_pd(zx);
    const __m256d y = _mm256_set1_pd(zy);
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d two_y = _mm256_mul_pd(_mm256_set1_pd(2.0), y);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d dx = _mm256_sub_pd(x, _mm256_loadu_pd(wx + i));
        const __m256d wyv = _mm256_loadu_pd(wy + i);
        const __m256d dy = _mm256_sub_pd(y, wyv);
        const __m256d q = _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy));
        const __m256d den = _mm256_mul_pd(two_y, wyv);
        _mm256_storeu_pd(out + i, _mm256_add_pd(one, _mm256_div_pd(q, den)));
    }
    for (; i < n; ++i) {
        const double dx = zx - wx[i];
        const double dy = zy - wy[i];
        const double q = dx * dx + dy * dy;
        out[i] = 1.0 + q / (2.0 * zy * wy[i]);
    }
}

WordScan word_scan_avx2(const double* as, const double* cs, const double* ds,
                        std::size_t n) {
    WordScan r{-1.0, 0, -1.0, 0};
    std::size_t i = 0;
    if (n >= 4) {
        const __m256d one = _mm256_set1_pd(1.0);
        const __m256d two = _mm256_set1_pd(2.0);
        const __m256d four = _mm256_set1_pd(4.0);
        __m256d idx = _mm256_setr_pd(0.0, 1.0, 2.0, 3.0);
        __m256d best_h = _mm256_set1_pd(-1.0);
        __m256d best_h_idx = _mm256_set1_pd(0.0);
        __m256d best_g = _mm256_set1_pd(1e300);
        __m256d best_g_idx = _mm256_set1_pd(0.0);
        for (; i + 4 <= n; i += 4) {
            const __m256d c = _mm256_loadu_pd(cs + i);
            const __m256d d = _mm256_loadu_pd(ds + i);
            const __m256d a = _mm256_loadu_pd(as + i);
            const __m256d den =
                _mm256_add_pd(_mm256_mul_pd(c, c), _mm256_mul_pd(d, d));
            const __m256d h = _mm256_div_pd(one, den);
            const __m256d gap = abs_pd(_mm256_sub_pd(abs_pd(_mm256_add_pd(a, d)), two));
            const __m256d hm = _mm256_cmp_pd(h, best_h, _CMP_GT_OQ);
            best_h = _mm256_blendv_pd(best_h, h, hm);
            best_h_idx = _mm256_blendv_pd(best_h_idx, idx, hm);
            const __m256d gm = _mm256_cmp_pd(gap, best_g, _CMP_LT_OQ);
            best_g = _mm256_blendv_pd(best_g, gap, gm);
            best_g_idx = _mm256_blendv_pd(best_g_idx, idx, gm);
            idx = _mm256_add_pd(idx, four);
        }
        // Lane merge: strictly-better comparisons inside the loop keep the
        // first occurrence per lane; smaller lane index wins exact ties.
        alignas(32) double hs[4], his[4], gs[4], gis[4];
        _mm256_store_pd(hs, best_h);
        _mm256_store_pd(his, best_h_idx);
        _mm256_store_pd(gs, best_g);
        _mm256_store_pd(gis, best_g_idx);
        r.max_height = hs[0];
        r.max_height_index = static_cast<std::size_t>(his[0]);
        r.min_trace_gap = gs[0];
        r.min_trace_gap_index = static_cast<std::size_t>(gis[0]);
        for (int lane = 1; lane < 4; ++lane) {
            const auto hi = static_cast<std::size_t>(his[lane]);
            if (hs[lane] > r.max_height ||
                (hs[lane] == r.max_height && hi < r.max_height_index)) {
                r.max_height = hs[lane];
                r.max_height_index = hi;
            }
            const auto gi = static_cast<std::size_t>(gis[lane]);
            if (gs[lane] < r.min_trace_gap ||
                (gs[lane] == r.min_trace_gap && gi < r.min_trace_gap_index)) {
                r.min_trace_gap = gs[lane];
                r.min_trace_gap_index = gi;
            }
        }
    }
    for (; i < n; ++i) {
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
const Vtable avx2_vtable{apply_map_avx2, apply_point_avx2, cosh_distance_avx2,
                         word_scan_avx2};
}

}  // namespace horolab::kernels

#endif  // HOROLAB_HAVE_AVX2 && __AVX2__
