#include <horolab/halfplane.hpp>
#include <horolab/kernels.hpp>

#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

using namespace horolab;
namespace hk = horolab::kernels;

namespace {

// Restores the dispatch choice on scope exit so test order never matters.
struct BackendGuard {
    hk::Backend saved = hk::active_backend();
    ~BackendGuard() { hk::set_backend(saved); }
};

std::vector<double> random_doubles(std::mt19937_64& rng, std::size_t n, double lo,
                                   double hi) {
    std::uniform_real_distribution<double> dist(lo, hi);
    std::vector<double> v(n);
    for (double& x : v) x = dist(rng);
    return v;
}

bool avx2_usable() {
#if defined(HOROLAB_HAVE_AVX2)
    BackendGuard guard;
    return hk::set_backend(hk::Backend::avx2);
#else
    return false;
#endif
}

}  // namespace

TEST_SUITE("kernels") {

TEST_CASE("backend selection and names") {
    BackendGuard guard;
    CHECK(hk::to_string(hk::Backend::scalar) == "scalar");
    CHECK(hk::to_string(hk::Backend::avx2) == "avx2");
    CHECK(hk::set_backend(hk::Backend::scalar));
    CHECK(hk::active_backend() == hk::Backend::scalar);
    const bool have = hk::set_backend(hk::Backend::avx2);
    if (have) {
        CHECK(hk::active_backend() == hk::Backend::avx2);
        CHECK(hk::best_backend() == hk::Backend::avx2);
    } else {
        // Request must not change the active backend when unsupported.
        CHECK(hk::active_backend() == hk::Backend::scalar);
        CHECK(hk::best_backend() == hk::Backend::scalar);
    }
}

TEST_CASE("apply_map matches the Moebius action exactly") {
    BackendGuard guard;
    REQUIRE(hk::set_backend(hk::Backend::scalar));
    std::mt19937_64 rng(42);
    const Moebius m{3.8, 17.0, 0.5, 2.5};
    const hk::MapCoeffs mc{m.a, m.b, m.c, m.d};
    const std::size_t n = 257;
    const std::vector<double> xs = random_doubles(rng, n, -20.0, 20.0);
    const std::vector<double> ys = random_doubles(rng, n, 0.01, 10.0);
    std::vector<double> ox(n), oy(n);
    hk::apply_map(mc, xs.data(), ys.data(), ox.data(), oy.data(), n);
    for (std::size_t i = 0; i < n; ++i) {
        const Point w = m(Point{xs[i], ys[i]});
        CHECK(ox[i] == w.x);
        CHECK(oy[i] == w.y);
    }
}

TEST_CASE("apply_point matches per-coefficient application exactly") {
    BackendGuard guard;
    REQUIRE(hk::set_backend(hk::Backend::scalar));
    std::mt19937_64 rng(43);
    const std::size_t n = 100;
    const std::vector<double> as = random_doubles(rng, n, 0.5, 4.0);
    const std::vector<double> bs = random_doubles(rng, n, -3.0, 3.0);
    const std::vector<double> cs = random_doubles(rng, n, -2.0, 2.0);
    std::vector<double> ds(n);
    for (std::size_t i = 0; i < n; ++i) ds[i] = (1.0 + bs[i] * cs[i]) / as[i];
    std::vector<double> ox(n), oy(n);
    hk::apply_point(as.data(), bs.data(), cs.data(), ds.data(), 0.4, 1.7, ox.data(),
                    oy.data(), n);
    for (std::size_t i = 0; i < n; ++i) {
        const Moebius m{as[i], bs[i], cs[i], ds[i]};
        const Point w = m(Point{0.4, 1.7});
        CHECK(ox[i] == w.x);
        CHECK(oy[i] == w.y);
    }
}

TEST_CASE("cosh_distance agrees with the asinh distance route") {
    BackendGuard guard;
    REQUIRE(hk::set_backend(hk::Backend::scalar));
    std::mt19937_64 rng(44);
    const std::size_t n = 500;
    const std::vector<double> wx = random_doubles(rng, n, -10.0, 10.0);
    const std::vector<double> wy = random_doubles(rng, n, 0.01, 10.0);
    std::vector<double> out(n);
    const Point z{0.3, 2.1};
    hk::cosh_distance(z.x, z.y, wx.data(), wy.data(), out.data(), n);
    for (std::size_t i = 0; i < n; ++i) {
        const double d = distance(z, Point{wx[i], wy[i]});
        CHECK(out[i] == doctest::Approx(std::cosh(d)).epsilon(1e-12));
        CHECK(out[i] >= 1.0);
    }
}

TEST_CASE("word_scan finds the extrema and reports first indices on ties") {
    BackendGuard guard;
    REQUIRE(hk::set_backend(hk::Backend::scalar));
    // height = 1/(c^2 + d^2), gap = ||a + d| - 2|; craft exact duplicates.
    std::vector<double> as = {1.0, 5.0, 1.0, 5.0, 0.25, 1.0, 0.25};
    std::vector<double> cs = {3.0, 1.0, 3.0, 1.0, 2.00, 3.0, 2.00};
    std::vector<double> ds = {4.0, 2.0, 4.0, 2.0, 3.00, 4.0, 3.00};
    const hk::WordScan r = hk::word_scan(as.data(), cs.data(), ds.data(), as.size());
    // Max height 1/(1+4) = 0.2 occurs at 1 and 3; min gap |3.25 - 2| at 4, 6.
    CHECK(r.max_height == doctest::Approx(0.2).epsilon(1e-15));
    CHECK(r.max_height_index == 1);
    CHECK(r.min_trace_gap == doctest::Approx(1.25).epsilon(1e-15));
    CHECK(r.min_trace_gap_index == 4);
}

TEST_CASE("scalar and avx2 backends are bit-identical") {
#if defined(HOROLAB_HAVE_AVX2)
    if (!avx2_usable()) {
        MESSAGE("avx2 not supported on this CPU; skipping");
        return;
    }
    const hk::detail::Vtable& sc = hk::detail::scalar_vtable;
    const hk::detail::Vtable& vx = hk::detail::avx2_vtable;
    std::mt19937_64 rng(4242);
    for (std::size_t n : {std::size_t{1}, std::size_t{3}, std::size_t{4},
                          std::size_t{5}, std::size_t{17}, std::size_t{1000}}) {
        const std::vector<double> xs = random_doubles(rng, n, -50.0, 50.0);
        const std::vector<double> ys = random_doubles(rng, n, 0.001, 50.0);
        const hk::MapCoeffs m{1.7, -0.3, 0.25, (1.0 + (-0.3) * 0.25) / 1.7};

        std::vector<double> ax(n), ay(n), bx(n), by(n);
        sc.apply_map(m, xs.data(), ys.data(), ax.data(), ay.data(), n);
        vx.apply_map(m, xs.data(), ys.data(), bx.data(), by.data(), n);
        CHECK(ax == bx);
        CHECK(ay == by);

        const std::vector<double> as = random_doubles(rng, n, 0.5, 6.0);
        const std::vector<double> bs = random_doubles(rng, n, -9.0, 9.0);
        const std::vector<double> cs = random_doubles(rng, n, -2.0, 2.0);
        std::vector<double> ds(n);
        for (std::size_t i = 0; i < n; ++i) ds[i] = (1.0 + bs[i] * cs[i]) / as[i];
        sc.apply_point(as.data(), bs.data(), cs.data(), ds.data(), -0.7, 0.9, ax.data(),
                       ay.data(), n);
        vx.apply_point(as.data(), bs.data(), cs.data(), ds.data(), -0.7, 0.9, bx.data(),
                       by.data(), n);
        CHECK(ax == bx);
        CHECK(ay == by);

        sc.cosh_distance(0.2, 1.3, xs.data(), ys.data(), ax.data(), n);
        vx.cosh_distance(0.2, 1.3, xs.data(), ys.data(), bx.data(), n);
        CHECK(ax == bx);

        const hk::WordScan rs = sc.word_scan(as.data(), cs.data(), ds.data(), n);
        const hk::WordScan rv = vx.word_scan(as.data(), cs.data(), ds.data(), n);
        CHECK(rs.max_height == rv.max_height);
        CHECK(rs.max_height_index == rv.max_height_index);
        CHECK(rs.min_trace_gap == rv.min_trace_gap);
        CHECK(rs.min_trace_gap_index == rv.min_trace_gap_index);
    }

    // Ties across lane boundaries must still resolve to the first index.
    std::vector<double> as(13, 2.0), cs(13, 1.0), ds(13, 1.0);
    as[2] = 1.2;
    as[9] = 1.2;   // duplicate minimal trace gap at 2 and 9
    cs[5] = 0.5;
    ds[5] = 0.5;   // duplicate maximal height ...
    cs[11] = 0.5;
    ds[11] = 0.5;  // ... past the next lane group
    const hk::WordScan rs = sc.word_scan(as.data(), cs.data(), ds.data(), as.size());
    const hk::WordScan rv = vx.word_scan(as.data(), cs.data(), ds.data(), as.size());
    CHECK(rs.max_height_index == 5);
    CHECK(rv.max_height_index == 5);
    CHECK(rs.min_trace_gap_index == 2);
    CHECK(rv.min_trace_gap_index == 2);
#else
    MESSAGE("compiled without avx2 support; skipping");
#endif
}

TEST_CASE("dispatch routes through the selected backend") {
    BackendGuard guard;
    // Whatever backend is active, the public entry points must agree with the
    // scalar reference bit for bit (the backends are equivalence-tested above,
    // so this checks the dispatch plumbing).
    std::mt19937_64 rng(99);
    const std::size_t n = 37;
    const std::vector<double> xs = random_doubles(rng, n, -5.0, 5.0);
    const std::vector<double> ys = random_doubles(rng, n, 0.1, 5.0);
    const hk::MapCoeffs m{2.0, 1.0, 0.5, 0.75};
    std::vector<double> rx(n), ry(n), ox(n), oy(n);
    hk::detail::scalar_vtable.apply_map(m, xs.data(), ys.data(), rx.data(), ry.data(), n);

    REQUIRE(hk::set_backend(hk::Backend::scalar));
    hk::apply_map(m, xs.data(), ys.data(), ox.data(), oy.data(), n);
    CHECK(ox == rx);
    CHECK(oy == ry);

    if (avx2_usable()) {
        REQUIRE(hk::set_backend(hk::Backend::avx2));
        hk::apply_map(m, xs.data(), ys.data(), ox.data(), oy.data(), n);
        CHECK(ox == rx);
        CHECK(oy == ry);
    }
}

}  // TEST_SUITE
