#include <horolab/halfplane.hpp>

#include <doctest.h>

#include <cmath>
#include <random>

using namespace horolab;

namespace {

// Random unit-determinant map: pick a, b, c and solve for d.  Coefficients
// stay O(1) so products with sample points keep plenty of precision.
Moebius random_map(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> mag(0.5, 2.0);
    std::uniform_real_distribution<double> off(-2.0, 2.0);
    std::bernoulli_distribution flip(0.5);
    const double a = flip(rng) ? -mag(rng) : mag(rng);
    const double b = off(rng);
    const double c = off(rng);
    return Moebius{a, b, c, (1.0 + b * c) / a};
}

Point random_point(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> xs(-10.0, 10.0);
    std::uniform_real_distribution<double> ys(0.01, 10.0);
    return point(xs(rng), ys(rng));
}

bool frames_close(const Moebius& m, const Moebius& n, double tol) {
    const double scale = std::fmax(1.0, std::fabs(m.a) + std::fabs(m.b) +
                                            std::fabs(m.c) + std::fabs(m.d));
    return std::fabs(m.a - n.a) <= tol * scale && std::fabs(m.b - n.b) <= tol * scale &&
           std::fabs(m.c - n.c) <= tol * scale && std::fabs(m.d - n.d) <= tol * scale;
}

}  // namespace

TEST_SUITE("halfplane") {

TEST_CASE("point and boundary validation") {
    CHECK_NOTHROW(point(0.0, 1e-12));
    CHECK_THROWS_AS(point(0.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(point(0.0, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(point(std::nan(""), 1.0), std::invalid_argument);
    CHECK_THROWS_AS(point(0.0, std::numeric_limits<double>::infinity()),
                    std::invalid_argument);

    CHECK_THROWS_AS(Boundary(std::numeric_limits<double>::infinity()),
                    std::invalid_argument);
    CHECK_THROWS_AS(Boundary(std::nan("")), std::invalid_argument);
    CHECK(Boundary::infinity().is_infinity());
    CHECK_THROWS_AS(Boundary::infinity().value(), std::logic_error);
    CHECK(Boundary(2.0).value() == 2.0);
    CHECK(Boundary(2.0) == Boundary(2.0));
    CHECK_FALSE(Boundary(2.0) == Boundary::infinity());
    CHECK(Boundary::infinity() == Boundary::infinity());
}

TEST_CASE("geodesic construction") {
    const Geodesic v = Geodesic::vertical(3.0);
    CHECK(v.is_vertical());
    CHECK(v.foot() == 3.0);

    const Geodesic g = Geodesic::semicircle(5.0, -1.0);  // endpoints get sorted
    CHECK_FALSE(g.is_vertical());
    CHECK(g.left() == -1.0);
    CHECK(g.right() == 5.0);
    CHECK(g.center() == 2.0);
    CHECK(g.radius() == 3.0);

    CHECK_THROWS_AS(Geodesic::semicircle(1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(Geodesic::vertical(std::nan("")), std::invalid_argument);
}

TEST_CASE("distance closed forms") {
    // d(i, e i) = 1: the imaginary axis is parametrized by arc length.
    CHECK(distance(point(0.0, 1.0), point(0.0, std::exp(1.0))) ==
          doctest::Approx(1.0).epsilon(1e-15));
    CHECK(distance(point(0.0, 1.0), point(0.0, 1.0)) == 0.0);

    // Image of i under the delta = 3, n = 2 generator, and its distance;
    // both values cross-checked against an extended-precision evaluation.
    const Moebius h2{3.8, 17.0, 0.5, 2.5};
    const Point w = h2(point(0.0, 1.0));
    CHECK(w.x == doctest::Approx(6.830769230769231).epsilon(1e-15));
    CHECK(w.y == doctest::Approx(0.15384615384615385).epsilon(1e-15));
    CHECK(distance(point(0.0, 1.0), w) ==
          doctest::Approx(5.736368320340142).epsilon(1e-14));
}

TEST_CASE("distance is symmetric and satisfies the triangle inequality") {
    std::mt19937_64 rng(20240311);
    for (int it = 0; it < 500; ++it) {
        const Point z = random_point(rng);
        const Point w = random_point(rng);
        const Point u = random_point(rng);
        CHECK(distance(z, w) == distance(w, z));
        CHECK(distance(z, u) <= distance(z, w) + distance(w, u) + 1e-12);
    }
}

TEST_CASE("distance agrees with the acosh route") {
    std::mt19937_64 rng(77);
    for (int it = 0; it < 500; ++it) {
        const Point z = random_point(rng);
        const Point w = random_point(rng);
        const double dx = z.x - w.x;
        const double dy = z.y - w.y;
        const double ch = 1.0 + (dx * dx + dy * dy) / (2.0 * z.y * w.y);
        CHECK(std::cosh(distance(z, w)) == doctest::Approx(ch).epsilon(1e-12));
    }
}

TEST_CASE("distance to geodesic closed forms") {
    CHECK(dist_to_geodesic(point(1.0, 1.0), Geodesic::vertical(0.0)) ==
          doctest::Approx(std::asinh(1.0)).epsilon(1e-15));
    CHECK(dist_to_geodesic(point(1.0, 1.0), Geodesic::semicircle(-1.0, 1.0)) ==
          doctest::Approx(std::asinh(0.5)).epsilon(1e-15));
    // Points on the geodesic are at distance zero.
    CHECK(dist_to_geodesic(point(0.0, 1.0), Geodesic::semicircle(-1.0, 1.0)) == 0.0);
    CHECK(dist_to_geodesic(point(3.0, 7.0), Geodesic::vertical(3.0)) == 0.0);
}

TEST_CASE("dist_to_geodesic matches a minimization over the geodesic") {
    // Sample the semicircle finely; the closed form must lower-bound every
    // sampled distance and touch the minimum.
    const Geodesic g = Geodesic::semicircle(-2.0, 4.0);
    std::mt19937_64 rng(5);
    for (int it = 0; it < 50; ++it) {
        const Point z = random_point(rng);
        const double d = dist_to_geodesic(z, g);
        double best = std::numeric_limits<double>::infinity();
        for (int j = 1; j < 4000; ++j) {
            const double th = 3.141592653589793 * j / 4000.0;
            const Point on{g.center() + g.radius() * std::cos(th),
                           g.radius() * std::sin(th)};
            best = std::fmin(best, distance(z, on));
        }
        CHECK(d <= best + 1e-12);
        CHECK(best - d <= 1e-4);  // grid resolution, not formula error
    }
}

TEST_CASE("isometries preserve distance") {
    std::mt19937_64 rng(101);
    for (int it = 0; it < 1000; ++it) {
        const Moebius m = random_map(rng);
        const Point z = random_point(rng);
        const Point w = random_point(rng);
        const double before = distance(z, w);
        const double after = distance(m(z), m(w));
        CHECK(std::fabs(after - before) <= 1e-9 * std::fmax(1.0, before));
    }
}

TEST_CASE("isometries preserve distance to geodesics") {
    std::mt19937_64 rng(202);
    std::uniform_real_distribution<double> ends(-5.0, 5.0);
    int done = 0;
    while (done < 500) {
        const Moebius m = random_map(rng);
        double u = ends(rng);
        double v = ends(rng);
        if (std::fabs(u - v) < 0.1) continue;
        // Skip maps that send an endpoint too close to infinity; the image
        // geodesic would be ill-conditioned as a Euclidean object.
        if (std::fabs(m.c * u + m.d) < 0.05 || std::fabs(m.c * v + m.d) < 0.05) continue;
        const Geodesic g = Geodesic::semicircle(u, v);
        const Boundary iu = m(Boundary(u));
        const Boundary iv = m(Boundary(v));
        const Geodesic img = Geodesic::semicircle(iu.value(), iv.value());
        const Point z = random_point(rng);
        const double before = dist_to_geodesic(z, g);
        const double after = dist_to_geodesic(m(z), img);
        CHECK(std::fabs(after - before) <= 1e-8 * std::fmax(1.0, before));
        ++done;
    }
}

TEST_CASE("busemann closed forms") {
    const double ln2 = std::log(2.0);
    CHECK(busemann(Boundary::infinity(), point(0.0, 1.0), point(0.0, 2.0)) ==
          doctest::Approx(ln2).epsilon(1e-15));
    // From xi = 0 the horospherical height is y/|z|^2, so moving from 2i to
    // i gains ln 2 and moving to i/2 gains ln 4.
    CHECK(busemann(Boundary(0.0), point(0.0, 2.0), point(0.0, 1.0)) ==
          doctest::Approx(ln2).epsilon(1e-15));
    CHECK(busemann(Boundary(0.0), point(0.0, 2.0), point(0.0, 0.5)) ==
          doctest::Approx(2.0 * ln2).epsilon(1e-15));
    CHECK(busemann(Boundary(3.0), point(3.0, 5.0), point(3.0, 5.0)) == 0.0);
}

TEST_CASE("busemann cocycle identity") {
    std::mt19937_64 rng(303);
    std::uniform_real_distribution<double> xi_dist(-5.0, 5.0);
    std::bernoulli_distribution at_infinity(0.25);
    for (int it = 0; it < 1000; ++it) {
        const Boundary xi =
            at_infinity(rng) ? Boundary::infinity() : Boundary(xi_dist(rng));
        const Point z = random_point(rng);
        const Point w = random_point(rng);
        const Point u = random_point(rng);
        const double lhs = busemann(xi, z, w) + busemann(xi, w, u);
        const double rhs = busemann(xi, z, u);
        CHECK(std::fabs(lhs - rhs) <= 1e-9);
        CHECK(std::fabs(busemann(xi, z, w) + busemann(xi, w, z)) <= 1e-9);
    }
}

TEST_CASE("busemann is equivariant under isometries") {
    std::mt19937_64 rng(404);
    std::uniform_real_distribution<double> xi_dist(-2.0, 2.0);
    int done = 0;
    while (done < 1000) {
        const Moebius m = random_map(rng);
        const double xi = xi_dist(rng);
        if (std::fabs(m.c * xi + m.d) < 0.05) continue;
        const Point z = random_point(rng);
        const Point w = random_point(rng);
        const double before = busemann(Boundary(xi), z, w);
        const double after = busemann(m(Boundary(xi)), m(z), m(w));
        CHECK(std::fabs(after - before) <= 1e-9 * std::fmax(1.0, std::fabs(before)));
        ++done;
    }
}

TEST_CASE("busemann rejects invalid points") {
    CHECK_THROWS_AS(busemann(Boundary(0.0), Point{0.0, -1.0}, point(0.0, 1.0)),
                    std::invalid_argument);
    CHECK_THROWS_AS(dist_to_geodesic(Point{0.0, 0.0}, Geodesic::vertical(0.0)),
                    std::invalid_argument);
}

TEST_CASE("normalized scales and fixes the trace sign") {
    const Moebius id = Moebius::normalized(2.0, 0.0, 0.0, 2.0);
    CHECK(id.a == 1.0);
    CHECK(id.b == 0.0);
    CHECK(id.c == 0.0);
    CHECK(id.d == 1.0);

    const Moebius flipped = Moebius::normalized(-2.0, 0.0, 0.0, -2.0);
    CHECK(flipped.a == 1.0);
    CHECK(flipped.d == 1.0);

    // Zero trace stays as given; no flip is triggered.
    const Moebius rot = Moebius::normalized(0.0, -3.0, 3.0, 0.0);
    CHECK(rot.b == -1.0);
    CHECK(rot.c == 1.0);

    CHECK_THROWS_AS(Moebius::normalized(1.0, 2.0, 3.0, 4.0), std::invalid_argument);
    CHECK_THROWS_AS(Moebius::normalized(1.0, 1.0, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("composition resolves the sign like normalized") {
    std::mt19937_64 rng(505);
    for (int it = 0; it < 500; ++it) {
        const Moebius m = random_map(rng);
        const Moebius n = random_map(rng);
        const Moebius p = m * n;
        CHECK(p.trace() >= 0.0);
        CHECK(std::fabs(p.det_residual()) <= 1e-14);
        // The product acts like the composition regardless of the sign choice.
        const Point z = random_point(rng);
        const Point via = m(n(z));
        const Point direct = p(z);
        CHECK(std::fabs(direct.x - via.x) <= 1e-9 * std::fmax(1.0, std::fabs(via.x)));
        CHECK(std::fabs(direct.y - via.y) <= 1e-9 * std::fmax(1.0, via.y));
    }
}

TEST_CASE("inverse undoes the map") {
    std::mt19937_64 rng(606);
    for (int it = 0; it < 500; ++it) {
        const Moebius m = random_map(rng);
        const Point z = random_point(rng);
        const Point back = m.inverse()(m(z));
        CHECK(std::fabs(back.x - z.x) <= 1e-10 * std::fmax(1.0, std::fabs(z.x)));
        CHECK(std::fabs(back.y - z.y) <= 1e-10 * z.y);
        CHECK(frames_close(m * m.inverse(), Moebius{}, 1e-13));
    }
}

TEST_CASE("derivative modulus matches the height transform") {
    std::mt19937_64 rng(707);
    for (int it = 0; it < 500; ++it) {
        const Moebius m = random_map(rng);
        const Point z = random_point(rng);
        CHECK(m(z).y == doctest::Approx(z.y * m.derivative_modulus(z)).epsilon(1e-14));
    }
}

TEST_CASE("boundary action") {
    const Moebius inv{0.0, -1.0, 1.0, 0.0};  // z -> -1/z
    CHECK(inv(Boundary(0.0)).is_infinity());
    CHECK(inv(Boundary::infinity()) == Boundary(0.0));
    CHECK(inv(Boundary(2.0)).value() == doctest::Approx(-0.5).epsilon(1e-15));

    const Moebius t = Moebius::translation(3.0);
    CHECK(t(Boundary::infinity()).is_infinity());
    CHECK(t(Boundary(2.0)).value() == 5.0);

    // A generator sends infinity to its attracting center a/c.
    const Moebius h2{3.8, 17.0, 0.5, 2.5};
    CHECK(h2(Boundary::infinity()).value() == doctest::Approx(7.6).epsilon(1e-15));
}

TEST_CASE("unit tangent reference frame") {
    const UnitTangent u{Moebius{}};
    const Point base = u.basepoint();
    CHECK(base.x == 0.0);
    CHECK(base.y == 1.0);
    CHECK(u.forward_endpoint().is_infinity());
}

TEST_CASE("geodesic flow moves the basepoint at unit speed") {
    std::mt19937_64 rng(808);
    std::uniform_real_distribution<double> ts(-3.0, 3.0);
    for (int it = 0; it < 200; ++it) {
        const UnitTangent u{random_map(rng)};
        const double t = ts(rng);
        const UnitTangent v = geodesic_flow(u, t);
        CHECK(distance(u.basepoint(), v.basepoint()) ==
              doctest::Approx(std::fabs(t)).epsilon(1e-10));
        // Forward progress as seen from the forward endpoint is exactly t.
        CHECK(busemann(u.forward_endpoint(), u.basepoint(), v.basepoint()) ==
              doctest::Approx(t).epsilon(1e-10));
    }
}

TEST_CASE("horocycle flow slides along the level horocycle") {
    std::mt19937_64 rng(909);
    std::uniform_real_distribution<double> ss(-3.0, 3.0);
    for (int it = 0; it < 200; ++it) {
        const UnitTangent u{random_map(rng)};
        const double s = ss(rng);
        const UnitTangent v = horocycle_flow(u, s);
        // The Busemann function toward the forward endpoint is constant on
        // the horocycle the flow traces.
        CHECK(std::fabs(busemann(u.forward_endpoint(), u.basepoint(), v.basepoint())) <=
              1e-10);
    }
}

TEST_CASE("flow commutation relation") {
    // h_s g_t = g_t h_{s e^{-t}} as frame compositions: pushing the horocycle
    // slide through the geodesic flow contracts the slide parameter.
    std::mt19937_64 rng(1010);
    std::uniform_real_distribution<double> ts(-2.0, 2.0);
    for (int it = 0; it < 200; ++it) {
        const UnitTangent u{random_map(rng)};
        const double s = ts(rng);
        const double t = ts(rng);
        const UnitTangent lhs = geodesic_flow(horocycle_flow(u, s), t);
        const UnitTangent rhs = horocycle_flow(geodesic_flow(u, t), s * std::exp(-t));
        CHECK(frames_close(lhs.frame, rhs.frame, 1e-12));
    }
}

TEST_CASE("dilation and translation building blocks") {
    const Moebius d = Moebius::dilation(2.0);
    const Point p = d(point(0.0, 1.0));
    CHECK(p.x == 0.0);
    CHECK(p.y == doctest::Approx(std::exp(2.0)).epsilon(1e-15));
    CHECK(Moebius::translation(0.5)(point(1.0, 1.0)).x == 1.5);
    CHECK(Moebius::dilation(0.0).a == 1.0);
}

}  // TEST_SUITE
