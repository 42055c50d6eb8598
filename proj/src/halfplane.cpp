#include <horolab/halfplane.hpp>

namespace horolab {

Moebius Moebius::normalized(double a, double b, double c, double d) {
    const double det = a * d - b * c;
    if (!(det > 0.0) || !std::isfinite(det))
        throw std::invalid_argument("Moebius: determinant must be positive, got " +
                                    std::to_string(det));
    const double s = 1.0 / std::sqrt(det);
    Moebius m{a * s, b * s, c * s, d * s};
    if (m.trace() < 0.0) return Moebius{-m.a, -m.b, -m.c, -m.d};
    return m;
}

Boundary Moebius::operator()(const Boundary& xi) const {
    if (xi.is_infinity()) {
        if (c == 0.0) return Boundary::infinity();
        return Boundary(a / c);
    }
    const double t = xi.value();
    const double den = c * t + d;
    if (den == 0.0) return Boundary::infinity();
    return Boundary((a * t + b) / den);
}

double dist_to_geodesic(Point z, const Geodesic& g) {
    if (!z.valid()) throw std::invalid_argument("dist_to_geodesic: invalid point");
    if (g.is_vertical()) return std::asinh(std::fabs(z.x - g.foot()) / z.y);
    const double u = g.left();
    const double v = g.right();
    const double s = (z.x * z.x + z.y * z.y) - (u + v) * z.x + u * v;
    return std::asinh(std::fabs(s) / (z.y * (v - u)));
}

double busemann(const Boundary& xi, Point z, Point w) {
    if (!z.valid() || !w.valid()) throw std::invalid_argument("busemann: invalid point");
    if (xi.is_infinity()) return std::log(w.y / z.y);
    // Transport xi to infinity: the horospherical height at xi is y/|z - xi|^2.
    const double t = xi.value();
    const double zx = z.x - t;
    const double wx = w.x - t;
    const double qz = zx * zx + z.y * z.y;
    const double qw = wx * wx + w.y * w.y;
    return std::log((w.y * qz) / (z.y * qw));
}

}  // namespace horolab
