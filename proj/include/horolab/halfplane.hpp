#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace horolab {

// Point of the upper half-plane model; y > 0 for valid points.
struct Point {
    double x = 0.0;
    double y = 1.0;

    bool valid() const { return std::isfinite(x) && std::isfinite(y) && y > 0.0; }
};

inline Point point(double x, double y) {
    Point z{x, y};
    if (!z.valid()) throw std::invalid_argument("point: requires finite coordinates with y > 0");
    return z;
}

// Point of the ideal boundary: a real number or the point at infinity.
class Boundary {
public:
    Boundary() = default;
    explicit Boundary(double v) : value_(v), infinite_(false) {
        if (!std::isfinite(v)) throw std::invalid_argument("Boundary: finite value required");
    }
    static Boundary infinity() { return Boundary(tag_infinity{}); }

    bool is_infinity() const { return infinite_; }
    double value() const {
        if (infinite_) throw std::logic_error("Boundary: value() on the point at infinity");
        return value_;
    }

    friend bool operator==(const Boundary& p, const Boundary& q) {
        if (p.infinite_ || q.infinite_) return p.infinite_ == q.infinite_;
        return p.value_ == q.value_;
    }

private:
    struct tag_infinity {};
    explicit Boundary(tag_infinity) : infinite_(true) {}
    double value_ = 0.0;
    bool infinite_ = true;
};

// Moebius map z -> (az+b)/(cz+d) with ad - bc = 1.  The sign convention is
// trace >= 0 (coefficients are only defined projectively; normalized() and
// composition both resolve the sign the same way).
struct Moebius {
    double a = 1.0;
    double b = 0.0;
    double c = 0.0;
    double d = 1.0;

    double det() const { return a * d - b * c; }
    double trace() const { return a + d; }

    // Scales an arbitrary positive-determinant coefficient set to determinant
    // one and applies the sign convention.
    static Moebius normalized(double a, double b, double c, double d);

    // Parabolic translation z -> z + s.
    static Moebius translation(double s) { return Moebius{1.0, s, 0.0, 1.0}; }

    // Dilation z -> e^t z, the time-t frame of the geodesic flow.
    static Moebius dilation(double t) {
        const double s = std::exp(0.5 * t);
        return Moebius{s, 0.0, 0.0, 1.0 / s};
    }

    Moebius inverse() const { return Moebius{d, -b, -c, a}; }

    Point operator()(Point z) const {
        const double dre = c * z.x + d;
        const double dim = c * z.y;
        const double den = dre * dre + dim * dim;
        const double nre = a * z.x + b;
        const double nim = a * z.y;
        return Point{(nre * dre + nim * dim) / den, z.y / den};
    }

    Boundary operator()(const Boundary& xi) const;

    // |m'(z)| = 1/|cz+d|^2; the factor by which Im transforms.
    double derivative_modulus(Point z) const {
        const double dre = c * z.x + d;
        const double dim = c * z.y;
        return 1.0 / (dre * dre + dim * dim);
    }

    // Residual of the unit-determinant invariant, scaled so that cancellation
    // in ad - bc for large coefficients is judged relative to the terms.
    double det_residual() const {
        const double scale = std::fmax(1.0, std::fabs(a * d) + std::fabs(b * c));
        return (det() - 1.0) / scale;
    }

    friend Moebius operator*(const Moebius& m, const Moebius& n) {
        Moebius r{m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d,
                  m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d};
        if (r.trace() < 0.0) return Moebius{-r.a, -r.b, -r.c, -r.d};
        return r;
    }
};

// Complete geodesic: either a vertical line or a Euclidean semicircle with
// two distinct real endpoints.
class Geodesic {
public:
    static Geodesic vertical(double foot) {
        if (!std::isfinite(foot)) throw std::invalid_argument("Geodesic: finite foot required");
        return Geodesic(foot, foot, true);
    }
    static Geodesic semicircle(double u, double v) {
        if (!(std::isfinite(u) && std::isfinite(v)) || u == v)
            throw std::invalid_argument("Geodesic: two distinct finite endpoints required");
        if (u > v) std::swap(u, v);
        return Geodesic(u, v, false);
    }

    bool is_vertical() const { return vertical_; }
    double foot() const { return left_; }
    double left() const { return left_; }
    double right() const { return right_; }
    double center() const { return 0.5 * (left_ + right_); }
    double radius() const { return 0.5 * (right_ - left_); }

private:
    Geodesic(double l, double r, bool vert) : left_(l), right_(r), vertical_(vert) {}
    double left_;
    double right_;
    bool vertical_;
};

// d(z, w) = 2 asinh(|z - w| / (2 sqrt(y_z y_w))); exact for coincident points
// and stable for nearby ones, unlike the acosh form.
inline double distance(Point z, Point w) {
    const double dx = z.x - w.x;
    const double dy = z.y - w.y;
    return 2.0 * std::asinh(0.5 * std::sqrt((dx * dx + dy * dy) / (z.y * w.y)));
}

// Distance from z to a complete geodesic.  For a semicircle with endpoints
// u < v this is asinh(| |z|^2 - (u+v)x + uv | / (y (v - u))).
double dist_to_geodesic(Point z, const Geodesic& g);

// Busemann cocycle B_xi(z, w): the signed horospherical distance from z to w
// as seen from xi.  B_inf(z, w) = ln(y_w / y_z).
double busemann(const Boundary& xi, Point z, Point w);

// Unit tangent vector, stored as the frame mapping the reference vector
// (based at i, pointing toward infinity) onto it.
struct UnitTangent {
    Moebius frame;

    Point basepoint() const { return frame(Point{0.0, 1.0}); }
    Boundary forward_endpoint() const { return frame(Boundary::infinity()); }
};

// Both flows act by right-composition of the frame, so they commute with the
// isometric left action for free.
inline UnitTangent geodesic_flow(const UnitTangent& u, double t) {
    return UnitTangent{u.frame * Moebius::dilation(t)};
}

inline UnitTangent horocycle_flow(const UnitTangent& u, double s) {
    return UnitTangent{u.frame * Moebius::translation(s)};
}

}  // namespace horolab
