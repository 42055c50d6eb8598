#include <horolab/schottky.hpp>

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>

namespace horolab {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

namespace {

std::int64_t checked_index(std::int64_t n, const char* where) {
    if (n < 1)
        throw std::invalid_argument(std::string(where) + ": index must be >= 1, got " +
                                    std::to_string(n));
    return n;
}

// floor of a nonnegative rational, range-checked into int64.
std::int64_t floor_nonneg(const cpp_rational& q, const char* where) {
    cpp_int fl = numerator(q) / denominator(q);
    if (fl > std::numeric_limits<std::int64_t>::max())
        throw CapacityError(std::string(where) + ": index exceeds 64-bit range");
    return fl.convert_to<std::int64_t>();
}

}  // namespace

Generator make_generator(std::int64_t n, Surface s) {
    checked_index(n, "make_generator");
    const double nd = static_cast<double>(n);
    const double n2p1 = nd * nd + 1.0;
    return Generator{n, s.delta + 2.0 * nd / n2p1, nd + n2p1 * s.delta, 1.0 / nd,
                     n2p1 / nd};
}

IndexSequence index_sequence(Surface s, int count) {
    if (count < 0) throw std::invalid_argument("index_sequence: count must be >= 0");
    IndexSequence seq{s.delta, {}};
    seq.entries.reserve(static_cast<std::size_t>(count));
    if (count == 0) return seq;
    // The floors are taken over exact rationals built from the binary value
    // of delta, so entries never depend on rounding of the ratio.
    const cpp_rational delta(s.delta);
    const cpp_rational dm1 = delta - 1;
    std::int64_t p = 1 + floor_nonneg((delta - 1) / 2, "index_sequence");
    seq.entries.push_back(p);
    for (int k = 1; k < count; ++k) {
        const cpp_rational next = (delta + 1) * p / dm1;
        const std::int64_t fl = floor_nonneg(next, "index_sequence");
        if (fl == std::numeric_limits<std::int64_t>::max())
            throw CapacityError("index_sequence: index exceeds 64-bit range");
        p = fl + 1;
        seq.entries.push_back(p);
    }
    return seq;
}

Circle make_circle(std::int64_t n, Surface s) {
    checked_index(n, "make_circle");
    const double nd = static_cast<double>(n);
    const double n2p1 = nd * nd + 1.0;
    return Circle{n, 2.0 * nd * nd / n2p1 + nd * s.delta, -n2p1, nd};
}

namespace {

CircleSystem build_system(Surface s, std::span<const std::int64_t> indices,
                          bool from_sequence) {
    CircleSystem sys{s.delta, {}, {}, from_sequence};
    sys.generators.reserve(indices.size());
    sys.circles.reserve(indices.size());
    for (std::int64_t n : indices) {
        sys.generators.push_back(make_generator(n, s));
        sys.circles.push_back(make_circle(n, s));
    }
    return sys;
}

}  // namespace

CircleSystem circle_system(const IndexSequence& seq) {
    return build_system(Surface(seq.delta), seq.entries, true);
}

CircleSystem circle_system_raw(Surface s, std::span<const std::int64_t> indices) {
    return build_system(s, indices, false);
}

Certificate verify_disjointness(const CircleSystem& sys) {
    const auto start = std::chrono::steady_clock::now();
    Certificate cert;
    cert.suite = "disjoint";
    cert.delta = sys.delta;
    cert.truncation["circles"] = static_cast<std::int64_t>(sys.circles.size());
    cert.truncation["from_index_sequence"] = sys.from_index_sequence ? 1 : 0;

    bool increasing = true;
    for (std::size_t i = 1; i < sys.circles.size(); ++i)
        increasing = increasing && sys.circles[i].n > sys.circles[i - 1].n;
    cert.checks.push_back(check_flag("indices_strictly_increasing", increasing,
                                     static_cast<double>(sys.circles.size())));

    if (!sys.circles.empty()) {
        // The two chains must stay on their own side of 0.
        const Circle& first = sys.circles.front();
        cert.checks.push_back(
            check_at_least("neg_chain_left_of_zero", 0.0, first.u(), true));
        cert.checks.push_back(
            check_at_least("pos_chain_right_of_zero", first.alpha(), 0.0, true));
    }
    for (std::size_t i = 1; i < sys.circles.size(); ++i) {
        const Circle& lo = sys.circles[i - 1];
        const Circle& hi = sys.circles[i];
        const std::string pair =
            std::to_string(lo.n) + "_" + std::to_string(hi.n);
        // Positive side: S_{hi} lies right of S_{lo}; center gap beats the
        // radius sum.
        cert.checks.push_back(check_at_least("pos_gap_" + pair,
                                             hi.center_pos - lo.center_pos,
                                             hi.radius + lo.radius, true));
        // Negative side: S_{-hi} lies left of S_{-lo}.
        cert.checks.push_back(check_at_least("neg_gap_" + pair,
                                             lo.center_neg - hi.center_neg,
                                             hi.radius + lo.radius, true));
    }
    cert.timing_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - start)
                         .count();
    return cert;
}

Certificate verify_pingpong(const CircleSystem& sys, int samples_per_circle,
                            double tol) {
    if (samples_per_circle < 1)
        throw std::invalid_argument("verify_pingpong: need at least one sample");
    if (!(tol > 0.0)) throw std::invalid_argument("verify_pingpong: tol must be > 0");
    const auto start = std::chrono::steady_clock::now();
    Certificate cert;
    cert.suite = "pingpong";
    cert.delta = sys.delta;
    cert.truncation["circles"] = static_cast<std::int64_t>(sys.circles.size());
    cert.truncation["samples_per_circle"] = samples_per_circle;

    const std::size_t k = static_cast<std::size_t>(samples_per_circle);

    for (std::size_t ci = 0; ci < sys.circles.size(); ++ci) {
        const Circle& circ = sys.circles[ci];
        const Moebius h = sys.generators[ci].map();
        const std::string tag = std::to_string(circ.n);

        // The coefficient identities d/c = n^2 + 1 = -Y and a/c = X collapse
        // the map to h(z) = X - n^2/(z - Y).  Working with displacements from
        // the two centers keeps every intermediate at the circle's own scale,
        // so the residual measures geometry instead of cancellation at
        // |Y| ~ n^2.  (The generic evaluation route is cross-checked against
        // this one in the unit tests.)
        const double r2 = circ.radius * circ.radius;
        const auto image_disp = [r2](double dx, double dy) {
            const double scale = r2 / (dx * dx + dy * dy);
            return std::pair<double, double>{-scale * dx, scale * dy};
        };

        // Sample the source circle S_{-n} strictly inside the upper half-plane.
        double worst = 0.0;
        for (std::size_t j = 0; j < k; ++j) {
            const double theta =
                std::numbers::pi * (static_cast<double>(j) + 0.5) / static_cast<double>(k);
            const auto [vx, vy] = image_disp(circ.radius * std::cos(theta),
                                             circ.radius * std::sin(theta));
            worst = std::fmax(worst, std::fabs(std::hypot(vx, vy) - circ.radius));
        }
        cert.checks.push_back(check_at_least("image_on_circle_" + tag, tol, worst));

        // Boundary endpoints pair off as u -> alpha, v -> beta; judged
        // relative to the endpoint magnitude since centers grow with n.
        const double scale = std::fmax(1.0, std::fabs(circ.beta()));
        const Boundary iu = h(Boundary(circ.u()));
        const Boundary iv = h(Boundary(circ.v()));
        const double res_u =
            iu.is_infinity() ? std::numeric_limits<double>::infinity()
                             : std::fabs(iu.value() - circ.alpha());
        const double res_v =
            iv.is_infinity() ? std::numeric_limits<double>::infinity()
                             : std::fabs(iv.value() - circ.beta());
        cert.checks.push_back(
            check_at_least("endpoint_u_to_alpha_" + tag, tol * scale, res_u));
        cert.checks.push_back(
            check_at_least("endpoint_v_to_beta_" + tag, tol * scale, res_v));

        // Exterior points (several concentric rings around S_{-n}, plus the
        // base point i) must land inside the closed disk bounded by S_n.
        double min_slack = std::numeric_limits<double>::infinity();
        for (double factor : {1.5, 3.0, 10.0}) {
            for (int j = 0; j < 8; ++j) {
                const double theta = std::numbers::pi * (j + 0.5) / 8.0;
                const auto [vx, vy] =
                    image_disp(factor * circ.radius * std::cos(theta),
                               factor * circ.radius * std::sin(theta));
                min_slack = std::fmin(min_slack, circ.radius - std::hypot(vx, vy));
            }
        }
        cert.checks.push_back(
            check_at_least("exterior_into_disk_" + tag, min_slack, -tol));
        const auto [ix, iy] = image_disp(0.0 - circ.center_neg, 1.0);
        const double slack_i = circ.radius - std::hypot(ix, iy);
        cert.checks.push_back(
            check_at_least("basepoint_into_disk_" + tag, slack_i, 0.0, true));
    }
    cert.timing_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - start)
                         .count();
    return cert;
}

bool in_fundamental_domain(Point z, const CircleSystem& sys) {
    if (!z.valid()) throw std::invalid_argument("in_fundamental_domain: invalid point");
    const double y2 = z.y * z.y;
    for (const Circle& c : sys.circles) {
        const double r2 = c.radius * c.radius;
        const double dxp = z.x - c.center_pos;
        if (dxp * dxp + y2 < r2) return false;
        const double dxn = z.x - c.center_neg;
        if (dxn * dxn + y2 < r2) return false;
    }
    return true;
}

}  // namespace horolab
