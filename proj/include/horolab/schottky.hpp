#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <horolab/errors.hpp>
#include <horolab/halfplane.hpp>
#include <horolab/report.hpp>

namespace horolab {

// Family parameter; the construction needs delta strictly above 1.
struct Surface {
    double delta;

    explicit Surface(double d) : delta(d) {
        if (!(std::isfinite(d) && d > 1.0))
            throw std::invalid_argument("Surface: requires delta > 1, got " +
                                        std::to_string(d));
    }
};

// Coefficients of the index-n generator
//   a_n = delta + 2n/(n^2+1),  b_n = n + (n^2+1) delta,
//   c_n = 1/n,                 d_n = (n^2+1)/n.
struct Generator {
    std::int64_t n;
    double a, b, c, d;

    Moebius map() const { return Moebius{a, b, c, d}; }
    double trace() const { return a + d; }
};

Generator make_generator(std::int64_t n, Surface s);

// Index recurrence p_1 = 1 + floor((delta-1)/2),
// p_{k+1} = 1 + floor((delta+1) p_k / (delta-1)).  Floors near an integer
// boundary are resolved with exact rational arithmetic on the binary value
// of delta, so two runs can never disagree on an entry.
struct IndexSequence {
    double delta;
    std::vector<std::int64_t> entries;
};

IndexSequence index_sequence(Surface s, int count);

// Paired isometry circles of one generator: S_n centered at X_n = n a_n on
// the positive side, S_{-n} centered at Y_n = -(n^2+1), both of radius n.
struct Circle {
    std::int64_t n;
    double center_pos;
    double center_neg;
    double radius;

    double alpha() const { return center_pos - radius; }
    double beta() const { return center_pos + radius; }
    double u() const { return center_neg + radius; }
    double v() const { return center_neg - radius; }
    Geodesic pos_geodesic() const { return Geodesic::semicircle(alpha(), beta()); }
    Geodesic neg_geodesic() const { return Geodesic::semicircle(v(), u()); }
};

Circle make_circle(std::int64_t n, Surface s);

struct CircleSystem {
    double delta;
    std::vector<Generator> generators;
    std::vector<Circle> circles;
    // Whether the indices came from index_sequence; disjointness is only
    // guaranteed in that case, and certificates record which case they verify.
    bool from_index_sequence;
};

CircleSystem circle_system(const IndexSequence& seq);
CircleSystem circle_system_raw(Surface s, std::span<const std::int64_t> indices);

// Pairwise ordering/disjointness ledger for the whole system: the negative
// chain sits left of 0, the positive chain right of it, and consecutive
// circles on each side are separated with strictly positive margins.
Certificate verify_disjointness(const CircleSystem& sys);

// Samples each S_{-n}, pushes the samples through h_n and checks they land
// on S_n within tol; also checks the endpoint pairing u -> alpha, v -> beta
// and that sampled exterior points (including i) land inside the disk of S_n.
Certificate verify_pingpong(const CircleSystem& sys, int samples_per_circle,
                            double tol);

// True when z lies outside every open disk bounded by the system's circles.
bool in_fundamental_domain(Point z, const CircleSystem& sys);

}  // namespace horolab
