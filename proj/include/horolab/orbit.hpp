#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <horolab/schottky.hpp>
#include <horolab/words.hpp>

namespace horolab {

// ---- closed-form distances from the orbit point i e^t to the circles ----

// Distance to the negative-side circle S_{-p}:
//   asinh((e^t + (p^4 + p^2 + 1) e^{-t}) / (2p)).
// On this side the formula agrees exactly with dist_to_geodesic, because the
// base orbit sits on the imaginary axis.
double pcl_distance_neg(double t, std::int64_t p);

// Bound the negative-side distances dominate: asinh(e^{t/2} / 2).
double pcl_lower_bound_neg(double t);

// Stated distance to the positive-side circle S_p, in generator coefficients:
//   asinh((e^{2t} d^2 + b^2 + (p^4 + p^2 + 1)(e^{2t} c^2 + a^2)) / (2 p e^t)).
// This is an upper proxy for the true point-to-geodesic distance (the two
// differ once the transported point leaves the imaginary axis); it is the
// quantity that dominates pcl_lower_bound_pos, and the suite records how far
// above the true distance it sits.
double pcl_distance_pos(double t, std::int64_t p, Surface s);

// Same quantity along an independent route: transport i e^t by h_p^{-1} and
// evaluate the quadratic form (|w|^2 + uv) / (Im w |u - v|) against S_{-p}.
double pcl_distance_pos_transported(double t, std::int64_t p, Surface s);

// Bound the positive-side expression dominates: asinh(e^t).
double pcl_lower_bound_pos(double t);

// ---- minimizer of the negative-side expression over a continuous index ----

// f_t(x) = (e^t + (x^4 + x^2 + 1) e^{-t}) / (2x); pcl_distance_neg(t, p) is
// asinh(f_t(p)).
double ft_value(double t, double x);

struct FtMinimum {
    double x_root;  // positive root of 3x^4 + x^2 - (1 + e^{2t}) = 0
    double x;       // constrained minimizer over x >= 1
    double value;   // f_t(x)
    bool interior;  // true when x_root >= 1 (stationary point admissible)
};

FtMinimum ft_minimizer(double t);

// ---- empirical injectivity-style estimate at one time ----

struct FinenessEstimate {
    double t = 0.0;
    double lower_bound = 0.0;  // asinh(e^{t/2} / 2)
    double empirical = 0.0;    // min over nontrivial words of d(i e^t, w(i e^t))
    std::vector<std::int64_t> argmin;  // witness word, signed indices
};

FinenessEstimate injectivity_estimate(double t, const Alphabet& ab,
                                      const WordBudget& budget);

// ---- Busemann values along escaping families ----

struct FamilyMember {
    std::vector<std::int64_t> factors;  // signed indices, left to right
    Moebius matrix;
};

std::string factors_name(std::span<const std::int64_t> factors);

// Product of the named generators (negative index = inverse), left to right.
Moebius factors_matrix(std::span<const std::int64_t> factors, Surface s);

// Single letters h_{p_n} along the sequence.
std::vector<FamilyMember> generator_family(const IndexSequence& seq);

// Pairs gamma_n = h_{p_n} h_{q_n}.  raw_square takes q_n = (p_n)^2 (the
// default; throws CapacityError if the square leaves 64 bits),
// sequence_entry takes q_n = p_{n^2} and needs a long enough sequence.
enum class PairIndexing { raw_square, sequence_entry };
std::vector<FamilyMember> pair_family(const IndexSequence& seq, PairIndexing mode);

struct BusemannTail {
    std::vector<double> values;     // ln(A^2 + C^2) per member
    std::vector<double> endpoints;  // A / C per member
    double limit = 0.0;             // last value
    double gap = 0.0;               // |last - previous|, 0 for short families
};

// Throws std::invalid_argument on a member fixing infinity (C = 0).
BusemannTail busemann_tail(std::span<const FamilyMember> family);

// ---- detection of target times ----

struct TimeEntry {
    double target = 0.0;
    double value = 0.0;     // Busemann value of the witness
    double error = 0.0;     // |value - target|
    double endpoint = 0.0;  // |witness(infinity)|
    std::vector<std::int64_t> factors;
    std::string name;
    bool within_core_group = false;  // every index is a sequence entry
};

struct TimeSearchBudget {
    WordBudget words;
    int family_depth = 26;
    double endpoint_threshold = 1e3;
};

struct TimeSearch {
    bool found = false;
    TimeEntry best;     // smallest error among qualified hits
    TimeEntry first;    // earliest qualified hit in candidate order; the
                        // shallowest witness, which is the one that composes
    TimeEntry closest;  // closest candidate regardless of qualification
    int family_depth_used = 0;
    int pair_depth_used = 0;  // raw squares stop before 64-bit overflow
};

// Scans single letters along the (extended) sequence, raw-square pairs, and
// the reduced-word enumeration for a Busemann value within tol of t whose
// endpoint has escaped past the threshold.
TimeSearch detect_time(double t, const IndexSequence& seq,
                       const TimeSearchBudget& budget, double tol);

// ---- the time recurrence t_{n+1} = t_n + t_{n-1} ----

struct FibonacciTimes {
    double delta = 0.0;
    double t0 = 0.0;  // 2 ln delta
    double t1 = 0.0;  // 2 ln(delta (delta + 1))
    std::vector<double> times;
    double coeff_golden = 0.0;     // A with t_n = A phi^n + B psi^n, fitted to t0, t1
    double coeff_conjugate = 0.0;  // B
    double stated_alpha = 0.0;     // ln delta + 2 ln(delta(delta+1)) / sqrt 5
    double stated_beta = 0.0;      // ln delta - 2 ln(delta(delta+1)) / sqrt 5
    double stated_mismatch = 0.0;  // (stated model at n=1) - t1; equals ln delta
};

FibonacciTimes fibonacci_times(Surface s, int count);

// A phi^n + B psi^n with the fitted coefficients.
double fibonacci_closed_form(const FibonacciTimes& ft, int n);

}  // namespace horolab
