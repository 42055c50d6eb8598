#include <horolab/orbit.hpp>

#include <horolab/kernels.hpp>

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>

namespace horolab {

namespace {

std::int64_t checked_pcl_index(std::int64_t p) {
    if (p < 1) throw std::invalid_argument("pcl distance: index must be >= 1");
    return p;
}

}  // namespace

double pcl_distance_neg(double t, std::int64_t p) {
    checked_pcl_index(p);
    const double pd = static_cast<double>(p);
    const double quartic = (pd * pd) * (pd * pd) + pd * pd + 1.0;
    return std::asinh((std::exp(t) + quartic * std::exp(-t)) / (2.0 * pd));
}

double pcl_lower_bound_neg(double t) { return std::asinh(0.5 * std::exp(0.5 * t)); }

double pcl_distance_pos(double t, std::int64_t p, Surface s) {
    checked_pcl_index(p);
    const Generator g = make_generator(p, s);
    const double pd = static_cast<double>(p);
    const double quartic = (pd * pd) * (pd * pd) + pd * pd + 1.0;
    const double e2t = std::exp(2.0 * t);
    const double num =
        e2t * g.d * g.d + g.b * g.b + quartic * (e2t * g.c * g.c + g.a * g.a);
    return std::asinh(num / (2.0 * pd * std::exp(t)));
}

double pcl_distance_pos_transported(double t, std::int64_t p, Surface s) {
    checked_pcl_index(p);
    const Moebius inv = make_generator(p, s).map().inverse();
    const Point w = inv(Point{0.0, std::exp(t)});
    const Circle circ = make_circle(p, s);
    const double uv = circ.u() * circ.v();
    const double span = std::fabs(circ.u() - circ.v());
    const double q = (w.x * w.x + w.y * w.y) + uv;
    return std::asinh(std::fabs(q) / (w.y * span));
}

double pcl_lower_bound_pos(double t) { return std::asinh(std::exp(t)); }

double ft_value(double t, double x) {
    if (!(x > 0.0)) throw std::invalid_argument("ft_value: x must be > 0");
    const double quartic = (x * x) * (x * x) + x * x + 1.0;
    return (std::exp(t) + quartic * std::exp(-t)) / (2.0 * x);
}

FtMinimum ft_minimizer(double t) {
    const double e2t = std::exp(2.0 * t);
    const double x2 = (-1.0 + std::sqrt(13.0 + 12.0 * e2t)) / 6.0;
    FtMinimum m;
    m.x_root = std::sqrt(x2);
    m.interior = m.x_root >= 1.0;
    m.x = m.interior ? m.x_root : 1.0;
    m.value = ft_value(t, m.x);
    return m;
}

namespace {

// Batched displacement scan with deterministic (value, rank) argmin.
struct DisplacementScan {
    explicit DisplacementScan(double zx_, double zy_, std::size_t stride_)
        : zx(zx_), zy(zy_), stride(stride_) {}

    double zx, zy;
    std::size_t stride;
    std::vector<double> as, bs, cs, ds;
    std::vector<std::uint8_t> slots;
    std::vector<std::int32_t> lens;
    std::uint64_t next_rank = 0;

    bool have_best = false;
    double best_cosh = 0.0;
    std::uint64_t best_rank = 0;
    std::vector<std::uint8_t> best_slots;
    std::int32_t best_len = 0;

    void push(std::span<const Letter> letters, const Moebius& m) {
        as.push_back(m.a);
        bs.push_back(m.b);
        cs.push_back(m.c);
        ds.push_back(m.d);
        lens.push_back(static_cast<std::int32_t>(letters.size()));
        const std::size_t base = slots.size();
        slots.resize(base + stride, 0);
        for (std::size_t i = 0; i < letters.size(); ++i)
            slots[base + i] = static_cast<std::uint8_t>(
                2 * letters[i].position + (letters[i].sign < 0 ? 1 : 0));
        if (as.size() == 4096) flush();
    }

    void flush() {
        if (as.empty()) return;
        const std::size_t n = as.size();
        std::vector<double> wx(n), wy(n), coshd(n);
        kernels::apply_point(as.data(), bs.data(), cs.data(), ds.data(), zx, zy,
                             wx.data(), wy.data(), n);
        kernels::cosh_distance(zx, zy, wx.data(), wy.data(), coshd.data(), n);
        for (std::size_t i = 0; i < n; ++i) {
            const std::uint64_t rank = next_rank + i;
            if (!have_best || coshd[i] < best_cosh ||
                (coshd[i] == best_cosh && rank < best_rank)) {
                have_best = true;
                best_cosh = coshd[i];
                best_rank = rank;
                best_len = lens[i];
                best_slots.assign(slots.begin() + static_cast<std::ptrdiff_t>(i * stride),
                                  slots.begin() +
                                      static_cast<std::ptrdiff_t>((i + 1) * stride));
            }
        }
        next_rank += n;
        as.clear();
        bs.clear();
        cs.clear();
        ds.clear();
        lens.clear();
        slots.clear();
    }
};

}  // namespace

FinenessEstimate injectivity_estimate(double t, const Alphabet& ab,
                                      const WordBudget& budget) {
    FinenessEstimate est;
    est.t = t;
    est.lower_bound = pcl_lower_bound_neg(t);
    DisplacementScan scan(0.0, std::exp(t), static_cast<std::size_t>(budget.max_length));
    for_each_reduced_word(ab, budget,
                          [&](std::span<const Letter> letters, const Moebius& m) {
                              scan.push(letters, m);
                          });
    scan.flush();
    if (!scan.have_best)
        throw std::invalid_argument("injectivity_estimate: empty enumeration");
    est.empirical = std::acosh(scan.best_cosh);
    std::vector<Letter> letters;
    letters.reserve(static_cast<std::size_t>(scan.best_len));
    for (std::int32_t i = 0; i < scan.best_len; ++i) {
        const std::uint8_t s = scan.best_slots[static_cast<std::size_t>(i)];
        letters.push_back(Letter{static_cast<std::int32_t>(s / 2), (s & 1) ? -1 : +1});
    }
    est.argmin = letters_to_factors(letters, ab);
    return est;
}

std::string factors_name(std::span<const std::int64_t> factors) {
    std::string name;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (i > 0) name += '*';
        name += 'h';
        if (factors[i] < 0) {
            name += std::to_string(-factors[i]);
            name += "^-1";
        } else {
            name += std::to_string(factors[i]);
        }
    }
    return name;
}

Moebius factors_matrix(std::span<const std::int64_t> factors, Surface s) {
    Moebius acc;
    for (std::int64_t f : factors) {
        if (f == 0) throw std::invalid_argument("factors_matrix: zero factor");
        const Moebius m = make_generator(f < 0 ? -f : f, s).map();
        acc = acc * (f < 0 ? m.inverse() : m);
    }
    return acc;
}

std::vector<FamilyMember> generator_family(const IndexSequence& seq) {
    const Surface s(seq.delta);
    std::vector<FamilyMember> fam;
    fam.reserve(seq.entries.size());
    for (std::int64_t p : seq.entries)
        fam.push_back(FamilyMember{{p}, make_generator(p, s).map()});
    return fam;
}

std::vector<FamilyMember> pair_family(const IndexSequence& seq, PairIndexing mode) {
    const Surface s(seq.delta);
    std::vector<FamilyMember> fam;
    if (mode == PairIndexing::raw_square) {
        constexpr std::int64_t kSqrtMax = 3037000499;  // floor(sqrt(2^63 - 1))
        for (std::int64_t p : seq.entries) {
            if (p > kSqrtMax)
                throw CapacityError("pair_family: square of " + std::to_string(p) +
                                    " exceeds 64-bit range");
            const std::int64_t q = p * p;
            fam.push_back(FamilyMember{
                {p, q}, make_generator(p, s).map() * make_generator(q, s).map()});
        }
        return fam;
    }
    // sequence_entry: q_n = p_{n^2}, so member n needs entry n^2.
    for (std::size_t n = 1; n * n <= seq.entries.size(); ++n) {
        const std::int64_t p = seq.entries[n - 1];
        const std::int64_t q = seq.entries[n * n - 1];
        fam.push_back(FamilyMember{
            {p, q}, make_generator(p, s).map() * make_generator(q, s).map()});
    }
    return fam;
}

BusemannTail busemann_tail(std::span<const FamilyMember> family) {
    BusemannTail tail;
    tail.values.reserve(family.size());
    tail.endpoints.reserve(family.size());
    for (const FamilyMember& m : family) {
        if (m.matrix.c == 0.0)
            throw std::invalid_argument("busemann_tail: member fixes infinity");
        tail.values.push_back(
            std::log(m.matrix.a * m.matrix.a + m.matrix.c * m.matrix.c));
        tail.endpoints.push_back(m.matrix.a / m.matrix.c);
    }
    if (!tail.values.empty()) tail.limit = tail.values.back();
    if (tail.values.size() >= 2)
        tail.gap = std::fabs(tail.values.back() - tail.values[tail.values.size() - 2]);
    return tail;
}

namespace {

// Continues the index recurrence (exactly, like index_sequence) far enough
// to decide whether value appears as an entry.
bool is_sequence_entry(double delta, std::int64_t value) {
    using boost::multiprecision::cpp_int;
    using boost::multiprecision::cpp_rational;
    if (value < 1) return false;
    const cpp_rational d(delta);
    const cpp_rational dm1 = d - 1;
    cpp_rational first = (d - 1) / 2;
    cpp_int fl = numerator(first) / denominator(first);
    cpp_int p = fl + 1;
    while (p <= value) {
        if (p == value) return true;
        const cpp_rational next = (d + 1) * cpp_rational(p) / dm1;
        p = numerator(next) / denominator(next) + 1;
    }
    return false;
}

struct Candidate {
    double value;
    double endpoint_abs;
    std::vector<std::int64_t> factors;
    bool core;
};

}  // namespace

TimeSearch detect_time(double t, const IndexSequence& seq,
                       const TimeSearchBudget& budget, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("detect_time: tol must be > 0");
    if (budget.family_depth < 1)
        throw std::invalid_argument("detect_time: family depth must be >= 1");
    const Surface s(seq.delta);

    TimeSearch search;
    search.family_depth_used = budget.family_depth;
    const IndexSequence deep = index_sequence(s, budget.family_depth);

    bool have_best = false, have_first = false, have_closest = false;
    const auto consider = [&](const Candidate& c) {
        TimeEntry e;
        e.target = t;
        e.value = c.value;
        e.error = std::fabs(c.value - t);
        e.endpoint = c.endpoint_abs;
        e.factors = c.factors;
        e.name = factors_name(c.factors);
        e.within_core_group = c.core;
        if (!have_closest || e.error < search.closest.error) {
            search.closest = e;
            have_closest = true;
        }
        if (c.endpoint_abs > budget.endpoint_threshold && e.error <= tol) {
            if (!have_first) {
                search.first = e;
                have_first = true;
            }
            if (!have_best || e.error < search.best.error) {
                search.best = e;
                have_best = true;
            }
        }
    };

    const auto consider_matrix = [&](const Moebius& m, std::vector<std::int64_t> factors,
                                     bool core) {
        if (m.c == 0.0) return;
        consider(Candidate{std::log(m.a * m.a + m.c * m.c), std::fabs(m.a / m.c),
                           std::move(factors), core});
    };

    // Reduced-word enumeration over the alphabet prefix.
    const Alphabet ab(seq, std::min<int>(budget.words.alphabet_size,
                                         static_cast<int>(seq.entries.size())));
    WordBudget wb = budget.words;
    wb.alphabet_size = ab.size();
    for_each_reduced_word(ab, wb,
                          [&](std::span<const Letter> letters, const Moebius& m) {
                              consider_matrix(m, letters_to_factors(letters, ab), true);
                          });

    // Single letters along the extended sequence.
    for (const FamilyMember& m : generator_family(deep))
        consider_matrix(m.matrix, m.factors, true);

    // Raw-square pairs over the prefix whose squares stay in 64 bits.
    constexpr std::int64_t kSqrtMax = 3037000499;
    std::size_t safe = 0;
    while (safe < deep.entries.size() && deep.entries[safe] <= kSqrtMax) ++safe;
    IndexSequence safe_prefix{deep.delta,
                              {deep.entries.begin(),
                               deep.entries.begin() + static_cast<std::ptrdiff_t>(safe)}};
    search.pair_depth_used = static_cast<int>(safe);
    for (const FamilyMember& m : pair_family(safe_prefix, PairIndexing::raw_square)) {
        const bool core = is_sequence_entry(seq.delta, m.factors[1]);
        consider_matrix(m.matrix, m.factors, core);
    }

    search.found = have_best;
    return search;
}

FibonacciTimes fibonacci_times(Surface s, int count) {
    if (count < 2)
        throw std::invalid_argument("fibonacci_times: need at least two entries");
    FibonacciTimes ft;
    ft.delta = s.delta;
    ft.t0 = 2.0 * std::log(s.delta);
    ft.t1 = 2.0 * std::log(s.delta * (s.delta + 1.0));
    ft.times.resize(static_cast<std::size_t>(count));
    ft.times[0] = ft.t0;
    ft.times[1] = ft.t1;
    for (int n = 2; n < count; ++n)
        ft.times[static_cast<std::size_t>(n)] =
            ft.times[static_cast<std::size_t>(n - 1)] +
            ft.times[static_cast<std::size_t>(n - 2)];
    const double r5 = std::sqrt(5.0);
    ft.coeff_golden = (ft.t1 - (1.0 - r5) / 2.0 * ft.t0) / r5;
    ft.coeff_conjugate = ((1.0 + r5) / 2.0 * ft.t0 - ft.t1) / r5;
    ft.stated_alpha = std::log(s.delta) + 2.0 * std::log(s.delta * (s.delta + 1.0)) / r5;
    ft.stated_beta = std::log(s.delta) - 2.0 * std::log(s.delta * (s.delta + 1.0)) / r5;
    const double phi = (1.0 + r5) / 2.0;
    const double psi = (1.0 - r5) / 2.0;
    ft.stated_mismatch = (ft.stated_alpha * phi + ft.stated_beta * psi) - ft.t1;
    return ft;
}

double fibonacci_closed_form(const FibonacciTimes& ft, int n) {
    if (n < 0) throw std::invalid_argument("fibonacci_closed_form: n must be >= 0");
    const double r5 = std::sqrt(5.0);
    const double phi = (1.0 + r5) / 2.0;
    const double psi = (1.0 - r5) / 2.0;
    return ft.coeff_golden * std::pow(phi, n) + ft.coeff_conjugate * std::pow(psi, n);
}

}  // namespace horolab
