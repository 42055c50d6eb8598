#include <horolab/words.hpp>

#include <horolab/kernels.hpp>
#include <horolab/report.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <thread>

namespace horolab {

Alphabet::Alphabet(const IndexSequence& seq, int size) : delta_(seq.delta), k_(size) {
    if (size < 1 || static_cast<std::size_t>(size) > seq.entries.size())
        throw std::invalid_argument("Alphabet: size must be in [1, sequence length]");
    const Surface s(seq.delta);
    gens_.reserve(static_cast<std::size_t>(size));
    slot_maps_.reserve(2 * static_cast<std::size_t>(size));
    for (int i = 0; i < size; ++i) {
        gens_.push_back(make_generator(seq.entries[static_cast<std::size_t>(i)], s));
        const Moebius m = gens_.back().map();
        slot_maps_.push_back(m);
        slot_maps_.push_back(m.inverse());
    }
}

std::uint64_t reduced_word_count(int alphabet_size, int max_length) {
    if (alphabet_size < 1)
        throw std::invalid_argument("reduced_word_count: alphabet_size must be >= 1");
    if (max_length < 0)
        throw std::invalid_argument("reduced_word_count: max_length must be >= 0");
    const auto base = static_cast<std::uint64_t>(2 * alphabet_size);
    const std::uint64_t step = base - 1;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t total = 0;
    std::uint64_t term = base;
    for (int l = 1; l <= max_length; ++l) {
        if (l > 1) {
            if (step != 0 && term > limit / step)
                throw CapacityError("reduced_word_count: overflow at length " +
                                    std::to_string(l));
            term *= step;
        }
        if (total > limit - term)
            throw CapacityError("reduced_word_count: overflow at length " +
                                std::to_string(l));
        total += term;
    }
    return total;
}

std::string word_name(std::span<const Letter> letters, const Alphabet& ab) {
    std::string name;
    for (std::size_t i = 0; i < letters.size(); ++i) {
        if (i > 0) name += '*';
        name += 'h';
        name += std::to_string(ab.index_of(letters[i].position));
        if (letters[i].sign < 0) name += "^-1";
    }
    return name;
}

std::vector<std::int64_t> letters_to_factors(std::span<const Letter> letters,
                                             const Alphabet& ab) {
    std::vector<std::int64_t> out;
    out.reserve(letters.size());
    for (const Letter& l : letters)
        out.push_back(l.sign < 0 ? -ab.index_of(l.position) : ab.index_of(l.position));
    return out;
}

namespace {

constexpr std::size_t kBatch = 4096;

double height_of(const Moebius& m) { return 1.0 / (m.c * m.c + m.d * m.d); }

double trace_gap_of(const Moebius& m) {
    const double t = m.a + m.d;
    const double at = t < 0.0 ? -t : t;
    const double g0 = at - 2.0;
    return g0 < 0.0 ? -g0 : g0;
}

// Per-worker scan state: batched coefficients plus enough sideband to
// rebuild the winning word exactly.
struct WorkerScan {
    explicit WorkerScan(int max_length)
        : stride(static_cast<std::size_t>(max_length)) {
        as.reserve(kBatch);
        bs.reserve(kBatch);
        cs.reserve(kBatch);
        ds.reserve(kBatch);
        ranks.reserve(kBatch);
        lens.reserve(kBatch);
        slots.reserve(kBatch * stride);
    }

    std::size_t stride;
    std::vector<double> as, bs, cs, ds;
    std::vector<std::uint64_t> ranks;
    std::vector<std::int32_t> lens;
    std::vector<std::uint8_t> slots;

    bool have_best = false;
    WordRecord best_height;
    WordRecord best_gap;

    void push(std::span<const Letter> letters, const Moebius& m, std::uint64_t rank) {
        as.push_back(m.a);
        bs.push_back(m.b);
        cs.push_back(m.c);
        ds.push_back(m.d);
        ranks.push_back(rank);
        lens.push_back(static_cast<std::int32_t>(letters.size()));
        std::size_t base = slots.size();
        slots.resize(base + stride, 0);
        for (std::size_t i = 0; i < letters.size(); ++i)
            slots[base + i] = static_cast<std::uint8_t>(
                2 * letters[i].position + (letters[i].sign < 0 ? 1 : 0));
        if (as.size() == kBatch) flush();
    }

    WordRecord rebuild(std::size_t i) const {
        WordRecord r;
        r.rank = ranks[i];
        const auto len = static_cast<std::size_t>(lens[i]);
        r.letters.reserve(len);
        for (std::size_t j = 0; j < len; ++j) {
            const std::uint8_t s = slots[i * stride + j];
            r.letters.push_back(Letter{static_cast<std::int32_t>(s / 2),
                                       (s & 1) ? -1 : +1});
        }
        r.matrix = Moebius{as[i], bs[i], cs[i], ds[i]};
        r.height = height_of(r.matrix);
        r.trace_gap = trace_gap_of(r.matrix);
        return r;
    }

    void flush() {
        if (as.empty()) return;
        const kernels::WordScan scan =
            kernels::word_scan(as.data(), cs.data(), ds.data(), as.size());
        const WordRecord cand_h = rebuild(scan.max_height_index);
        const WordRecord cand_g = rebuild(scan.min_trace_gap_index);
        if (!have_best) {
            best_height = cand_h;
            best_gap = cand_g;
            have_best = true;
        } else {
            if (cand_h.height > best_height.height ||
                (cand_h.height == best_height.height && cand_h.rank < best_height.rank))
                best_height = cand_h;
            if (cand_g.trace_gap < best_gap.trace_gap ||
                (cand_g.trace_gap == best_gap.trace_gap && cand_g.rank < best_gap.rank))
                best_gap = cand_g;
        }
        as.clear();
        bs.clear();
        cs.clear();
        ds.clear();
        ranks.clear();
        lens.clear();
        slots.clear();
    }
};

}  // namespace

ScanResult scan_words(const Alphabet& ab, const WordBudget& budget, int threads) {
    if (budget.alphabet_size < 1 || budget.alphabet_size > ab.size())
        throw std::invalid_argument("scan_words: alphabet size out of range");
    if (budget.max_length < 1)
        throw std::invalid_argument("scan_words: max_length must be >= 1");
    const std::uint64_t total =
        reduced_word_count(budget.alphabet_size, budget.max_length);
    if (total > budget.max_words)
        throw CapacityError("scan_words: " + std::to_string(total) +
                            " words exceed budget of " + std::to_string(budget.max_words));

    const int nslots = 2 * budget.alphabet_size;
    const int nworkers = std::clamp(threads, 1, nslots);

    // Rank of the first word of each (length, first slot) block; blocks are
    // contiguous in the canonical order, which is what makes sharding by
    // first letter rank-exact.
    const auto block_start = [&](int length, int slot) {
        std::uint64_t before = length > 1 ? reduced_word_count(budget.alphabet_size,
                                                               length - 1)
                                          : 0;
        std::uint64_t width = 1;
        for (int j = 1; j < length; ++j) width *= static_cast<std::uint64_t>(nslots - 1);
        return before + static_cast<std::uint64_t>(slot) * width;
    };

    std::vector<WorkerScan> workers;
    workers.reserve(static_cast<std::size_t>(nworkers));
    for (int w = 0; w < nworkers; ++w) workers.emplace_back(budget.max_length);

    auto run_worker = [&](int w) {
        WorkerScan& ws = workers[static_cast<std::size_t>(w)];
        for (int slot = w; slot < nslots; slot += nworkers) {
            std::uint64_t rank = 0;
            int at_length = 0;
            detail::enumerate_words(
                ab, budget.alphabet_size, budget.max_length, slot,
                [&](std::span<const Letter> letters, const Moebius& m) {
                    const int len = static_cast<int>(letters.size());
                    if (len != at_length) {
                        at_length = len;
                        rank = block_start(len, slot);
                    }
                    ws.push(letters, m, rank++);
                });
        }
        ws.flush();
    };

    if (nworkers == 1) {
        run_worker(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(nworkers));
        for (int w = 0; w < nworkers; ++w) pool.emplace_back(run_worker, w);
        for (std::thread& t : pool) t.join();
    }

    ScanResult r;
    r.word_count = total;
    bool have = false;
    for (const WorkerScan& ws : workers) {
        if (!ws.have_best) continue;
        if (!have) {
            r.max_height = ws.best_height;
            r.min_trace_gap = ws.best_gap;
            have = true;
            continue;
        }
        if (ws.best_height.height > r.max_height.height ||
            (ws.best_height.height == r.max_height.height &&
             ws.best_height.rank < r.max_height.rank))
            r.max_height = ws.best_height;
        if (ws.best_gap.trace_gap < r.min_trace_gap.trace_gap ||
            (ws.best_gap.trace_gap == r.min_trace_gap.trace_gap &&
             ws.best_gap.rank < r.min_trace_gap.rank))
            r.min_trace_gap = ws.best_gap;
    }
    return r;
}

void spool_words(const Alphabet& ab, const WordBudget& budget, std::ostream& os) {
    CsvWriter csv(os);
    csv.field("rank")
        .field("length")
        .field("name")
        .field("a")
        .field("b")
        .field("c")
        .field("d")
        .field("height")
        .field("trace_gap");
    csv.end_row();
    std::uint64_t rank = 0;
    for_each_reduced_word(ab, budget,
                          [&](std::span<const Letter> letters, const Moebius& m) {
                              csv.field(rank++)
                                  .field(static_cast<std::int64_t>(letters.size()))
                                  .field(word_name(letters, ab))
                                  .field(m.a)
                                  .field(m.b)
                                  .field(m.c)
                                  .field(m.d)
                                  .field(height_of(m))
                                  .field(trace_gap_of(m));
                              csv.end_row();
                          });
}

std::string to_string(Classification::Verdict v) {
    switch (v) {
        case Classification::Verdict::irregular: return "irregular";
        case Classification::Verdict::horocyclic: return "horocyclic";
        case Classification::Verdict::discrete: return "discrete";
        case Classification::Verdict::parabolic: return "parabolic";
        case Classification::Verdict::inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

Classification classify_infinity(const IndexSequence& seq, const WordBudget& budget,
                                 double trace_tol, double height_tol, int threads) {
    if (!(trace_tol > 0.0) || !(height_tol > 0.0))
        throw std::invalid_argument("classify_infinity: tolerances must be > 0");
    Classification cl;
    cl.height_limit_expected = 1.0 / (seq.delta * seq.delta);
    const Surface s(seq.delta);
    cl.heights.reserve(seq.entries.size());
    for (std::int64_t n : seq.entries) {
        const Generator g = make_generator(n, s);
        cl.heights.push_back(1.0 / (g.a * g.a + g.c * g.c));
    }
    cl.heights_strictly_increasing = cl.heights.size() >= 2;
    for (std::size_t i = 1; i < cl.heights.size(); ++i)
        cl.heights_strictly_increasing =
            cl.heights_strictly_increasing && cl.heights[i] > cl.heights[i - 1];
    if (!cl.heights.empty())
        cl.height_limit_residual =
            std::fabs(cl.heights.back() - cl.height_limit_expected);

    if (budget.alphabet_size < 2 || budget.max_length < 2 ||
        seq.entries.size() < 3) {
        cl.verdict = Classification::Verdict::inconclusive;
        return cl;
    }

    const Alphabet ab(seq, budget.alphabet_size);
    const ScanResult scan = scan_words(ab, budget, threads);
    cl.words_scanned = scan.word_count;
    cl.max_height = scan.max_height;
    cl.min_trace_gap = scan.min_trace_gap;

    if (scan.min_trace_gap.trace_gap <= trace_tol)
        cl.verdict = Classification::Verdict::parabolic;
    else if (scan.max_height.height > 1.0 + height_tol)
        cl.verdict = Classification::Verdict::horocyclic;
    else if (!cl.heights_strictly_increasing || !(cl.heights.back() > 0.0))
        cl.verdict = Classification::Verdict::discrete;
    else
        cl.verdict = Classification::Verdict::irregular;
    return cl;
}

}  // namespace horolab
