#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <horolab/errors.hpp>
#include <horolab/schottky.hpp>

namespace horolab {

// One letter of a reduced word: a generator position in the alphabet
// (0-based) and a sign (+1 for h, -1 for h^{-1}).
struct Letter {
    std::int32_t position;
    std::int32_t sign;

    friend bool operator==(Letter, Letter) = default;
};

inline bool cancels(Letter p, Letter q) {
    return p.position == q.position && p.sign == -q.sign;
}

// The first k generators of a sequence, with their maps cached per sign.
// Enumeration order interleaves signs: h_{p_1}, h_{p_1}^{-1}, h_{p_2}, ...
class Alphabet {
public:
    Alphabet(const IndexSequence& seq, int size);

    int size() const { return k_; }
    double delta() const { return delta_; }
    const Generator& generator(int position) const { return gens_.at(position); }
    std::int64_t index_of(int position) const { return gens_.at(position).n; }
    const Moebius& slot_map(int slot) const { return slot_maps_.at(slot); }
    const Moebius& letter_map(Letter l) const {
        return slot_map(2 * l.position + (l.sign < 0 ? 1 : 0));
    }

private:
    double delta_;
    int k_;
    std::vector<Generator> gens_;
    std::vector<Moebius> slot_maps_;
};

// Number of reduced words of length 1..max_length over k generators:
// sum of 2k (2k-1)^{l-1}.  Throws CapacityError if it overflows 64 bits.
std::uint64_t reduced_word_count(int alphabet_size, int max_length);

struct WordBudget {
    int alphabet_size = 4;
    int max_length = 6;
    std::uint64_t max_words = 50'000'000;
};

// Display form like "h2*h5^-1*h2"; letters show their generator index.
std::string word_name(std::span<const Letter> letters, const Alphabet& ab);

// Signed generator indices (negative = inverse), composed left to right.
std::vector<std::int64_t> letters_to_factors(std::span<const Letter> letters,
                                             const Alphabet& ab);

namespace detail {

// Depth-first enumeration in canonical order: by length, then lexicographic
// over slots.  The matrix is built by appending the new letter on the right,
// so each stack level extends the product without recomputation.  fn is
// called only at the target length.  only_first_slot restricts the walk to
// words starting with that slot (-1 for all); used to shard across threads
// without changing ranks.
template <class Fn>
void enumerate_words(const Alphabet& ab, int alphabet_size, int max_length,
                     int only_first_slot, Fn&& fn) {
    const int nslots = 2 * alphabet_size;
    std::vector<Letter> letters(static_cast<std::size_t>(max_length));
    std::vector<Moebius> stack(static_cast<std::size_t>(max_length) + 1);
    stack[0] = Moebius{};
    auto walk = [&](auto&& self, int depth, int target) -> void {
        const int prev_slot =
            depth == 0 ? -1
                       : 2 * letters[depth - 1].position +
                             (letters[depth - 1].sign < 0 ? 1 : 0);
        for (int slot = 0; slot < nslots; ++slot) {
            if (depth == 0 && only_first_slot >= 0 && slot != only_first_slot)
                continue;
            if (depth > 0 && (slot ^ 1) == prev_slot) continue;
            letters[depth] = Letter{slot / 2, (slot & 1) ? -1 : +1};
            stack[depth + 1] = stack[depth] * ab.slot_map(slot);
            if (depth + 1 == target)
                fn(std::span<const Letter>(letters.data(),
                                           static_cast<std::size_t>(target)),
                   stack[depth + 1]);
            else
                self(self, depth + 1, target);
        }
    };
    for (int target = 1; target <= max_length; ++target) walk(walk, 0, target);
}

}  // namespace detail

// Visits every reduced word up to the budget's length in canonical order.
template <class Fn>
void for_each_reduced_word(const Alphabet& ab, const WordBudget& budget, Fn&& fn) {
    if (budget.alphabet_size < 1 || budget.alphabet_size > ab.size())
        throw std::invalid_argument("for_each_reduced_word: alphabet size out of range");
    if (budget.max_length < 1)
        throw std::invalid_argument("for_each_reduced_word: max_length must be >= 1");
    const std::uint64_t total =
        reduced_word_count(budget.alphabet_size, budget.max_length);
    if (total > budget.max_words)
        throw CapacityError("for_each_reduced_word: " + std::to_string(total) +
                            " words exceed budget of " +
                            std::to_string(budget.max_words));
    detail::enumerate_words(ab, budget.alphabet_size, budget.max_length, -1,
                            std::forward<Fn>(fn));
}

struct WordRecord {
    std::vector<Letter> letters;
    Moebius matrix;
    std::uint64_t rank = 0;
    double height = 0.0;     // Im of the word applied at i
    double trace_gap = 0.0;  // | |trace| - 2 |
};

struct ScanResult {
    std::uint64_t word_count = 0;
    WordRecord max_height;
    WordRecord min_trace_gap;
};

// Full scan for the extremal statistics.  Batches coefficients through the
// kernel backend; with threads > 1 the first letter shards the walk and the
// merge orders candidates by (value, rank), so results are identical for any
// thread count and backend.
ScanResult scan_words(const Alphabet& ab, const WordBudget& budget, int threads = 1);

// Streams every word as a CSV row (rank, length, name, coefficients, height,
// trace gap) without storing the batch.
void spool_words(const Alphabet& ab, const WordBudget& budget, std::ostream& os);

// Classification of the point at infinity for the surface's group, from
// word-scan evidence plus the generator height sequence Im h_{p_k}^{-1}(i).
struct Classification {
    enum class Verdict { irregular, horocyclic, discrete, parabolic, inconclusive };

    Verdict verdict = Verdict::inconclusive;
    std::uint64_t words_scanned = 0;
    WordRecord max_height;
    WordRecord min_trace_gap;
    std::vector<double> heights;
    double height_limit_expected = 0.0;  // 1/delta^2
    double height_limit_residual = 0.0;
    bool heights_strictly_increasing = false;
};

std::string to_string(Classification::Verdict v);

// Decision rule: parabolic if some word's |trace| comes within trace_tol of
// 2; horocyclic if some word lifts i above height 1 + height_tol; discrete
// if the height sequence fails to climb strictly toward a positive limit
// (accumulation is the non-discreteness evidence); irregular when all three
// kinds of evidence are absent; inconclusive when the budgets are too small
// to look.
Classification classify_infinity(const IndexSequence& seq, const WordBudget& budget,
                                 double trace_tol, double height_tol,
                                 int threads = 1);

}  // namespace horolab
