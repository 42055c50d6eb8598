#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace horolab {

// One run's worth of knobs.  Serializes to a flat key=value text block
// (sorted, one pair per line) that round-trips through from_text; the CLI
// layers flag overrides on top of a loaded file.
struct RunConfig {
    double delta = 3.0;
    int generator_count = 20;

    int word_alphabet = 4;
    int word_max_length = 6;
    std::uint64_t max_words = 50'000'000;

    int fineness_alphabet = 3;
    int fineness_max_length = 4;
    std::vector<double> t_grid;  // default 0..10 step 0.5, set by ctor

    int pingpong_depth = 10;
    int pingpong_samples = 100;

    int family_depth = 26;
    double endpoint_threshold = 1e3;

    double tol_pingpong = 1e-9;
    double tol_trace = 1e-9;
    double tol_height = 1e-9;
    double tol_height_limit = 2e-3;
    double tol_busemann_single = 2e-3;
    double tol_busemann_pair = 1e-2;
    double tol_time = 2e-2;
    double tol_route = 1e-8;
    double tol_fib = 1e-9;

    unsigned precision_bits = 0;  // 0 = plain double
    int threads = 1;
    bool spool_words = false;
    std::string output_dir;  // empty = env HOROLAB_OUT, else "horolab-out"

    RunConfig();

    void validate() const;  // throws std::invalid_argument
    std::string resolved_output_dir() const;

    std::string to_text() const;
    static RunConfig from_text(const std::string& text);
    static RunConfig from_file(const std::string& path);

    // Applies one "key=value" or key/value pair; throws on unknown keys.
    void set(const std::string& key, const std::string& value);
};

// "a:b:s" for an inclusive range, or a comma-separated list.
std::vector<double> parse_grid(const std::string& text);
std::string grid_to_text(const std::vector<double>& grid);

}  // namespace horolab
