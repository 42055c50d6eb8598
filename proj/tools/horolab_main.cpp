// horolab: builds the circle systems for the surface family, verifies their
// dynamical properties against closed-form targets, and emits certificates
// and plot-ready CSV data.
//
//   horolab build    --delta 3 --count 20
//   horolab verify   --delta 3 --suite disjoint --suite times --out out/
//   horolab plotdata --kind fineness > fineness.csv

#include <horolab/config.hpp>
#include <horolab/errors.hpp>
#include <horolab/kernels.hpp>
#include <horolab/suites.hpp>

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

namespace {

// Flag values are captured as strings so a --config file and command line
// overrides flow through the same RunConfig::set path in a fixed order.
void add_config_options(CLI::App* cmd, std::string& config_path,
                        std::vector<std::pair<std::string, std::string>>& overrides) {
    cmd->add_option("--config", config_path, "flat key=value config file");
    const auto bind = [cmd, &overrides](const std::string& key, const std::string& flag,
                                        const std::string& help) {
        cmd->add_option_function<std::string>(
            flag,
            [key, &overrides](const std::string& v) { overrides.emplace_back(key, v); },
            help);
    };
    bind("delta", "--delta", "family parameter, > 1");
    bind("generator_count", "--count", "sequence entries to build");
    bind("word_alphabet", "--alphabet", "generators used for word scans");
    bind("word_max_length", "--max-length", "reduced word length cap");
    bind("max_words", "--max-words", "enumeration budget");
    bind("fineness_alphabet", "--fineness-alphabet",
         "generators for the displacement scan");
    bind("fineness_max_length", "--fineness-max-length",
         "word length cap for the displacement scan");
    bind("t_grid", "--t-grid", "times, 'a:b:step' or comma list");
    bind("pingpong_depth", "--pingpong-depth", "circles checked by pingpong");
    bind("pingpong_samples", "--pingpong-samples", "sample points per circle");
    bind("family_depth", "--family-depth", "sequence depth for time detection");
    bind("endpoint_threshold", "--endpoint-threshold",
         "escape threshold for witness endpoints");
    bind("precision_bits", "--precision-bits",
         "extended-precision cross-check (0 = off)");
    bind("threads", "--parallel", "worker threads for word scans");
    bind("spool_words", "--spool-words", "write the full word table (true/false)");
    bind("output_dir", "--out", "output directory (default $HOROLAB_OUT)");
    for (const char* tol :
         {"tol_pingpong", "tol_trace", "tol_height", "tol_height_limit",
          "tol_busemann_single", "tol_busemann_pair", "tol_time", "tol_route",
          "tol_fib"}) {
        std::string flag = "--";
        for (const char* p = tol; *p; ++p) flag += *p == '_' ? '-' : *p;
        bind(tol, flag, std::string("override ") + tol);
    }
}

horolab::RunConfig make_config(
    const std::string& config_path,
    const std::vector<std::pair<std::string, std::string>>& overrides) {
    horolab::RunConfig cfg = config_path.empty()
                                 ? horolab::RunConfig()
                                 : horolab::RunConfig::from_file(config_path);
    for (const auto& [key, value] : overrides) cfg.set(key, value);
    cfg.validate();
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical verification for a family of horocyclic surfaces"};
    app.require_subcommand(1);

    std::string config_path;
    std::vector<std::pair<std::string, std::string>> overrides;
    std::string backend;
    app.add_option("--backend", backend, "kernel backend: scalar or avx2")
        ->check(CLI::IsMember({"scalar", "avx2"}));

    CLI::App* build = app.add_subcommand("build", "print the generator/circle table");
    std::string build_file;
    add_config_options(build, config_path, overrides);
    build->add_option("--csv-file", build_file, "also write the table to a file");

    CLI::App* verify =
        app.add_subcommand("verify", "run verification suites and write certificates");
    std::vector<std::string> suites;
    add_config_options(verify, config_path, overrides);
    verify->add_option("--suite", suites, "suite name (repeatable; default all)")
        ->check(CLI::IsMember(horolab::suite_names()));

    CLI::App* plot = app.add_subcommand("plotdata", "print plot-ready CSV data");
    std::string kind = "circles";
    add_config_options(plot, config_path, overrides);
    plot->add_option("--kind", kind, "circles, fineness or busemann")
        ->check(CLI::IsMember(horolab::plot_kinds()));

    CLI11_PARSE(app, argc, argv);

    try {
        if (!backend.empty()) {
            const auto want = backend == "avx2" ? horolab::kernels::Backend::avx2
                                                : horolab::kernels::Backend::scalar;
            if (!horolab::kernels::set_backend(want)) {
                std::cerr << "backend " << backend << " not available on this CPU\n";
                return 2;
            }
        }
        const horolab::RunConfig cfg = make_config(config_path, overrides);

        if (build->parsed()) {
            const std::string csv = horolab::build_csv(cfg);
            std::cout << csv;
            if (!build_file.empty()) {
                std::FILE* f = std::fopen(build_file.c_str(), "wb");
                if (!f) {
                    std::cerr << "cannot write " << build_file << '\n';
                    return 2;
                }
                std::fwrite(csv.data(), 1, csv.size(), f);
                std::fclose(f);
            }
            return 0;
        }
        if (plot->parsed()) {
            std::cout << horolab::plotdata_csv(kind, cfg);
            return 0;
        }
        // verify
        const horolab::RunReport report = horolab::run_and_write(suites, cfg);
        for (const horolab::BundleEntry& e : report.entries) {
            std::printf("%-10s delta=%-6g %s  worst=%s margin=%.3g  (%.1f ms)\n",
                        e.suite.c_str(), cfg.delta, e.pass ? "pass" : "FAIL",
                        e.worst_check.c_str(), e.worst_margin, e.timing_ms);
        }
        std::printf("bundle: %s\n", report.bundle_file.c_str());
        return report.pass ? 0 : 1;
    } catch (const horolab::CapacityError& e) {
        std::cerr << "capacity: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
