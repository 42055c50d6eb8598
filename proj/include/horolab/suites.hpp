#pragma once

#include <span>
#include <string>
#include <vector>

#include <horolab/config.hpp>
#include <horolab/report.hpp>

namespace horolab {

// A named file a suite wants written next to its certificate.
struct Artifact {
    std::string filename;
    std::string content;
};

struct SuiteOutput {
    Certificate cert;
    std::vector<Artifact> artifacts;
};

// "disjoint", "pingpong", "irregular", "fineness", "times".
const std::vector<std::string>& suite_names();

SuiteOutput run_suite(const std::string& name, const RunConfig& cfg);

// Generator/circle table for the build subcommand.
std::string build_csv(const RunConfig& cfg);

// "circles", "fineness", "busemann".
const std::vector<std::string>& plot_kinds();
std::string plotdata_csv(const std::string& kind, const RunConfig& cfg);

struct BundleEntry {
    std::string suite;
    bool pass = false;
    std::string worst_check;
    double worst_margin = 0.0;
    double timing_ms = 0.0;
    std::vector<std::string> files;
};

struct RunReport {
    bool pass = true;
    std::vector<BundleEntry> entries;
    std::string bundle_file;
};

// Runs the named suites (empty means all) and writes certificates, artifacts
// and a bundle summary JSON under the config's output directory.
RunReport run_and_write(std::span<const std::string> names, const RunConfig& cfg);

}  // namespace horolab
