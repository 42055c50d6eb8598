#include <horolab/report.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

namespace horolab {

Check check_at_least(std::string name, double lhs, double rhs, bool strict) {
    const double margin = lhs - rhs;
    const bool pass = strict ? margin > 0.0 : margin >= 0.0;
    return Check{std::move(name), lhs, rhs, margin, pass};
}

Check check_close(std::string name, double lhs, double rhs, double tol) {
    const double margin = tol - std::fabs(lhs - rhs);
    return Check{std::move(name), lhs, rhs, margin, margin >= 0.0};
}

Check check_flag(std::string name, bool pass, double lhs, double rhs) {
    return Check{std::move(name), lhs, rhs, pass ? 0.0 : -1.0, pass};
}

bool Certificate::passed() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const Check& c) { return c.pass; });
}

const Check* Certificate::worst() const {
    if (checks.empty()) return nullptr;
    const auto it = std::min_element(
        checks.begin(), checks.end(),
        [](const Check& p, const Check& q) { return p.margin < q.margin; });
    return &*it;
}

std::string Certificate::to_json() const {
    nlohmann::ordered_json j;
    j["suite"] = suite;
    j["delta"] = delta;
    j["checks"] = nlohmann::ordered_json::array();
    for (const Check& c : checks) {
        j["checks"].push_back({{"name", c.name},
                               {"lhs", c.lhs},
                               {"rhs", c.rhs},
                               {"margin", c.margin},
                               {"pass", c.pass}});
    }
    j["truncation"] = truncation;
    j["timing_ms"] = timing_ms;
    j["pass"] = passed();
    return j.dump(2);
}

void Certificate::write_json(const std::string& path) const {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    os << to_json() << '\n';
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

CsvWriter& CsvWriter::field(std::string_view s) {
    if (line_open_) os_ << ',';
    os_ << s;
    line_open_ = true;
    return *this;
}

CsvWriter& CsvWriter::field(double v) { return field(format_double(v)); }

CsvWriter& CsvWriter::field(std::int64_t v) { return field(std::to_string(v)); }

CsvWriter& CsvWriter::field(std::uint64_t v) { return field(std::to_string(v)); }

void CsvWriter::end_row() {
    os_ << '\n';
    line_open_ = false;
}

}  // namespace horolab
