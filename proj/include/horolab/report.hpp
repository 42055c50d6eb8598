#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace horolab {

// One verified inequality.  margin is the slack: positive means the check
// holds with room to spare, whatever the inequality's direction.
struct Check {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;
    bool pass = false;
};

// lhs >= rhs (strict when required); margin = lhs - rhs.
Check check_at_least(std::string name, double lhs, double rhs, bool strict = false);

// |lhs - rhs| <= tol; margin = tol - |lhs - rhs|.
Check check_close(std::string name, double lhs, double rhs, double tol);

// Condition known to hold or not; lhs/rhs carry the quantities looked at.
Check check_flag(std::string name, bool pass, double lhs = 0.0, double rhs = 0.0);

// Machine-readable verification record for one suite at one parameter.
struct Certificate {
    std::string suite;
    double delta = 0.0;
    std::vector<Check> checks;
    std::map<std::string, std::int64_t> truncation;
    double timing_ms = 0.0;

    bool passed() const;
    const Check* worst() const;  // smallest margin, null when empty
    std::string to_json() const;
    void write_json(const std::string& path) const;
};

// Doubles are printed with 17 significant digits so every run of the same
// binary writes byte-identical artifacts and values round-trip exactly.
std::string format_double(double v);

class CsvWriter {
public:
    explicit CsvWriter(std::ostream& os) : os_(os) {}

    CsvWriter& field(std::string_view s);
    CsvWriter& field(double v);
    CsvWriter& field(int v) { return field(static_cast<std::int64_t>(v)); }
    CsvWriter& field(std::int64_t v);
    CsvWriter& field(std::uint64_t v);
    void end_row();

private:
    std::ostream& os_;
    bool line_open_ = false;
};

}  // namespace horolab
