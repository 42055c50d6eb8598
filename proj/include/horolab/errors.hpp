#pragma once

#include <stdexcept>

namespace horolab {

// A requested computation would exceed a configured or representable size
// (enumeration budgets, index overflow, precision limits).
class CapacityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace horolab
