#pragma once

#include <stdexcept>
#include <string>

namespace diagrec {

// Bad inputs: out-of-range parameters, shape mismatches, incompatible
// boundary data, malformed configs. The CLI maps these to exit code 1.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Numeric failures: singular or defective matrices, disagreeing dual-route
// computations. The CLI maps these to exit code 2.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SingularMatrixError : public NumericError {
public:
    SingularMatrixError(const std::string& what, double pivot)
        : NumericError(what + " (pivot magnitude " + std::to_string(pivot) + ")"),
          pivot_magnitude(pivot) {}

    double pivot_magnitude;
};

class DefectiveMatrixError : public NumericError {
public:
    using NumericError::NumericError;
};

} // namespace diagrec
