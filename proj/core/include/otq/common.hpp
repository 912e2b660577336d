#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace otq {

using cplx = std::complex<double>;

// Error classes map onto CLI exit codes: validation -> 1, tolerance -> 2,
// I/O -> 3; see tools/otq.cpp.
struct validation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct tolerance_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline bool almost_equal(double a, double b, double eps = 1e-9) {
    return std::abs(a - b) <= eps;
}
inline bool almost_equal(cplx a, cplx b, double eps = 1e-9) {
    return std::abs(a - b) <= eps;
}

}  // namespace otq
