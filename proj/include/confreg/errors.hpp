// Exception types thrown by the confreg library.
#pragma once

#include <stdexcept>
#include <string>

namespace confreg {

// Input data violates Dataset invariants (ragged columns, non-finite
// values, n < 2, unknown column, unparseable CSV).
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

// The simplex maximizer failed to converge on every restart.
class ConvergenceFailure : public std::runtime_error {
public:
    explicit ConvergenceFailure(const std::string& msg) : std::runtime_error(msg) {}
};

// The data admit no usable MLE: unbounded likelihood, zero variance,
// singular covariance, or an MLE on the parameter-space boundary.
class DegenerateData : public std::runtime_error {
public:
    explicit DegenerateData(const std::string& msg) : std::runtime_error(msg) {}
};

// A requested parameter point lies outside the parameter box.
class OutOfBox : public std::runtime_error {
public:
    explicit OutOfBox(const std::string& msg) : std::runtime_error(msg) {}
};

// The statistic evaluated to NaN/Inf inside the box (model bug).
class NonFiniteStatistic : public std::runtime_error {
public:
    explicit NonFiniteStatistic(const std::string& msg) : std::runtime_error(msg) {}
};

// The outward scan hit its step cap without bracketing the threshold
// and without reaching a finite box face (flat likelihood along the ray).
class ScanLimitReached : public std::runtime_error {
public:
    explicit ScanLimitReached(const std::string& msg) : std::runtime_error(msg) {}
};

// A ray solve failed while assembling a region; message carries the
// failing direction and the underlying error.
class RayFailure : public std::runtime_error {
public:
    explicit RayFailure(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace confreg
