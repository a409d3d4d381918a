#pragma once

#include <stdexcept>
#include <string>

namespace ftsclust {

// Base for everything thrown by this library. The CLI maps these to exit
// code 1; anything else escaping is a bug.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Shape mismatches: ragged input, grid/series length disagreement, lag >= T.
class DimensionError : public Error {
public:
    using Error::Error;
};

// Parameter out of its admissible range (tau outside (0,1), m <= 1, C < 2, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

// Text input that could not be parsed; message carries file/row/column.
class ParseError : public Error {
public:
    using Error::Error;
};

// A quantile-threshold indicator series is constant, so its autocorrelation
// is undefined. Carries the offending (tau, beta, lag) triple.
class DegenerateMarginal : public Error {
public:
    DegenerateMarginal(double tau, double beta, int lag, const std::string& msg)
        : Error(msg), tau(tau), beta(beta), lag(lag) {}
    double tau;
    double beta;
    int lag;
};

// Sample variance (or an equivalent normalizer) vanished where a ratio needs it.
class DegenerateVariance : public Error {
public:
    using Error::Error;
};

// Cluster prototypes coincide, so a separation index would divide by zero.
class DegenerateSeparation : public Error {
public:
    using Error::Error;
};

// An iteration hit its cap without meeting its tolerance.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

// A simulated recursion left its numerically safe region.
class StabilityError : public Error {
public:
    using Error::Error;
};

}  // namespace ftsclust
