#pragma once

#include <stdexcept>
#include <string>

namespace lpns2d {

// Error taxonomy used across the library. The CLI maps these onto exit codes:
// validation -> 2, numerical (contraction/CFL) -> 3, I/O -> 4.
struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ConfigurationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct IndexError : std::out_of_range {
    using std::out_of_range::out_of_range;
};

struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

struct StateError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct AlignmentError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct GeometryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Advection/time-stepping instability. Carries a suggested step size.
struct StabilityError : std::runtime_error {
    double advisory_dt;
    StabilityError(const std::string& what, double dt_hint)
        : std::runtime_error(what), advisory_dt(dt_hint) {}
};

// Fixed-point pressure iteration failed to contract. Carries the measured
// sup-norm of the density fluctuation that broke the smallness margin.
struct ContractionError : std::runtime_error {
    double a_sup_norm;
    ContractionError(const std::string& what, double a_sup)
        : std::runtime_error(what), a_sup_norm(a_sup) {}
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace lpns2d
