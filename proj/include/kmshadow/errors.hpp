// SPDX-License-Identifier: Apache-2.0
//
// kmshadow - capacity statistics for kappa-mu shadowed fading with correlated
// dominant-component shadowing across MRC diversity branches.

#ifndef KMSHADOW_ERRORS_HPP
#define KMSHADOW_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace kmshadow {

// Base class for every error thrown by this library.
class Error : public std::runtime_error {
  public:
    explicit Error(const std::string &msg) : std::runtime_error(msg) {}
};

// Invalid user-supplied configuration or argument.
class ValidationError : public Error {
  public:
    explicit ValidationError(const std::string &msg) : Error(msg) {}
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
  public:
    explicit DomainError(const std::string &msg) : Error(msg) {}
};

// A result left the representable range; the message points to the
// log-domain alternative where one exists.
class OverflowError : public Error {
  public:
    explicit OverflowError(const std::string &msg) : Error(msg) {}
};

// Requested accuracy could not be reached; carries the best estimate
// and the error bound actually achieved.
class AccuracyError : public Error {
  public:
    AccuracyError(const std::string &msg, double estimate, double bound)
        : Error(msg + " (achieved estimate " + std::to_string(estimate) +
                ", error bound " + std::to_string(bound) + ")"),
          estimate(estimate), bound(bound) {}
    double estimate;
    double bound;
};

// Channel configuration whose derived eigen-spectrum is unusable.
class DegenerateConfigError : public Error {
  public:
    explicit DegenerateConfigError(const std::string &msg) : Error(msg) {}
};

// Monte Carlo sampler restriction violated (the analytic quadrature
// oracle has no such restriction).
class SamplerUnsupportedError : public Error {
  public:
    explicit SamplerUnsupportedError(const std::string &msg) : Error(msg) {}
};

} // namespace kmshadow

#endif // KMSHADOW_ERRORS_HPP
