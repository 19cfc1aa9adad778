#ifndef PLASTCONE_ERRORS_HPP
#define PLASTCONE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace plastcone {

/// Bad input: malformed scenario, out-of-range modulus, stress outside the
/// domain handed to an operation that requires membership, and so on.
/// The CLI maps this to exit code 1.
class ValidationError : public std::runtime_error {
public:
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Numerical breakdown at run time: iteration limits, drift beyond the hard
/// limit mid-integration. The CLI maps this to exit code 2.
class NumericalError : public std::runtime_error {
public:
  explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Gradient requested where the function is not differentiable
/// (Tresca at a repeated eigenvalue).
class NonDifferentiableError : public ValidationError {
public:
  explicit NonDifferentiableError(const std::string& msg) : ValidationError(msg) {}
};

} // namespace plastcone

#endif
