#ifndef POLYDISC_ERRORS_HPP
#define POLYDISC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace polydisc {

// Malformed or inconsistent input: bad coefficients, dimension mismatch,
// unparseable JSON, points outside their domain.
struct InputError : std::runtime_error {
  explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

// An operation was asked of a map of the wrong dynamical kind
// (e.g. a linearizer of a non-hyperbolic automorphism).
struct KindError : std::runtime_error {
  explicit KindError(const std::string& msg) : std::runtime_error(msg) {}
};

// A supposedly domain-preserving map produced a value outside the domain.
struct DomainViolation : std::runtime_error {
  explicit DomainViolation(const std::string& msg) : std::runtime_error(msg) {}
};

// An orbit coordinate left the representable numeric range.
struct OrbitOverflow : std::runtime_error {
  explicit OrbitOverflow(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace polydisc

#endif
