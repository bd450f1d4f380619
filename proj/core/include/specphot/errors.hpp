#ifndef SPECPHOT_ERRORS_HPP
#define SPECPHOT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace specphot {

// Bad arguments, malformed configs, violated preconditions.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// A request exceeds a declared resource limit (e.g. the brute-force
// simulator's bin cap).
class CapacityError : public std::runtime_error {
 public:
  explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace specphot

#endif
