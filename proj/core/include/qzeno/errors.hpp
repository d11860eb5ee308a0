#pragma once

#include <stdexcept>
#include <string>

namespace qzeno {

// Bad arguments or a violated precondition.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

// A requested object would exceed the configured dimension cap.
class SizingError : public std::length_error {
 public:
  explicit SizingError(const std::string& what) : std::length_error(what) {}
};

// Numerical machinery failed: eigensolver stall, normalization drift.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qzeno
