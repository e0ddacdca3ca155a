#pragma once

#include <stdexcept>
#include <string>

namespace ssq {

inline constexpr const char* kVersion = "0.1.0";

/// Thrown when a quadrature, root finder, or factorization cannot reach its
/// accuracy target. Carries the achieved error estimate in the message.
class numerical_error : public std::runtime_error {
 public:
  explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ssq
