#pragma once

#include <stdexcept>
#include <string>

namespace ivg {

/// Invalid model or grid parameters, violated preconditions, exceeded caps.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Enumeration would exceed the configured vertex cap.
class SizeError : public DomainError {
 public:
  using DomainError::DomainError;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ivg
