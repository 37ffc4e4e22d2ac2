#pragma once

#include <stdexcept>
#include <string>

namespace admflux {

enum class ErrorKind {
  invalid_argument,
  domain,            // point or surface outside the field's domain
  singular_metric,   // g not positive definite or badly conditioned
  undefined_center,  // |mass| below the center threshold
  quadrature,        // adaptive order refinement did not settle
  config,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace admflux
