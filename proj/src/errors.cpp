#include "admflux/errors.hpp"

namespace admflux {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_argument:
      return "invalid argument";
    case ErrorKind::domain:
      return "domain error";
    case ErrorKind::singular_metric:
      return "singular metric";
    case ErrorKind::undefined_center:
      return "undefined center";
    case ErrorKind::quadrature:
      return "quadrature non-convergence";
    case ErrorKind::config:
      return "config error";
  }
  return "error";
}

}  // namespace admflux
