#ifndef GATLAS_ERROR_HPP
#define GATLAS_ERROR_HPP

#include <stdexcept>
#include <string>

namespace gatlas {

/// Raised when an input violates a precondition or a structural invariant.
class ValidationError : public std::runtime_error
{
public:
  explicit ValidationError(const std::string &what)
  : std::runtime_error(what)
  {}
};

/// Raised when an enumeration runs past its configured bound.
class BoundExceeded : public std::runtime_error
{
public:
  explicit BoundExceeded(const std::string &what)
  : std::runtime_error(what)
  {}
};

} // namespace gatlas

#endif
