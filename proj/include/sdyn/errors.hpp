#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sdyn {

enum class ErrorKind {
  ZeroDenominator,
  InvalidField,
  InvalidArgument,
  ResourceLimit,
  MapUndefinedOnX,
  CompositionUndefined,
  InvalidVariety,
  InvalidMap,
  FibreUndefined,
  FibreMismatch,
  NotInH0,
  NonAffineRho,
  PresentationIncomplete,
  OrbitLeavesDomain,
  NotFound,
  SyntaxError,
  NameError,
  ArityError,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

} // namespace sdyn
