#include "sdyn/errors.hpp"

namespace sdyn {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ZeroDenominator: return "ZeroDenominator";
    case ErrorKind::InvalidField: return "InvalidField";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ResourceLimit: return "ResourceLimit";
    case ErrorKind::MapUndefinedOnX: return "MapUndefinedOnX";
    case ErrorKind::CompositionUndefined: return "CompositionUndefined";
    case ErrorKind::InvalidVariety: return "InvalidVariety";
    case ErrorKind::InvalidMap: return "InvalidMap";
    case ErrorKind::FibreUndefined: return "FibreUndefined";
    case ErrorKind::FibreMismatch: return "FibreMismatch";
    case ErrorKind::NotInH0: return "NotInH0";
    case ErrorKind::NonAffineRho: return "NonAffineRho";
    case ErrorKind::PresentationIncomplete: return "PresentationIncomplete";
    case ErrorKind::OrbitLeavesDomain: return "OrbitLeavesDomain";
    case ErrorKind::NotFound: return "NotFound";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::NameError: return "NameError";
    case ErrorKind::ArityError: return "ArityError";
  }
  return "Unknown";
}

} // namespace sdyn
