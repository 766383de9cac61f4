#include "hu/error.hpp"

namespace hu {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::NotAssociative: return "NotAssociative";
    case Errc::NoIdentityAtZero: return "NoIdentityAtZero";
    case Errc::NotInvertible: return "NotInvertible";
    case Errc::NotAnAction: return "NotAnAction";
    case Errc::NotHomomorphism: return "NotHomomorphism";
    case Errc::NotIsometric: return "NotIsometric";
    case Errc::IdentityNotIdentity: return "IdentityNotIdentity";
    case Errc::SizeLimitExceeded: return "SizeLimitExceeded";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::DomainMismatch: return "DomainMismatch";
    case Errc::KindMismatch: return "KindMismatch";
    case Errc::WindowTooSmall: return "WindowTooSmall";
    case Errc::InconsistentSpec: return "InconsistentSpec";
    case Errc::UnknownSpec: return "UnknownSpec";
    case Errc::Parse: return "Parse";
    case Errc::NonFinite: return "NonFinite";
  }
  return "Unknown";
}

ErrorClass error_class(Errc code) noexcept {
  switch (code) {
    case Errc::NotAssociative:
    case Errc::NoIdentityAtZero:
    case Errc::NotInvertible:
    case Errc::NotAnAction:
    case Errc::NotHomomorphism:
    case Errc::NotIsometric:
    case Errc::IdentityNotIdentity:
      return ErrorClass::Structural;
    case Errc::SizeLimitExceeded:
    case Errc::KindMismatch:
    case Errc::WindowTooSmall:
    case Errc::InconsistentSpec:
      return ErrorClass::Configuration;
    case Errc::UnknownSpec:
    case Errc::DimensionMismatch:
    case Errc::DomainMismatch:
    case Errc::Parse:
    case Errc::NonFinite:
      return ErrorClass::Input;
  }
  return ErrorClass::Input;
}

}  // namespace hu
