#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hu {

enum class Errc {
  // structural invariant violations
  NotAssociative,
  NoIdentityAtZero,
  NotInvertible,
  NotAnAction,
  NotHomomorphism,
  NotIsometric,
  IdentityNotIdentity,
  // shape / configuration problems
  SizeLimitExceeded,
  DimensionMismatch,
  DomainMismatch,
  KindMismatch,
  WindowTooSmall,
  InconsistentSpec,
  UnknownSpec,
  // malformed input
  Parse,
  NonFinite,
};

std::string_view errc_name(Errc code) noexcept;

/// Structural violations (the group/action/module axioms) map to CLI exit 2,
/// configuration problems to exit 4, and malformed input to exit 1.
enum class ErrorClass { Structural, Configuration, Input };

ErrorClass error_class(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace hu
