#pragma once

#include <stdexcept>
#include <string>

namespace tricat {

// Failure kinds surfaced by the engine.  Every throwing operation documents
// which kinds it can raise; everything else indicates a bug (Internal).
enum class ErrKind {
  EndpointMismatch,   // composition/arrow endpoints do not line up
  MissingCone,        // no distinguished triangle on the morphism is available
  InfiniteGroup,      // a computation requires a finite group but got free rank
  CompositeNonzero,   // homology requested at a non-complex position
  SquareNotCommuting, // fill-in requested for a non-commuting square
  NoFillIn,           // no morphism completes the triangle morphism
  NoFactorization,    // required factorisation does not exist
  MissingBiproduct,   // presentation lacks a needed biproduct witness
  NotLocal,           // functor expected to be local is not
  ParseError,         // malformed input document
  ValidationError,    // presentation fails validation
  Internal,           // invariant violation inside the engine
};

inline const char* err_kind_name(ErrKind k) {
  switch (k) {
    case ErrKind::EndpointMismatch: return "EndpointMismatch";
    case ErrKind::MissingCone: return "MissingCone";
    case ErrKind::InfiniteGroup: return "InfiniteGroup";
    case ErrKind::CompositeNonzero: return "CompositeNonzero";
    case ErrKind::SquareNotCommuting: return "SquareNotCommuting";
    case ErrKind::NoFillIn: return "NoFillIn";
    case ErrKind::NoFactorization: return "NoFactorization";
    case ErrKind::MissingBiproduct: return "MissingBiproduct";
    case ErrKind::NotLocal: return "NotLocal";
    case ErrKind::ParseError: return "ParseError";
    case ErrKind::ValidationError: return "ValidationError";
    case ErrKind::Internal: return "Internal";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrKind kind, const std::string& what)
      : std::runtime_error(std::string(err_kind_name(kind)) + ": " + what),
        kind_(kind) {}
  ErrKind kind() const { return kind_; }

 private:
  ErrKind kind_;
};

[[noreturn]] inline void fail(ErrKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace tricat
