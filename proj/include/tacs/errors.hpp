#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tacs {

// Base class for all errors raised by the workbench libraries.
struct TacsError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An action/variable name does not match [a-z][a-zA-Z0-9_]* or is reserved.
struct InvalidName : TacsError {
  explicit InvalidName(const std::string& what) : TacsError(what) {}
};

// complement() was applied to the silent action.
struct TauComplement : TacsError {
  TauComplement() : TacsError("the silent action has no complement") {}
};

// substitute() was asked to plug an open term into a variable.
struct SubstituteOpenTerm : TacsError {
  SubstituteOpenTerm() : TacsError("substitution of an open term is not supported") {}
};

// State exploration discovered more states than the caller allowed.
struct StateLimitExceeded : TacsError {
  explicit StateLimitExceeded(std::size_t limit)
      : TacsError("state limit of " + std::to_string(limit) + " exceeded"), limit(limit) {}
  std::size_t limit;
};

// An upward closure kept growing past the configured bound.
struct ClosureLimitExceeded : TacsError {
  explicit ClosureLimitExceeded(std::size_t limit)
      : TacsError("closure limit of " + std::to_string(limit) + " exceeded"), limit(limit) {}
  std::size_t limit;
};

// An indexed check ran with an automatic credit cap that was not stable:
// raising the cap by one changed the verdict.
struct CapUnstable : TacsError {
  explicit CapUnstable(std::size_t cap)
      : TacsError("automatic credit cap " + std::to_string(cap) + " is not stable"), cap(cap) {}
  std::size_t cap;
};

// An indexed check would need more (pair, credit) configurations than allowed.
struct ConfigLimitExceeded : TacsError {
  explicit ConfigLimitExceeded(std::size_t limit)
      : TacsError("configuration limit of " + std::to_string(limit) + " exceeded"), limit(limit) {}
  std::size_t limit;
};

struct UnknownSuite : TacsError {
  explicit UnknownSuite(const std::string& name) : TacsError("unknown suite: " + name) {}
};

struct UnknownExample : TacsError {
  explicit UnknownExample(const std::string& id) : TacsError("unknown example: " + id) {}
};

// A JSON document does not encode a valid term.
struct JsonFormatError : TacsError {
  explicit JsonFormatError(const std::string& what) : TacsError(what) {}
};

}  // namespace tacs
