#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace adaptchain {

enum class ErrorKind {
  DuplicateMethodName,
  DuplicateAbstractValue,
  EmptyDomain,
  ReservedName,
  UnknownValue,
  UnknownMethod,
  DuplicateInput,
  ArityMismatch,
  UnknownInterface,
  UnknownAdapter,
  DuplicateId,
  InterfaceMismatch,
  EndpointMismatch,
  CycleDetected,
  CapExceeded,
  NoChain,
  TooLarge,
  InvalidParams,
  InvalidWeight,
  SyntaxError,
  IoError,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Domain error raised by every validating operation in the library. The
/// message always names the offending entity.
class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

} // namespace adaptchain
