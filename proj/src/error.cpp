#include "adaptchain/error.hpp"

namespace adaptchain {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
  case ErrorKind::DuplicateMethodName: return "DuplicateMethodName";
  case ErrorKind::DuplicateAbstractValue: return "DuplicateAbstractValue";
  case ErrorKind::EmptyDomain: return "EmptyDomain";
  case ErrorKind::ReservedName: return "ReservedName";
  case ErrorKind::UnknownValue: return "UnknownValue";
  case ErrorKind::UnknownMethod: return "UnknownMethod";
  case ErrorKind::DuplicateInput: return "DuplicateInput";
  case ErrorKind::ArityMismatch: return "ArityMismatch";
  case ErrorKind::UnknownInterface: return "UnknownInterface";
  case ErrorKind::UnknownAdapter: return "UnknownAdapter";
  case ErrorKind::DuplicateId: return "DuplicateId";
  case ErrorKind::InterfaceMismatch: return "InterfaceMismatch";
  case ErrorKind::EndpointMismatch: return "EndpointMismatch";
  case ErrorKind::CycleDetected: return "CycleDetected";
  case ErrorKind::CapExceeded: return "CapExceeded";
  case ErrorKind::NoChain: return "NoChain";
  case ErrorKind::TooLarge: return "TooLarge";
  case ErrorKind::InvalidParams: return "InvalidParams";
  case ErrorKind::InvalidWeight: return "InvalidWeight";
  case ErrorKind::SyntaxError: return "SyntaxError";
  case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

} // namespace adaptchain
