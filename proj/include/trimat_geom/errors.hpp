#pragma once

#include <stdexcept>
#include <string>

namespace trimat_geom {

enum class ErrorKind {
  NotPrimePower,
  OrderTooLarge,
  DimensionMismatch,
  DimensionUnsupported,
  ContextMismatch,
  SelectorInvalid,
  SubsetInvalid,
  NotAnAffinePlane,
  OrderTooLargeForSearch,
  EnumerationTooLarge,
  IoError,
  BadInput,
};

struct Error : std::runtime_error {
  ErrorKind kind;
  Error(ErrorKind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
};

inline const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::NotPrimePower: return "NotPrimePower";
    case ErrorKind::OrderTooLarge: return "OrderTooLarge";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::DimensionUnsupported: return "DimensionUnsupported";
    case ErrorKind::ContextMismatch: return "ContextMismatch";
    case ErrorKind::SelectorInvalid: return "SelectorInvalid";
    case ErrorKind::SubsetInvalid: return "SubsetInvalid";
    case ErrorKind::NotAnAffinePlane: return "NotAnAffinePlane";
    case ErrorKind::OrderTooLargeForSearch: return "OrderTooLargeForSearch";
    case ErrorKind::EnumerationTooLarge: return "EnumerationTooLarge";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::BadInput: return "BadInput";
  }
  return "Unknown";
}

}  // namespace trimat_geom
