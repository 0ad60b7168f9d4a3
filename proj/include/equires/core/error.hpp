#pragma once

#include <stdexcept>
#include <string>

namespace equires {

enum class ErrorKind {
  invalid_argument,
  unsupported_group,
  group_mismatch,
  non_integral,
  inconsistent_action,
  non_flat,
  not_chain_map,
  not_upward_closed,
  not_short_exact,
  not_cocycle,
  out_of_scope,
  localization_obstruction,
  invalid_space,
  parse,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_argument: return "invalid argument";
    case ErrorKind::unsupported_group: return "unsupported group";
    case ErrorKind::group_mismatch: return "group mismatch";
    case ErrorKind::non_integral: return "non-integral decomposition";
    case ErrorKind::inconsistent_action: return "inconsistent action";
    case ErrorKind::non_flat: return "non-flat local system";
    case ErrorKind::not_chain_map: return "not a chain map";
    case ErrorKind::not_upward_closed: return "relative set not upward closed";
    case ErrorKind::not_short_exact: return "not a short exact sequence";
    case ErrorKind::not_cocycle: return "not a cocycle";
    case ErrorKind::out_of_scope: return "out of scope";
    case ErrorKind::localization_obstruction: return "localization obstruction";
    case ErrorKind::invalid_space: return "invalid space";
    case ErrorKind::parse: return "parse error";
  }
  return "error";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace equires
