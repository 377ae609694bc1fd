#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace radcurv {

// every failure the library can raise, so callers (and the CLI exit-code
// mapping) can branch on kind instead of parsing messages
enum class ErrorKind {
  syntax,
  unknown_identifier,
  out_of_domain,
  bad_parameter,
  empty_domain,
  solver_failure,
  quadrature_failure,
  no_root,
  hypothesis_unmet,
  ladder_too_short,
  eigensolve_failure,
  optimizer_stalled,
  not_integrable,
  time_too_small,
  step_rejected,
  config_error,
  io_error,
};

const char* error_kind_name(ErrorKind k);

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + msg),
        kind_(kind) {}
  ErrorKind kind() const { return kind_; }

private:
  ErrorKind kind_;
};

// parse failure with a byte offset into the offending source string
class SyntaxError : public Error {
public:
  SyntaxError(std::size_t offset, const std::string& msg)
      : Error(ErrorKind::syntax, msg + " (offset " + std::to_string(offset) + ")"),
        offset_(offset) {}
  std::size_t offset() const { return offset_; }

private:
  std::size_t offset_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& msg) {
  throw Error(kind, msg);
}

}  // namespace radcurv
