#pragma once

#include <stdexcept>
#include <string>

namespace plasma {

/// Error taxonomy mirrored by the CLI exit codes:
///   Config       -> 1  (bad input, unsatisfiable request, domain violations)
///   Numerical    -> 2  (divergence, singularity, loss of invertibility)
///   Verification -> 3  (a residual / defect check exceeded its tolerance)
enum class ErrorKind { Config = 1, Numerical = 2, Verification = 3 };

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(msg), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail_config(const std::string& msg) {
  throw Error(ErrorKind::Config, msg);
}
[[noreturn]] inline void fail_numerical(const std::string& msg) {
  throw Error(ErrorKind::Numerical, msg);
}
[[noreturn]] inline void fail_verification(const std::string& msg) {
  throw Error(ErrorKind::Verification, msg);
}

inline void require_config(bool ok, const std::string& msg) {
  if (!ok) fail_config(msg);
}
inline void require_numerical(bool ok, const std::string& msg) {
  if (!ok) fail_numerical(msg);
}

}  // namespace plasma
