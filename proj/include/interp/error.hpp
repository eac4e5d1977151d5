#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

namespace interp {

enum class ErrorCode {
  InvalidArgument = 1,
  OutOfRange = 2,
  EmptySet = 3,
  Domain = 4,
  Precondition = 5,
  Io = 6,
  ConstructionFailed = 7,
  Internal = 8,
};

const char* to_string(ErrorCode code);

/// Base exception for the library. The C API maps `code()` onto its status
/// values; `details()` carries structured context (e.g. a blocking
/// certificate) and is empty for plain argument errors.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what, nlohmann::json details = {})
      : std::runtime_error(what), code_(code), details_(std::move(details)) {}

  ErrorCode code() const noexcept { return code_; }
  const nlohmann::json& details() const noexcept { return details_; }

 private:
  ErrorCode code_;
  nlohmann::json details_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what,
                              nlohmann::json details = {}) {
  throw Error(code, what, std::move(details));
}

}  // namespace interp
