#pragma once

#include <stdexcept>
#include <string>

namespace spinphase {

enum class ErrorCode {
  InvalidArgument,
  NotHermitian,
  NotPsd,
  DimMismatch,
  GpUndefined,     // phase factor magnitude below threshold
  Incommensurate,  // no rational relation between level splittings
  NoDrive,         // B = 0 leaves no finite cyclic period
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace spinphase
