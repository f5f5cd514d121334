#pragma once

#include <stdexcept>
#include <string>

namespace nlsmooth {

enum class ErrorKind {
  InvalidArgument,
  Parse,
  OrderExceeded,
  SingularPoint,
  UnboundedLimit,
  UnsupportedOrder,
  QuadratureNonConvergence,
  LevelExceedsKernelSmoothness,
  SingularJump,
  KrylovStall,
  SingularSystem,
  NearZeroMultiplier,
  InsufficientStencil,
  UnknownFixture,
  NotSerializable,
};

const char* to_string(ErrorKind kind);

// True for failures of the numerics (as opposed to bad input).
bool is_numerical(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

inline void require(bool cond, ErrorKind kind, const std::string& what) {
  if (!cond) fail(kind, what);
}

}  // namespace nlsmooth
