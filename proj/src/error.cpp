#include "nlsmooth/error.hpp"

namespace nlsmooth {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::OrderExceeded: return "OrderExceeded";
    case ErrorKind::SingularPoint: return "SingularPoint";
    case ErrorKind::UnboundedLimit: return "UnboundedLimit";
    case ErrorKind::UnsupportedOrder: return "UnsupportedOrder";
    case ErrorKind::QuadratureNonConvergence: return "QuadratureNonConvergence";
    case ErrorKind::LevelExceedsKernelSmoothness: return "LevelExceedsKernelSmoothness";
    case ErrorKind::SingularJump: return "SingularJump";
    case ErrorKind::KrylovStall: return "KrylovStall";
    case ErrorKind::SingularSystem: return "SingularSystem";
    case ErrorKind::NearZeroMultiplier: return "NearZeroMultiplier";
    case ErrorKind::InsufficientStencil: return "InsufficientStencil";
    case ErrorKind::UnknownFixture: return "UnknownFixture";
    case ErrorKind::NotSerializable: return "NotSerializable";
  }
  return "Unknown";
}

bool is_numerical(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::QuadratureNonConvergence:
    case ErrorKind::SingularJump:
    case ErrorKind::KrylovStall:
    case ErrorKind::SingularSystem:
    case ErrorKind::NearZeroMultiplier:
    case ErrorKind::UnboundedLimit:
    case ErrorKind::SingularPoint:
      return true;
    default:
      return false;
  }
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace nlsmooth
