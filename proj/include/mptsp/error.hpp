#ifndef MPTSP_ERROR_HPP
#define MPTSP_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace mptsp {

enum class ErrorCode {
  kMalformedJson,
  kIndexOutOfRange,
  kSelfLoop,
  kDuplicateEdge,
  kDuplicateCommodity,
  kDisconnected,
  kInvalidOrder,
  kIterationLimit,
  kLpInfeasible,
  kResidualNotDecomposable,
  kOddCardinality,
  kParityViolation,
  kDisconnectedUnion,
  kInstanceTooLarge,
  kGenerationFailed,
  kInvalidArgument,
};

std::string_view error_code_name(ErrorCode code);

// True for errors caused by bad user input rather than a broken invariant.
bool is_input_error(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace mptsp

#endif  // MPTSP_ERROR_HPP
