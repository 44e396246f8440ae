#ifndef WFST_ERROR_HPP_
#define WFST_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace wfst {

enum class ErrorCode {
  kUnknownState,
  kZeroWeight,
  kInvalidWeight,
  kNotRegulated,
  kSemiringMismatch,
  kEpsilonInput,
  kCyclicInput,
  kInvalidArgument,
  kParse,
  kFrozen,
};

// Single exception type for all library failures; the code tells callers
// (notably the CLI) how to classify the failure.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace wfst

#endif  // WFST_ERROR_HPP_
