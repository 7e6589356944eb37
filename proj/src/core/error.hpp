// Copyright 2026 The relbelief Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace relbelief {

enum class ErrorCode {
  InvalidArgument,
  Validation,
  ZeroEvidence,
  UnknownPsi,
  InfiniteSampleSpace,
  NonStochasticKernel,
  QuadratureFailure,
  ZeroBinMass,
  HypothesisViolated,
  TooLargeForBruteForce,
  SingularDesign,
  NotAttainable,
  TablesMismatch,
  Io,
};

const char* error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace relbelief
