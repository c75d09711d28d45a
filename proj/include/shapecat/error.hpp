#pragma once

#include <stdexcept>
#include <string>

namespace shapecat {

enum class Err {
  FileNotFound,
  UnsupportedFormat,
  CorruptImage,
  ZeroDimension,
  EmptyDataset,
  AmbiguousLayout,
  DegenerateSpec,
  OutOfRange,
  EmptyVector,
  MixedNormalization,
  WrongDimensions,
  LengthMismatch,
  EmptyInput,
  EmptyCounts,
  DimensionMismatch,
  KTooLarge,
  SingleClass,
  TooFewSamples,
  ZeroUnits,
  EmptyBatch,
  TooLarge,
  IoError,
  InvalidArgument,
};

const char* err_name(Err code);

class Error : public std::runtime_error {
 public:
  Error(Err code, const std::string& message)
      : std::runtime_error(std::string(err_name(code)) + ": " + message), code_(code) {}

  Err code() const noexcept { return code_; }

 private:
  Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace shapecat
