#include "shapecat/error.hpp"

namespace shapecat {

const char* err_name(Err code) {
  switch (code) {
    case Err::FileNotFound: return "FileNotFound";
    case Err::UnsupportedFormat: return "UnsupportedFormat";
    case Err::CorruptImage: return "CorruptImage";
    case Err::ZeroDimension: return "ZeroDimension";
    case Err::EmptyDataset: return "EmptyDataset";
    case Err::AmbiguousLayout: return "AmbiguousLayout";
    case Err::DegenerateSpec: return "DegenerateSpec";
    case Err::OutOfRange: return "OutOfRange";
    case Err::EmptyVector: return "EmptyVector";
    case Err::MixedNormalization: return "MixedNormalization";
    case Err::WrongDimensions: return "WrongDimensions";
    case Err::LengthMismatch: return "LengthMismatch";
    case Err::EmptyInput: return "EmptyInput";
    case Err::EmptyCounts: return "EmptyCounts";
    case Err::DimensionMismatch: return "DimensionMismatch";
    case Err::KTooLarge: return "KTooLarge";
    case Err::SingleClass: return "SingleClass";
    case Err::TooFewSamples: return "TooFewSamples";
    case Err::ZeroUnits: return "ZeroUnits";
    case Err::EmptyBatch: return "EmptyBatch";
    case Err::TooLarge: return "TooLarge";
    case Err::IoError: return "IoError";
    case Err::InvalidArgument: return "InvalidArgument";
  }
  return "UnknownError";
}

}  // namespace shapecat
