#pragma once

#include <stdexcept>
#include <string>

namespace braidmod {

enum class Err {
  MalformedToken,
  ZeroLetter,
  GeneratorOutOfRange,
  StrandMismatch,
  BadStrandCount,
  KeepNotInvariant,
  EmptyKeepSet,
  StrandsNotFixed,
  NotThreeStrands,
  NotParabolic,
  NotUnimodular,
  LengthBoundExceeded,
  InternalInconsistency,
  UnsupportedStrandCount,
  InvalidTree,
  BadCycleLength,
  UnsupportedNodeArity,
  NotPrime,
  DegreeTooSmall,
  InsufficientSampling,
  DiscriminantVanishes,
  DegenerateSurface,
};

inline const char* err_name(Err e) {
  switch (e) {
    case Err::MalformedToken: return "MalformedToken";
    case Err::ZeroLetter: return "ZeroLetter";
    case Err::GeneratorOutOfRange: return "GeneratorOutOfRange";
    case Err::StrandMismatch: return "StrandMismatch";
    case Err::BadStrandCount: return "BadStrandCount";
    case Err::KeepNotInvariant: return "KeepNotInvariant";
    case Err::EmptyKeepSet: return "EmptyKeepSet";
    case Err::StrandsNotFixed: return "StrandsNotFixed";
    case Err::NotThreeStrands: return "NotThreeStrands";
    case Err::NotParabolic: return "NotParabolic";
    case Err::NotUnimodular: return "NotUnimodular";
    case Err::LengthBoundExceeded: return "LengthBoundExceeded";
    case Err::InternalInconsistency: return "InternalInconsistency";
    case Err::UnsupportedStrandCount: return "UnsupportedStrandCount";
    case Err::InvalidTree: return "InvalidTree";
    case Err::BadCycleLength: return "BadCycleLength";
    case Err::UnsupportedNodeArity: return "UnsupportedNodeArity";
    case Err::NotPrime: return "NotPrime";
    case Err::DegreeTooSmall: return "DegreeTooSmall";
    case Err::InsufficientSampling: return "InsufficientSampling";
    case Err::DiscriminantVanishes: return "DiscriminantVanishes";
    case Err::DegenerateSurface: return "DegenerateSurface";
  }
  return "UnknownError";
}

// Domain error. what() is a single machine-parsable line: "<Name>: <detail>".
class Error : public std::runtime_error {
 public:
  Error(Err code, const std::string& detail)
      : std::runtime_error(std::string(err_name(code)) + ": " + detail), code_(code) {}

  Err code() const { return code_; }

 private:
  Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& detail) { throw Error(code, detail); }

}  // namespace braidmod
