#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qwalk {

enum class ErrorKind {
  EmptyStepSet,
  InvalidStep,
  PoleEncountered,
  DegenerateGenerators,
  TestPointExhaustion,
  ResourceLimit,
  RootFindingFailure,
  DegenerateQuadratic,
  GenusZeroRegime,
  SlitDegenerate,
  NoPositiveSolution,
  SingularWalk,
  ValidationMismatch,
  DivisionByZero,
  OutOfRange,
  RemovableSingularity,
  PointOutsideDomain,
  CGFUnavailable,
  CaseUndetermined,
  RootOutsideDomain,
  InsufficientData,
  ZeroSequence,
};

/// Stable identifier used in structured error output, e.g. "PoleEncountered".
std::string_view to_string(ErrorKind kind) noexcept;

/// The single exception type thrown by the library. Callers switch on kind().
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace qwalk
