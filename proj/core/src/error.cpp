#include "qwalk/error.hpp"

namespace qwalk {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::EmptyStepSet: return "EmptyStepSet";
    case ErrorKind::InvalidStep: return "InvalidStep";
    case ErrorKind::PoleEncountered: return "PoleEncountered";
    case ErrorKind::DegenerateGenerators: return "DegenerateGenerators";
    case ErrorKind::TestPointExhaustion: return "TestPointExhaustion";
    case ErrorKind::ResourceLimit: return "ResourceLimit";
    case ErrorKind::RootFindingFailure: return "RootFindingFailure";
    case ErrorKind::DegenerateQuadratic: return "DegenerateQuadratic";
    case ErrorKind::GenusZeroRegime: return "GenusZeroRegime";
    case ErrorKind::SlitDegenerate: return "SlitDegenerate";
    case ErrorKind::NoPositiveSolution: return "NoPositiveSolution";
    case ErrorKind::SingularWalk: return "SingularWalk";
    case ErrorKind::ValidationMismatch: return "ValidationMismatch";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::RemovableSingularity: return "RemovableSingularity";
    case ErrorKind::PointOutsideDomain: return "PointOutsideDomain";
    case ErrorKind::CGFUnavailable: return "CGFUnavailable";
    case ErrorKind::CaseUndetermined: return "CaseUndetermined";
    case ErrorKind::RootOutsideDomain: return "RootOutsideDomain";
    case ErrorKind::InsufficientData: return "InsufficientData";
    case ErrorKind::ZeroSequence: return "ZeroSequence";
  }
  return "Unknown";
}

}  // namespace qwalk
