#include "lqg/error.hpp"

namespace lqg {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NotAPoset: return "NotAPoset";
    case ErrorKind::NotALattice: return "NotALattice";
    case ErrorKind::NoTopOrBottom: return "NoTopOrBottom";
    case ErrorKind::LatticeMismatch: return "LatticeMismatch";
    case ErrorKind::UnknownElement: return "UnknownElement";
    case ErrorKind::UnknownOperation: return "UnknownOperation";
    case ErrorKind::ArityMismatch: return "ArityMismatch";
    case ErrorKind::NotBinary: return "NotBinary";
    case ErrorKind::NotASubuniverse: return "NotASubuniverse";
    case ErrorKind::NotACongruence: return "NotACongruence";
    case ErrorKind::InvalidTable: return "InvalidTable";
    case ErrorKind::InvalidEquality: return "InvalidEquality";
    case ErrorKind::ConstantlyBottom: return "ConstantlyBottom";
    case ErrorKind::NoSolution: return "NoSolution";
    case ErrorKind::NotUnique: return "NotUnique";
    case ErrorKind::NotAnLQuasigroup: return "NotAnLQuasigroup";
    case ErrorKind::QEViolation: return "QEViolation";
    case ErrorKind::PreconditionFailed: return "PreconditionFailed";
    case ErrorKind::NotApplicable: return "NotApplicable";
    case ErrorKind::InternalDisagreement: return "InternalDisagreement";
    case ErrorKind::InternalInvariant: return "InternalInvariant";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UnknownName: return "UnknownName";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::DuplicateName: return "DuplicateName";
  }
  return "Unknown";
}

}  // namespace lqg
