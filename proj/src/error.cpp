#include "apnforge/error.hpp"

namespace apnforge {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::UnsupportedDegree: return "UnsupportedDegree";
    case ErrorKind::ReducibleModulus: return "ReducibleModulus";
    case ErrorKind::FieldMismatch: return "FieldMismatch";
    case ErrorKind::ZeroInverse: return "ZeroInverse";
    case ErrorKind::OddDegree: return "OddDegree";
    case ErrorKind::ZeroDirection: return "ZeroDirection";
    case ErrorKind::BadParams: return "BadParams";
    case ErrorKind::NoApnRepresentative: return "NoApnRepresentative";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::SizeMismatch: return "SizeMismatch";
    case ErrorKind::CapTooLarge: return "CapTooLarge";
    case ErrorKind::NotSupercode: return "NotSupercode";
    case ErrorKind::TooBig: return "TooBig";
    case ErrorKind::NoWitness: return "NoWitness";
    case ErrorKind::ZeroScalar: return "ZeroScalar";
    case ErrorKind::TooLong: return "TooLong";
    case ErrorKind::Timeout: return "Timeout";
    case ErrorKind::DegreeTooLarge: return "DegreeTooLarge";
    case ErrorKind::GroupTooLarge: return "GroupTooLarge";
    case ErrorKind::NotSubgroup: return "NotSubgroup";
    case ErrorKind::DeltaRequiresS1: return "DeltaRequiresS1";
    case ErrorKind::Parse: return "Parse";
  }
  return "Unknown";
}

}  // namespace apnforge
