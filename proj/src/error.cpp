#include "qdisp/error.hpp"

namespace qdisp {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::DegenerateInput: return "DegenerateInput";
    case ErrorKind::OffShell: return "OffShell";
    case ErrorKind::SingularMatrix: return "SingularMatrix";
    case ErrorKind::GridTooCoarse: return "GridTooCoarse";
    case ErrorKind::NotNormalized: return "NotNormalized";
    case ErrorKind::AliasRisk: return "AliasRisk";
    case ErrorKind::TooFewSamples: return "TooFewSamples";
    case ErrorKind::NormalizationFailure: return "NormalizationFailure";
    case ErrorKind::DegenerateState: return "DegenerateState";
  }
  return "Unknown";
}

}  // namespace qdisp
