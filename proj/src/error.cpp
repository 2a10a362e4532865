#include "collage/error.hpp"

namespace collage {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::MissingSource: return "MissingSource";
    case Errc::UnexpectedSource: return "UnexpectedSource";
    case Errc::EmptyText: return "EmptyText";
    case Errc::UnknownId: return "UnknownId";
    case Errc::NonPositiveExtent: return "NonPositiveExtent";
    case Errc::MemberInInbox: return "MemberInInbox";
    case Errc::EmptyMembers: return "EmptyMembers";
    case Errc::NoSource: return "NoSource";
    case Errc::IoFailure: return "IoFailure";
    case Errc::SchemaVersionMismatch: return "SchemaVersionMismatch";
    case Errc::ValidationFailure: return "ValidationFailure";
    case Errc::UndefinedIdf: return "UndefinedIdf";
    case Errc::UnknownSelection: return "UnknownSelection";
    case Errc::NoLabels: return "NoLabels";
    case Errc::NonMonotoneTimestamp: return "NonMonotoneTimestamp";
    case Errc::DegenerateAxis: return "DegenerateAxis";
    case Errc::TooFewSamples: return "TooFewSamples";
    case Errc::RevisionConflict: return "RevisionConflict";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::FetchFailure: return "FetchFailure";
    case Errc::Superseded: return "Superseded";
  }
  return "Unknown";
}

}  // namespace collage
