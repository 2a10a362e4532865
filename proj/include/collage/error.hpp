#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace collage {

enum class Errc {
  MissingSource,
  UnexpectedSource,
  EmptyText,
  UnknownId,
  NonPositiveExtent,
  MemberInInbox,
  EmptyMembers,
  NoSource,
  IoFailure,
  SchemaVersionMismatch,
  ValidationFailure,
  UndefinedIdf,
  UnknownSelection,
  NoLabels,
  NonMonotoneTimestamp,
  DegenerateAxis,
  TooFewSamples,
  RevisionConflict,
  InvalidArgument,
  FetchFailure,
  Superseded,
};

std::string_view to_string(Errc code) noexcept;

/// Every engine failure carries one of the Errc codes above; the HTTP layer
/// maps codes to status codes.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace collage
