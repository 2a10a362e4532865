#pragma once

#include <chrono>
#include <string>
#include <string_view>

namespace collage {

using Timestamp = std::chrono::sys_time<std::chrono::milliseconds>;

/// RFC 3339 in UTC with millisecond precision, e.g. 2024-03-01T09:30:00.250Z.
std::string format_rfc3339(Timestamp t);

/// Accepts `Z` or a numeric offset and up to nanosecond fractions (truncated to ms).
/// Throws Error(InvalidArgument) on malformed input.
Timestamp parse_rfc3339(std::string_view text);

Timestamp now_ms();

}  // namespace collage
