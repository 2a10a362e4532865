#include "collage/timestamp.hpp"

#include <cctype>
#include <cstdio>

#include "collage/error.hpp"

namespace collage {

using namespace std::chrono;

std::string format_rfc3339(Timestamp t) {
  const auto day = floor<days>(t);
  const year_month_day ymd{day};
  const hh_mm_ss hms{t - day};
  char buf[40];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02ld:%02ld:%02ld.%03ldZ", int(ymd.year()),
                unsigned(ymd.month()), unsigned(ymd.day()), long(hms.hours().count()),
                long(hms.minutes().count()), long(hms.seconds().count()),
                long(hms.subseconds().count()));
  return buf;
}

namespace {

[[noreturn]] void bad(std::string_view text) {
  throw Error(Errc::InvalidArgument, "malformed RFC 3339 timestamp '" + std::string(text) + "'");
}

int digits(std::string_view s, std::size_t pos, std::size_t n, std::string_view whole) {
  if (pos + n > s.size()) bad(whole);
  int v = 0;
  for (std::size_t i = pos; i < pos + n; ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) bad(whole);
    v = v * 10 + (s[i] - '0');
  }
  return v;
}

}  // namespace

Timestamp parse_rfc3339(std::string_view s) {
  if (s.size() < 20 || s[4] != '-' || s[7] != '-' || (s[10] != 'T' && s[10] != 't') ||
      s[13] != ':' || s[16] != ':')
    bad(s);
  const int y = digits(s, 0, 4, s);
  const int mo = digits(s, 5, 2, s);
  const int d = digits(s, 8, 2, s);
  const int h = digits(s, 11, 2, s);
  const int mi = digits(s, 14, 2, s);
  const int sec = digits(s, 17, 2, s);
  std::size_t pos = 19;
  long ms = 0;
  if (pos < s.size() && s[pos] == '.') {
    ++pos;
    int n = 0;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      if (n < 3) ms = ms * 10 + (s[pos] - '0');
      ++n;
      ++pos;
    }
    if (n == 0) bad(s);
    for (; n < 3; ++n) ms *= 10;
  }
  if (pos >= s.size()) bad(s);
  minutes offset{0};
  if (s[pos] == 'Z' || s[pos] == 'z') {
    ++pos;
  } else if (s[pos] == '+' || s[pos] == '-') {
    const int sign = s[pos] == '-' ? -1 : 1;
    if (pos + 6 != s.size() || s[pos + 3] != ':') bad(s);
    offset = minutes{sign * (digits(s, pos + 1, 2, s) * 60 + digits(s, pos + 4, 2, s))};
    pos += 6;
  } else {
    bad(s);
  }
  if (pos != s.size()) bad(s);
  const year_month_day ymd{year{y}, month{unsigned(mo)}, day{unsigned(d)}};
  if (!ymd.ok() || h > 23 || mi > 59 || sec > 60) bad(s);
  return sys_days{ymd} + hours{h} + minutes{mi} + seconds{sec} + milliseconds{ms} - offset;
}

Timestamp now_ms() { return time_point_cast<milliseconds>(system_clock::now()); }

}  // namespace collage
