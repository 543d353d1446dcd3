// Copyright 2026 The ssogate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ssogate/time.hpp"

#include <cstdio>

#include "ssogate/error.hpp"

namespace ssogate {

namespace {

bool all_digits(std::string_view s) {
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return !s.empty();
}

int to_int(std::string_view s) {
  int v = 0;
  for (char c : s) v = v * 10 + (c - '0');
  return v;
}

}  // namespace

Clock system_clock() {
  return [] { return std::chrono::floor<std::chrono::seconds>(std::chrono::system_clock::now()); };
}

Date::Date(int year, unsigned month, unsigned day) {
  std::chrono::year_month_day ymd{std::chrono::year{year}, std::chrono::month{month}, std::chrono::day{day}};
  if (!ymd.ok()) {
    fail(Errc::validation, "invalid-date", "invalid calendar date");
  }
  days_ = std::chrono::sys_days{ymd};
}

Date Date::parse(std::string_view iso) {
  if (iso.size() != 10 || iso[4] != '-' || iso[7] != '-' || !all_digits(iso.substr(0, 4)) ||
      !all_digits(iso.substr(5, 2)) || !all_digits(iso.substr(8, 2))) {
    fail(Errc::validation, "invalid-date", "expected a YYYY-MM-DD date, got '" + std::string(iso) + "'");
  }
  return Date(to_int(iso.substr(0, 4)), static_cast<unsigned>(to_int(iso.substr(5, 2))),
              static_cast<unsigned>(to_int(iso.substr(8, 2))));
}

Date Date::max() { return Date(9999, 12, 31); }
Date Date::min() { return Date(1, 1, 1); }

Date Date::of(Instant at, std::chrono::minutes utc_offset) {
  return Date(std::chrono::floor<std::chrono::days>(at + utc_offset));
}

std::string Date::to_string() const {
  std::chrono::year_month_day ymd{days_};
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
  return buf;
}

std::string format_instant(Instant at) {
  auto day = std::chrono::floor<std::chrono::days>(at);
  std::chrono::hh_mm_ss hms{at - day};
  char buf[32];
  std::snprintf(buf, sizeof buf, "%sT%02d:%02d:%02dZ", Date(day).to_string().c_str(),
                static_cast<int>(hms.hours().count()), static_cast<int>(hms.minutes().count()),
                static_cast<int>(hms.seconds().count()));
  return buf;
}

Instant parse_instant(std::string_view iso) {
  // YYYY-MM-DDTHH:MM:SSZ
  if (iso.size() != 20 || iso[10] != 'T' || iso[13] != ':' || iso[16] != ':' || iso[19] != 'Z' ||
      !all_digits(iso.substr(11, 2)) || !all_digits(iso.substr(14, 2)) || !all_digits(iso.substr(17, 2))) {
    fail(Errc::validation, "invalid-timestamp", "expected a YYYY-MM-DDTHH:MM:SSZ timestamp");
  }
  Date d = Date::parse(iso.substr(0, 10));
  int h = to_int(iso.substr(11, 2));
  int m = to_int(iso.substr(14, 2));
  int s = to_int(iso.substr(17, 2));
  if (h > 23 || m > 59 || s > 60) {
    fail(Errc::validation, "invalid-timestamp", "time of day out of range");
  }
  return d.start() + std::chrono::hours{h} + std::chrono::minutes{m} + std::chrono::seconds{s};
}

}  // namespace ssogate
