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

#pragma once

#include <chrono>
#include <compare>
#include <functional>
#include <string>
#include <string_view>

namespace ssogate {

/// Seconds-resolution point on the UTC timeline.
using Instant = std::chrono::sys_seconds;

/// Source of the current instant. Injected everywhere time matters so tests can pin it.
using Clock = std::function<Instant()>;

Clock system_clock();

/// Calendar date at day granularity. Validity windows compare dates, never instants.
class Date {
 public:
  constexpr Date() = default;
  constexpr explicit Date(std::chrono::sys_days days) : days_(days) {}
  Date(int year, unsigned month, unsigned day);

  /// Strict "YYYY-MM-DD". Throws Error(validation) on anything else.
  static Date parse(std::string_view iso);

  static Date max();
  static Date min();

  /// Civil date of `at` in a zone `utc_offset` away from UTC.
  static Date of(Instant at, std::chrono::minutes utc_offset = std::chrono::minutes{0});

  std::string to_string() const;
  constexpr std::chrono::sys_days days() const { return days_; }
  Date plus_days(int n) const { return Date(days_ + std::chrono::days{n}); }

  /// Midnight at the start of this date, UTC.
  Instant start() const { return Instant(days_); }

  friend constexpr auto operator<=>(const Date&, const Date&) = default;

 private:
  std::chrono::sys_days days_{};
};

/// "2009-07-04T10:00:00Z".
std::string format_instant(Instant at);
Instant parse_instant(std::string_view iso);

}  // namespace ssogate
