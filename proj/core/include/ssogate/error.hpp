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

#include <stdexcept>
#include <string>

namespace ssogate {

/// Broad failure category. Each maps to one CLI exit code and one HTTP status
/// family; the finer machine-readable reason travels in Error::cause().
enum class Errc {
  validation,
  not_found,
  duplicate,
  unauthorized,
  protocol,
  negotiation,
  discovery,
  network,
  crypto,
  storage,
  locked,
  config,
};

const char* to_string(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, std::string cause, const std::string& message)
      : std::runtime_error(message), code_(code), cause_(std::move(cause)) {}

  Errc code() const noexcept { return code_; }

  /// Stable kebab-case identifier such as "assignment-not-found".
  const std::string& cause() const noexcept { return cause_; }

 private:
  Errc code_;
  std::string cause_;
};

[[noreturn]] inline void fail(Errc code, std::string cause, const std::string& message) {
  throw Error(code, std::move(cause), message);
}

}  // namespace ssogate
