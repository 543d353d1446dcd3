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

#include "ssogate/error.hpp"

namespace ssogate {

const char* to_string(Errc code) noexcept {
  switch (code) {
    case Errc::validation: return "validation";
    case Errc::not_found: return "not-found";
    case Errc::duplicate: return "duplicate";
    case Errc::unauthorized: return "unauthorized";
    case Errc::protocol: return "protocol";
    case Errc::negotiation: return "negotiation";
    case Errc::discovery: return "discovery";
    case Errc::network: return "network";
    case Errc::crypto: return "crypto";
    case Errc::storage: return "storage";
    case Errc::locked: return "locked";
    case Errc::config: return "config";
  }
  return "unknown";
}

}  // namespace ssogate
