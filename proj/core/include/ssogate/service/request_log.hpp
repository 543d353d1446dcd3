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

#include <functional>
#include <string>

namespace httplib {
class Server;
}

namespace ssogate::service {

/// One line per request: JSON with time, method, path (no query), status.
using RequestLogSink = std::function<void(const std::string& line)>;

RequestLogSink stderr_request_log();
void install_request_log(httplib::Server& server, RequestLogSink sink);

}  // namespace ssogate::service
