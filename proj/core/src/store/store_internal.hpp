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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ssogate/store/store.hpp"

namespace ssogate::store {

// Versioned record map shared by the memory and file stores. Not synchronized.
class RecordTable {
 public:
  StoreRecord put(RecordKind kind, std::string_view key, std::string_view payload);
  void restore(StoreRecord record);
  std::optional<StoreRecord> get(RecordKind kind, std::string_view key) const;
  std::vector<StoreRecord> scan(RecordKind kind) const;
  bool erase(RecordKind kind, std::string_view key);
  bool empty() const;
  std::size_t size(RecordKind kind) const;

 private:
  std::map<RecordKind, std::map<std::string, StoreRecord>> tables_;
};

}  // namespace ssogate::store
