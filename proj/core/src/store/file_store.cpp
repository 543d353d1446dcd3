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

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <sstream>

#include <json.hpp>

#include "ssogate/error.hpp"
#include "ssogate/store/store.hpp"
#include "store_internal.hpp"

namespace ssogate::store {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

[[noreturn]] void io_fail(const std::string& what, const fs::path& path) {
  fail(Errc::storage, "store-io", what + " " + path.string() + ": " + std::strerror(errno));
}

class Fd {
 public:
  Fd() = default;
  explicit Fd(int fd) : fd_(fd) {}
  Fd(Fd&& o) noexcept : fd_(std::exchange(o.fd_, -1)) {}
  Fd& operator=(Fd&& o) noexcept {
    if (this != &o) {
      reset();
      fd_ = std::exchange(o.fd_, -1);
    }
    return *this;
  }
  Fd(const Fd&) = delete;
  Fd& operator=(const Fd&) = delete;
  ~Fd() { reset(); }

  int get() const { return fd_; }
  void reset() {
    if (fd_ >= 0) ::close(fd_);
    fd_ = -1;
  }

 private:
  int fd_ = -1;
};

void write_all(int fd, std::string_view data, const fs::path& path) {
  while (!data.empty()) {
    ssize_t n = ::write(fd, data.data(), data.size());
    if (n < 0) {
      if (errno == EINTR) continue;
      io_fail("write failed for", path);
    }
    data.remove_prefix(static_cast<std::size_t>(n));
  }
}

std::string put_line(const StoreRecord& r) {
  json j = {{"op", "put"}, {"key", r.key}, {"version", r.version}, {"payload", r.payload}};
  return j.dump() + "\n";
}

std::string erase_line(std::string_view key) {
  json j = {{"op", "del"}, {"key", key}};
  return j.dump() + "\n";
}

class FileStore final : public Store {
 public:
  FileStore(fs::path dir, OpenOptions options) : dir_(std::move(dir)), options_(std::move(options)) {
    if (!options_.warn) {
      options_.warn = [](std::string_view msg) { std::clog << "ssogate store: " << msg << "\n"; };
    }
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec) fail(Errc::storage, "store-io", "cannot create store directory " + dir_.string() + ": " + ec.message());

    fs::path lock_path = dir_ / "LOCK";
    lock_ = Fd(::open(lock_path.c_str(), O_RDWR | O_CREAT | O_CLOEXEC, 0644));
    if (lock_.get() < 0) io_fail("cannot open", lock_path);
    if (::flock(lock_.get(), LOCK_EX | LOCK_NB) != 0) {
      fail(Errc::locked, "store-locked", "store " + dir_.string() + " is locked by another process");
    }

    for (RecordKind kind : all_kinds()) load(kind);
  }

  StoreRecord put(RecordKind kind, std::string_view key, std::string_view payload) override {
    std::unique_lock lock(mu_);
    StoreRecord rec = table_.put(kind, key, payload);
    append(kind, put_line(rec));
    return rec;
  }

  std::optional<StoreRecord> get(RecordKind kind, std::string_view key) const override {
    std::shared_lock lock(mu_);
    return table_.get(kind, key);
  }

  std::vector<StoreRecord> scan(RecordKind kind) const override {
    std::shared_lock lock(mu_);
    return table_.scan(kind);
  }

  bool erase(RecordKind kind, std::string_view key) override {
    std::unique_lock lock(mu_);
    if (!table_.erase(kind, key)) return false;
    append(kind, erase_line(key));
    return true;
  }

  bool empty() const override {
    std::shared_lock lock(mu_);
    return table_.empty();
  }

 private:
  fs::path log_path(RecordKind kind) const { return dir_ / (std::string(to_string(kind)) + ".log"); }

  void load(RecordKind kind) {
    fs::path path = log_path(kind);
    std::string content;
    {
      std::ifstream in(path, std::ios::binary);
      if (in) {
        std::ostringstream ss;
        ss << in.rdbuf();
        content = ss.str();
      } else if (fs::exists(path)) {
        io_fail("cannot read", path);
      }
    }

    std::size_t pos = 0;
    std::size_t good_end = 0;
    std::size_t lines = 0;
    while (pos < content.size()) {
      auto nl = content.find('\n', pos);
      bool last = nl == std::string::npos || nl + 1 == content.size();
      if (nl == std::string::npos) {
        options_.warn("truncating partial trailing record in " + path.string());
        break;
      }
      std::string_view line(content.data() + pos, nl - pos);
      if (!apply(kind, line)) {
        if (!last) fail(Errc::storage, "corrupt-log", "corrupt record in the middle of " + path.string());
        options_.warn("truncating unparseable trailing record in " + path.string());
        break;
      }
      ++lines;
      pos = nl + 1;
      good_end = pos;
    }
    if (good_end < content.size()) {
      if (::truncate(path.c_str(), static_cast<off_t>(good_end)) != 0) io_fail("cannot truncate", path);
    }

    Fd fd(::open(path.c_str(), O_WRONLY | O_CREAT | O_APPEND | O_CLOEXEC, 0644));
    if (fd.get() < 0) io_fail("cannot open", path);
    logs_[kind] = std::move(fd);
    line_counts_[kind] = lines;

    if (lines >= table_.size(kind) + options_.compaction_threshold) compact(kind);
  }

  bool apply(RecordKind kind, std::string_view line) {
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object() || !j.contains("op") || !j.contains("key")) return false;
    try {
      auto op = j.at("op").get<std::string>();
      auto key = j.at("key").get<std::string>();
      if (op == "put") {
        table_.restore(StoreRecord{kind, key, j.at("payload").get<std::string>(), j.at("version").get<std::uint64_t>()});
        return true;
      }
      if (op == "del") {
        table_.erase(kind, key);
        return true;
      }
    } catch (const json::exception&) {
      return false;
    }
    return false;
  }

  void append(RecordKind kind, const std::string& line) {
    auto path = log_path(kind);
    int fd = logs_.at(kind).get();
    write_all(fd, line, path);
    if (options_.fsync_writes) ::fsync(fd);
    if (++line_counts_[kind] >= table_.size(kind) + options_.compaction_threshold) compact(kind);
  }

  // Rewrites a log with one line per live record, then atomically swaps it in.
  void compact(RecordKind kind) {
    fs::path path = log_path(kind);
    fs::path tmp = path;
    tmp += ".compact";
    {
      Fd out(::open(tmp.c_str(), O_WRONLY | O_CREAT | O_TRUNC | O_CLOEXEC, 0644));
      if (out.get() < 0) io_fail("cannot open", tmp);
      for (const auto& rec : table_.scan(kind)) write_all(out.get(), put_line(rec), tmp);
      if (::fsync(out.get()) != 0) io_fail("cannot sync", tmp);
    }
    if (::rename(tmp.c_str(), path.c_str()) != 0) io_fail("cannot rename", tmp);
    Fd fd(::open(path.c_str(), O_WRONLY | O_APPEND | O_CLOEXEC, 0644));
    if (fd.get() < 0) io_fail("cannot open", path);
    logs_[kind] = std::move(fd);
    line_counts_[kind] = table_.size(kind);
  }

  fs::path dir_;
  OpenOptions options_;
  Fd lock_;
  mutable std::shared_mutex mu_;
  RecordTable table_;
  std::map<RecordKind, Fd> logs_;
  std::map<RecordKind, std::size_t> line_counts_;
};

}  // namespace

std::unique_ptr<Store> open_store(const std::filesystem::path& dir, OpenOptions options) {
  return std::make_unique<FileStore>(dir, std::move(options));
}

}  // namespace ssogate::store
