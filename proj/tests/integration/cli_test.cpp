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

#include <gtest/gtest.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <json.hpp>
#include <string>

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

struct CliRun {
  int code = -1;
  std::string out;
  json record() const { return json::parse(out.substr(0, out.find('\n')), nullptr, false); }
};

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("ssogate-cli-" + std::to_string(::getpid()) + "-" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  CliRun run(const std::string& args) {
    std::string cmd = std::string(SSOGATE_CLI_PATH) + " --store '" + dir_.string() + "' --json " + args + " 2>/dev/null";
    CliRun r;
    FILE* pipe = ::popen(cmd.c_str(), "r");
    if (!pipe) return r;
    char buf[4096];
    while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) r.out.append(buf, n);
    int status = ::pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
  }

  fs::path dir_;
};

TEST_F(Cli, SeedAndResolve) {
  auto seeded = run("seed");
  ASSERT_EQ(seeded.code, 0) << seeded.out;
  EXPECT_EQ(seeded.record()["users"], 3);
  EXPECT_EQ(run("seed").code, 3);

  auto r = run("resolve --user 1 --at 2008-03-01");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.record()["roles"], json::array({"12", "13"}));
  EXPECT_EQ(run("resolve --user root --at 2008-06-01").record()["roles"], json::array({"12"}));
  EXPECT_EQ(run("resolve --user 2 --at 2008-01-01").record()["roles"], json::array({"12"}));
  EXPECT_EQ(run("resolve --user nobody").code, 4);
  EXPECT_EQ(run("resolve --user 1 --at 2008-13-01").code, 3);
}

TEST_F(Cli, LeaveScenario) {
  ASSERT_EQ(run("seed").code, 0);
  for (const char* name : {"ram", "pshayam", "ashish"}) ASSERT_EQ(run(std::string("user add ") + name).code, 0);
  EXPECT_EQ(run("user add ram").code, 6);

  auto role = run("--today 2009-01-01 role add --id 52 --name HODCSE --owner ram");
  ASSERT_EQ(role.code, 0) << role.out;
  EXPECT_EQ(role.record()["scope"], "local");
  ASSERT_EQ(run("--today 2009-01-01 assign --user ram --role HODCSE --from 2009-01-01 --until 2009-12-31").code, 0);

  auto first = run("--today 2009-06-20 delegate --role 52 --from ram --to pshayam --until 2009-07-04");
  ASSERT_EQ(first.code, 0) << first.out;
  EXPECT_EQ(first.record()["from"], "2009-06-20");
  EXPECT_EQ(first.record()["clamped"], false);

  auto second =
      run("--today 2009-07-01 delegate --role 52 --from pshayam --to ashish --start 2009-07-01 --until 2009-07-10");
  ASSERT_EQ(second.code, 0) << second.out;
  EXPECT_EQ(second.record()["upto"], "2009-07-04");
  EXPECT_EQ(second.record()["requested"]["upto"], "2009-07-10");
  EXPECT_EQ(second.record()["clamped"], true);

  EXPECT_EQ(run("holder --role 52 --at 2009-07-01").record()["holder_name"], "ashish");
  EXPECT_EQ(run("holder --role HODCSE --at 2009-07-05").record()["holder_name"], "ram");

  EXPECT_EQ(run("--today 2009-06-01 delegate --role 52 --from ashish --to ram --until 2009-06-02").code, 5);

  auto s_no = second.record()["s_no"].get<std::uint64_t>();
  EXPECT_EQ(run("--today 2009-07-02 --actor ashish revoke " + std::to_string(s_no)).code, 5);
  auto revoked = run("--today 2009-07-02 --actor pshayam revoke " + std::to_string(s_no));
  ASSERT_EQ(revoked.code, 0) << revoked.out;
  EXPECT_EQ(run("holder --role 52 --at 2009-07-02").record()["holder_name"], "pshayam");
  EXPECT_EQ(run("revoke 9999").code, 4);
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run("assign --user ram").code, 2);
  EXPECT_EQ(run("no-such-verb").code, 2);
  EXPECT_EQ(run("--help").code, 0);
  EXPECT_EQ(run("role add --id 52 --name X").code, 4);  // empty store has no administrator
}

TEST_F(Cli, ScriptedLoginAgainstLocalStack) {
  auto ok = run("e2e-login --username alice --password wonderland");
  ASSERT_EQ(ok.code, 0) << ok.out;
  EXPECT_EQ(ok.record()["success"], true);
  EXPECT_EQ(ok.record()["email"], "alice@example.org");

  auto denied = run("e2e-login --username alice --password wonderland --deny");
  EXPECT_EQ(denied.code, 8);
  EXPECT_EQ(denied.record()["message"], "Verification cancelled.");
}

}  // namespace
