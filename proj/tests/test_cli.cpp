#include "doctest.h"

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run cli(const std::string& args) {
  const fs::path out = fs::temp_directory_path() / "eisenprod-cli-test.out";
  const std::string cmd = std::string("\"") + EISENPROD_CLI + "\" --quiet " + args + " > \"" + out.string() + "\" 2>&1";
  const int status = std::system(cmd.c_str());
  Run r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(out);
  std::stringstream ss;
  ss << in.rdbuf();
  r.out = ss.str();
  return r;
}

}  // namespace

TEST_CASE("verify exit codes") {
  const Run ok = cli("verify \"E4*D12=D16\"");
  CHECK(ok.code == 0);
  CHECK(ok.out.find("PASS") != std::string::npos);
  CHECK(cli("verify \"E4*phi8=D12+256*D12(q^2)\" --terms 100").code == 0);
  CHECK(cli("verify \"2*E4*theta(E4)=theta(E8)\"").code == 0);
  const Run bad = cli("verify \"E4*D12=D18\"");
  CHECK(bad.code == 2);
  CHECK(bad.out.find("FAIL") != std::string::npos);
  CHECK(cli("verify \"E4*(\"").code == 1);
}

TEST_CASE("newton subcommand") {
  const fs::path dir = fs::temp_directory_path();
  std::ofstream(dir / "eisenprod-f.txt") << "3*x^2*y + 2*y^2 + 2\n";
  std::ofstream(dir / "eisenprod-g.txt") << "x^3 + 4*x^2*y + y^3 + 1\n";
  const Run r = cli("newton --poly \"" + (dir / "eisenprod-f.txt").string() + "\" --poly \"" +
                    (dir / "eisenprod-g.txt").string() + "\" --vars x,y --op bound");
  CHECK(r.code == 0);
  CHECK(r.out.find("\"bound\": \"9\"") != std::string::npos);
  CHECK(r.out.find("\"31/2\"") != std::string::npos);
}

TEST_CASE("argument errors") {
  CHECK(cli("").code != 0);
  CHECK(cli("symbolic --subsystem sys3").code != 0);
  CHECK(cli("solve").code != 0);
}
