#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "qldpc/error.hpp"
#include "qldpc/registry.hpp"
#include "qldpc/spec_file.hpp"

using namespace qldpc;

namespace {

CssCode from_text(const std::string& text, const std::string& base = ".") {
  std::istringstream in(text);
  return build_code(parse_code_spec(in, base));
}

}  // namespace

TEST_CASE("gb spec reproduces the registry code") {
  const CssCode c = from_text(
      "# A1\n"
      "family=gb\n"
      "l=127\n"
      "a=0,15,20,28,66\n"
      "b=0,58,59,100,121\n");
  const CssCode ref = build_registry_code("A1");
  CHECK(c.hx == ref.hx);
  CHECK(c.hz == ref.hz);
  CHECK(c.k == 28);
}

TEST_CASE("ghp spec with dash, single and braced cells") {
  const CssCode c = from_text(
      "family=ghp\n"
      "l=7\n"
      "b=0,1,3\n"
      "A=0,-,{1,2}\n"
      "A=-,3,0\n");
  CHECK(c.n() == 5 * 7);
  CHECK(check_commutativity(c));
}

TEST_CASE("hp spec from a polynomial") {
  const CssCode c = from_text("family=hp\nl=31\na=0,2,5\n");
  CHECK(c.n() == 1922);
  CHECK(c.k == 50);
}

TEST_CASE("matrix spec with relative paths") {
  const auto dir = std::filesystem::temp_directory_path() / "qldpc_spec_test";
  std::filesystem::create_directories(dir);
  const CssCode a4 = build_registry_code("A4");
  save_bitmat((dir / "m.hx").string(), a4.hx);
  save_bitmat((dir / "m.hz").string(), a4.hz);
  {
    std::ofstream out(dir / "m.spec");
    out << "family=matrix\nhx=m.hx\nhz=m.hz\n";
  }
  const CssCode c = build_code(load_code_spec((dir / "m.spec").string()));
  CHECK(c.hx == a4.hx);
  CHECK(c.k == 2);
  std::filesystem::remove_all(dir);
}

TEST_CASE("parse errors carry a line number") {
  const char* bad[] = {
      "family=gb\nl=7\na=0,1\n",           // missing b
      "family=zz\n",                       // unknown family
      "family=gb\nl=7\na=0,9\nb=0\n",      // exponent out of range
      "family=gb\nl=x\na=0\nb=0\n",        // bad integer
      "family=ghp\nl=7\nb=0\nA=0,1\nA=0\n",// ragged rows
      "this line has no equals sign\n",
  };
  for (const char* text : bad) {
    std::istringstream in(text);
    try {
      build_code(parse_code_spec(in));
      FAIL("accepted: " << text);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Parse);
    }
  }
  std::istringstream in("family=gb\nl=7\nnonsense\n");
  try {
    parse_code_spec(in);
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("3") != std::string::npos);
  }
}
