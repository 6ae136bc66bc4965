#include "doctest.h"
#include "layoutgt/textnorm.hpp"

using namespace layoutgt;

namespace {

// Expected code points frozen from Python's unicodedata.normalize("NFKD", s)
// followed by whitespace collapsing.
std::u32string nfkd(std::string_view s) { return normalize_kd(s).chars(); }

}  // namespace

TEST_CASE("ligatures and compatibility forms decompose") {
  CHECK(nfkd("ﬁgure") == U"figure");
  CHECK(nfkd("ſt") == U"st");
  CHECK(nfkd("x²") == U"x2");
  CHECK(nfkd("Ｆｕｌｌ") == U"Full");
  CHECK(nfkd("①") == U"1");
  CHECK(nfkd("ℌ") == U"H");
  CHECK(nfkd("½") == U"1⁄2");
}

TEST_CASE("canonical decomposition keeps combining marks") {
  CHECK(nfkd("Å") == U"Å");
  CHECK(nfkd("é") == U"é");
  CHECK(nfkd("ǆ") == U"dž");
}

TEST_CASE("whitespace runs collapse and trim") {
  CHECK(nfkd("a  b") == U"a b");
  CHECK(nfkd("  x\t\ny  ") == U"x y");
  CHECK(nfkd(" em space　end") == U"em space end");
  CHECK(normalize_kd("   ").empty());
  CHECK(normalize_kd("").empty());
}

TEST_CASE("case is preserved") { CHECK(nfkd("AbC") == U"AbC"); }

TEST_CASE("invalid UTF-8 becomes the replacement character") {
  CHECK(nfkd("a\xff" "b") == U"a�b");
}

TEST_CASE("normalization is idempotent") {
  for (const char* s : {"ﬁ  x²", "Å é", "plain text", " ①　ℌ  "}) {
    const NormString once = normalize_kd(s);
    CHECK(normalize_kd(once.chars()) == once);
    CHECK(normalize_kd(once.utf8()) == once);
  }
}

TEST_CASE("utf8 round trip") {
  const std::string s = "ﬁgure Å ①";
  CHECK(u32_to_utf8(utf8_to_u32(s)) == s);
  CHECK(utf8_to_u32(s).size() == 9);
}

TEST_CASE("unicode whitespace property") {
  CHECK(is_unicode_space(U' '));
  CHECK(is_unicode_space(U' '));
  CHECK(is_unicode_space(U'　'));
  CHECK_FALSE(is_unicode_space(U'a'));
  CHECK_FALSE(is_unicode_space(U'​'));
}
