// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "jeer/csv.hpp"
#include "jeer/sha256.hpp"
#include "jeer/timeutil.hpp"

using namespace jeer;

TEST_CASE("parse_utc accepts dates and full timestamps") {
  CHECK(*parse_utc("1970-01-01") == 0);
  CHECK(*parse_utc("1970-01-02T00:00:00Z") == 86400);
  CHECK(*parse_utc("2017-04-07T00:00:00Z") == 1491523200);
  CHECK(*parse_utc("2017-04-07 12:30:05") == 1491523200 + 12 * 3600 + 30 * 60 + 5);
  CHECK(*parse_utc("1969-12-31T23:59:59Z") == -1);
}

TEST_CASE("parse_utc rejects malformed input") {
  CHECK(!parse_utc(""));
  CHECK(!parse_utc("2017-13-01"));
  CHECK(!parse_utc("2017-04-32"));
  CHECK(!parse_utc("2017-04-07T25:00:00Z"));
  CHECK(!parse_utc("2017/04/07"));
  CHECK(!parse_utc("2017-04-07T00:00:00+01:00"));
  CHECK(!parse_utc("yesterday"));
}

TEST_CASE("format_utc round-trips") {
  for (UtcSeconds t : {UtcSeconds(0), UtcSeconds(1491523200), UtcSeconds(-1), UtcSeconds(951827696)}) {
    auto s = format_utc(t);
    REQUIRE(parse_utc(s));
    CHECK(*parse_utc(s) == t);
  }
  CHECK(format_utc(1491523200) == "2017-04-07T00:00:00Z");
}

TEST_CASE("csv reader handles quotes, escapes and embedded newlines") {
  std::istringstream in("a,b,c\n\"x,y\",\"say \"\"hi\"\"\",\"line1\nline2\"\nplain,,end\n");
  CsvReader csv(in);
  auto r1 = csv.next();
  REQUIRE(r1);
  CHECK(*r1 == std::vector<std::string>{"a", "b", "c"});
  auto r2 = csv.next();
  REQUIRE(r2);
  CHECK((*r2)[0] == "x,y");
  CHECK((*r2)[1] == "say \"hi\"");
  CHECK((*r2)[2] == "line1\nline2");
  auto r3 = csv.next();
  REQUIRE(r3);
  CHECK(*r3 == std::vector<std::string>{"plain", "", "end"});
  CHECK(!csv.next());
}

TEST_CASE("csv reader skips comment lines when asked") {
  std::istringstream in("# comment\nx,1\n# another\ny,2\n");
  CsvReader csv(in, /*skip_comments=*/true);
  CHECK((*csv.next())[0] == "x");
  CHECK((*csv.next())[0] == "y");
  CHECK(!csv.next());
}

TEST_CASE("csv writer escapes what the reader unescapes") {
  std::ostringstream out;
  write_csv_row(out, {"plain", "with,comma", "with \"quote\"", "multi\nline"});
  std::istringstream in(out.str());
  CsvReader csv(in);
  auto row = csv.next();
  REQUIRE(row);
  CHECK(*row == std::vector<std::string>{"plain", "with,comma", "with \"quote\"", "multi\nline"});
}

TEST_CASE("sha256 known vectors") {
  CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(sha256_hex("abcdbcdecdefdefgefghfghighijhijkijkljklmklmnlmnomnopnopq") ==
        "248d6a61d20638b8e5c026930c3e6039a33ce45964ff2167f6ecedd419db06c1");
  // Streaming in chunks matches one-shot hashing.
  Sha256 h;
  std::string big(1000, 'a');
  for (int i = 0; i < 1000; ++i) h.update(big);
  CHECK(h.hex_digest() ==
        "cdc76e5c9914fb9281a1c7e284d73e67f1809a48a497200e046d39ccc7112cd0");
}
