// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "jeer/segment.hpp"

using namespace jeer;

namespace {

std::vector<std::string> surfaces(const TokenStream& stream) {
  std::vector<std::string> out;
  for (const auto& t : stream.tokens) out.push_back(t.surface);
  return out;
}

}  // namespace

TEST_CASE("tokenize lowercases and strips punctuation") {
  auto ts = tokenize("You IDIOT!");
  CHECK(surfaces(ts) == std::vector<std::string>{"you", "idiot"});
  for (const auto& t : ts.tokens) CHECK(t.origin == TokenOrigin::plain);
}

TEST_CASE("tokenize expands hashtags through the dictionary") {
  SegmentationDict dict{"kill", "the", "witch"};
  auto ts = tokenize("#killthewitch", &dict);
  CHECK(surfaces(ts) == std::vector<std::string>{"killthewitch", "kill", "the", "witch"});
  for (const auto& t : ts.tokens) CHECK(t.origin == TokenOrigin::hashtag);
}

TEST_CASE("hashtag with no segmentation still contributes its body") {
  SegmentationDict dict{"kill", "the", "witch"};
  auto ts = tokenize("#coward", &dict);
  CHECK(surfaces(ts) == std::vector<std::string>{"coward"});
}

TEST_CASE("single-word hashtag is not emitted twice") {
  SegmentationDict dict{"nhs"};
  auto ts = tokenize("#nhs", &dict);
  CHECK(surfaces(ts) == std::vector<std::string>{"nhs"});
}

TEST_CASE("urls stay whole and carry the url origin") {
  SegmentationDict dict{"kill", "the", "witch"};
  auto ts = tokenize("see https://x.y/a#b", &dict);
  REQUIRE(ts.tokens.size() == 2);
  CHECK(ts.tokens[0].surface == "see");
  CHECK(ts.tokens[1].surface == "https://x.y/a#b");
  CHECK(ts.tokens[1].origin == TokenOrigin::url);
}

TEST_CASE("www-style urls are recognized too") {
  auto ts = tokenize("visit www.example.com/page#top now");
  REQUIRE(ts.tokens.size() == 3);
  CHECK(ts.tokens[1].origin == TokenOrigin::url);
  CHECK(ts.tokens[2].surface == "now");
}

TEST_CASE("mentions are tagged and '@' is stripped") {
  auto ts = tokenize("@TestMP well said");
  REQUIRE(ts.tokens.size() == 3);
  CHECK(ts.tokens[0].surface == "testmp");
  CHECK(ts.tokens[0].origin == TokenOrigin::mention);
  // '@' inside a word is just punctuation
  auto email = tokenize("mail me a@b.c");
  CHECK(surfaces(email) == std::vector<std::string>{"mail", "me", "a", "b", "c"});
}

TEST_CASE("digit runs are separate tokens") {
  auto ts = tokenize("ge2017 result 42%");
  CHECK(surfaces(ts) == std::vector<std::string>{"ge", "2017", "result", "42"});
}

TEST_CASE("underscores split hashtag bodies") {
  SegmentationDict dict{"kill", "the", "witch"};
  auto ts = tokenize("#kill_the_witch", &dict);
  CHECK(surfaces(ts) == std::vector<std::string>{"kill", "the", "witch"});
}

TEST_CASE("emoji separate words") {
  auto ts = tokenize("idiot\xF0\x9F\x98\xA1moron");
  CHECK(surfaces(ts) == std::vector<std::string>{"idiot", "moron"});
}

TEST_CASE("accented words survive as single tokens") {
  auto ts = tokenize("café open");
  CHECK(surfaces(ts) == std::vector<std::string>{"café", "open"});
}

TEST_CASE("tokenize is idempotent on its plain-token output") {
  std::mt19937 rng(7);
  const std::string texts[] = {
      "You IDIOT! #killthewitch @mp https://x.y/z 2017 votes",
      "Mass immigration is ruining schools, you dick.",
      "it's a mixed-bag: #NHS, 42% and more...",
  };
  SegmentationDict dict{"kill", "the", "witch", "vote", "labour"};
  for (const auto& text : texts) {
    auto first = tokenize(text, &dict);
    std::string joined;
    for (const auto& t : first.tokens) {
      if (t.origin != TokenOrigin::plain) continue;
      if (!joined.empty()) joined += ' ';
      joined += t.surface;
    }
    auto second = tokenize(joined, &dict);
    std::vector<std::string> expected;
    for (const auto& t : first.tokens)
      if (t.origin == TokenOrigin::plain) expected.push_back(t.surface);
    CHECK(surfaces(second) == expected);
  }
}

TEST_CASE("token spans point into the source text") {
  const std::string text = "ok #killthewitch done";
  SegmentationDict dict{"kill", "the", "witch"};
  auto ts = tokenize(text, &dict);
  for (const auto& t : ts.tokens) {
    CHECK(t.begin < t.end);
    CHECK(t.end <= text.size());
  }
  // hashtag-derived tokens share the hashtag's span
  CHECK(ts.tokens[1].begin == 3);
  CHECK(ts.tokens[1].end == 16);
  CHECK(ts.tokens[2].begin == ts.tokens[1].begin);
}

TEST_CASE("segment_hashtag basics") {
  SegmentationDict dict{"kill", "the", "witch", "nhs"};
  auto seg = segment_hashtag("killthewitch", dict);
  REQUIRE(seg);
  CHECK(*seg == std::vector<std::string>{"kill", "the", "witch"});

  auto single = segment_hashtag("nhs", dict);
  REQUIRE(single);
  CHECK(*single == std::vector<std::string>{"nhs"});

  CHECK(!segment_hashtag("zzzz", dict));
  CHECK(!segment_hashtag("", dict));
}

TEST_CASE("segment_hashtag prefers fewer words") {
  SegmentationDict dict{"a", "tone", "at", "one", "atone"};
  auto seg = segment_hashtag("atone", dict);
  REQUIRE(seg);
  CHECK(*seg == std::vector<std::string>{"atone"});
}

TEST_CASE("segment_hashtag tie-breaks by longest first word") {
  // "abcd" as ab+cd or abc+d: both two words, longer first word wins.
  SegmentationDict dict{"ab", "cd", "abc", "d"};
  auto seg = segment_hashtag("abcd", dict);
  REQUIRE(seg);
  CHECK(*seg == std::vector<std::string>{"abc", "d"});
}

TEST_CASE("digit runs pass through as atomic words") {
  SegmentationDict dict{"vote", "labour"};
  auto seg = segment_hashtag("vote2017labour", dict);
  REQUIRE(seg);
  CHECK(*seg == std::vector<std::string>{"vote", "2017", "labour"});
}

TEST_CASE("segmentation concatenation property and oracle equivalence") {
  std::mt19937 rng(12345);
  const std::vector<std::string> vocab = {"a",   "ab",  "abc", "b",    "bc", "c",
                                          "ca",  "cab", "ba",  "aa",   "cc", "abcb",
                                          "bca", "acb", "ac",  "bb"};
  for (int trial = 0; trial < 300; ++trial) {
    SegmentationDict dict;
    const size_t dict_size = 3 + rng() % (vocab.size() - 3);
    std::vector<std::string> shuffled = vocab;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    for (size_t i = 0; i < dict_size; ++i) dict.add(shuffled[i]);

    std::string body;
    const size_t len = 1 + rng() % 12;
    for (size_t i = 0; i < len; ++i) {
      const int roll = int(rng() % 10);
      body.push_back(roll < 8 ? char('a' + rng() % 3) : char('0' + rng() % 3));
    }

    auto got = segment_hashtag(body, dict);
    auto want = testutil::brute_force_segment(body, dict);
    REQUIRE(got.has_value() == want.has_value());
    if (got) {
      CHECK(*got == *want);
      std::string joined;
      for (const auto& w : *got) joined += w;
      CHECK(joined == body);
    }
  }
}
