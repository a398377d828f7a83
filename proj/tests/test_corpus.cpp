// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "helpers.hpp"
#include "jeer/corpus.hpp"

using namespace jeer;

namespace {

const TimeWindow kWindow{*parse_utc("2017-04-07T00:00:00Z"), *parse_utc("2017-05-07T23:59:59Z")};

std::string tweet_line(std::uint64_t id, const std::string& author, const std::string& text,
                       const std::string& at, const std::string& reply_acc = "",
                       std::uint64_t reply_tweet = 0, bool retweet = false) {
  nlohmann::json j;
  j["id"] = id;
  j["author_id"] = author;
  j["text"] = text;
  j["created_at"] = at;
  if (!reply_acc.empty()) {
    j["in_reply_to_account"] = reply_acc;
    j["in_reply_to_tweet"] = reply_tweet;
  }
  j["is_retweet"] = retweet;
  return j.dump() + "\n";
}

Roster small_roster() {
  Roster r;
  r.add(Politician{"aaa", "aaa", "A", "Labour", Gender::female, std::nullopt, true, true, {}});
  r.add(Politician{"bbb", "bbb", "B", "Conservative", Gender::male, std::nullopt, true, false, {}});
  return r;
}

}  // namespace

TEST_CASE("ingest keeps valid in-window records") {
  testutil::TempDir tmp;
  auto path = tmp.write("t.jsonl", tweet_line(1, "u1", "hello", "2017-04-10T10:00:00Z") +
                                       tweet_line(2, "u2", "there", "2017-04-11T10:00:00Z") +
                                       tweet_line(3, "u3", "friends", "2017-04-12T10:00:00Z"));
  auto result = ingest_tweets(path, kWindow);
  CHECK(result.tweets.size() == 3);
  CHECK(result.counters.loaded == 3);
  CHECK(result.counters.malformed == 0);
  CHECK(result.counters.out_of_window == 0);
}

TEST_CASE("out-of-window records are counted and skipped") {
  testutil::TempDir tmp;
  auto path = tmp.write("t.jsonl", tweet_line(1, "u1", "too early", "2017-03-01T00:00:00Z"));
  auto result = ingest_tweets(path, kWindow);
  CHECK(result.tweets.empty());
  CHECK(result.counters.out_of_window == 1);
  // window edges are inclusive
  auto edge = tmp.write("edge.jsonl", tweet_line(2, "u", "start", "2017-04-07T00:00:00Z") +
                                          tweet_line(3, "u", "end", "2017-05-07T23:59:59Z"));
  CHECK(ingest_tweets(edge, kWindow).tweets.size() == 2);
}

TEST_CASE("a malformed line between valid ones is counted, not fatal") {
  testutil::TempDir tmp;
  auto path = tmp.write("t.jsonl", tweet_line(1, "u1", "ok", "2017-04-10T10:00:00Z") +
                                       "{this is not json\n" +
                                       tweet_line(2, "u2", "fine", "2017-04-11T10:00:00Z"));
  auto result = ingest_tweets(path, kWindow);
  CHECK(result.tweets.size() == 2);
  CHECK(result.counters.malformed == 1);
}

TEST_CASE("malformed variants: missing fields, empty text, bad timestamp") {
  testutil::TempDir tmp;
  std::string lines;
  lines += "{\"id\":1,\"text\":\"no author\",\"created_at\":\"2017-04-10T10:00:00Z\"}\n";
  lines += tweet_line(2, "u", "   ", "2017-04-10T10:00:00Z");
  lines += tweet_line(3, "u", "bad time", "2017-99-10T10:00:00Z");
  lines += tweet_line(4, "u", "ok", "2017-04-10T10:00:00Z");
  lines += tweet_line(5, "u", "ok", "2017-04-10T10:00:00Z");
  lines += tweet_line(6, "u", "ok", "2017-04-10T10:00:00Z");
  auto result = ingest_tweets(tmp.write("t.jsonl", lines), kWindow);
  CHECK(result.counters.malformed == 3);
  CHECK(result.tweets.size() == 3);
}

TEST_CASE("duplicate tweet ids keep the first record") {
  testutil::TempDir tmp;
  auto path = tmp.write("t.jsonl", tweet_line(7, "u1", "first", "2017-04-10T10:00:00Z") +
                                       tweet_line(7, "u2", "second", "2017-04-11T10:00:00Z"));
  auto result = ingest_tweets(path, kWindow);
  CHECK(result.tweets.size() == 1);
  CHECK(result.tweets[0].text == "first");
  CHECK(result.counters.duplicate_ids == 1);
}

TEST_CASE("mostly-malformed files are fatal") {
  testutil::TempDir tmp;
  auto path = tmp.write("t.jsonl", "garbage\nmore garbage\n" +
                                       tweet_line(1, "u", "ok", "2017-04-10T10:00:00Z"));
  CHECK_THROWS_AS(ingest_tweets(path, kWindow), DataError);
  CHECK_THROWS_AS(ingest_tweets(tmp.path().string() + "/nope.jsonl", kWindow), DataError);
}

TEST_CASE("ingest is deterministic") {
  testutil::TempDir tmp;
  std::string lines;
  for (int i = 0; i < 50; ++i)
    lines += tweet_line(100 + i, "u" + std::to_string(i % 7), "text " + std::to_string(i),
                        "2017-04-10T10:00:00Z", i % 3 == 0 ? "aaa" : "", 1);
  auto path = tmp.write("t.jsonl", lines);
  auto r1 = ingest_tweets(path, kWindow);
  auto r2 = ingest_tweets(path, kWindow);
  REQUIRE(r1.tweets.size() == r2.tweets.size());
  for (size_t i = 0; i < r1.tweets.size(); ++i) {
    CHECK(r1.tweets[i].id == r2.tweets[i].id);
    CHECK(r1.tweets[i].text == r2.tweets[i].text);
  }
  CHECK(r1.counters.loaded == r2.counters.loaded);
}

TEST_CASE("roster rows normalize handles and keep party labels verbatim") {
  testutil::TempDir tmp;
  auto path = tmp.write("r.csv",
                        "handle,name,party,gender,bame,is_mp,is_candidate,prominence\n"
                        "@TestMP,Test MP,Labour,female,,true,true,\n"
                        "@OTHER,Other,Monster Raving Loony,male,false,false,true,12.5\n");
  auto roster = load_roster(path);
  REQUIRE(roster.size() == 2);
  CHECK(roster.members()[0].handle == "testmp");
  CHECK(roster.members()[0].party == "Labour");
  CHECK(roster.members()[0].gender == Gender::female);
  CHECK(!roster.members()[0].bame.has_value());
  CHECK(roster.members()[1].party == "Monster Raving Loony");  // unknown label kept
  CHECK(roster.members()[1].prominence == 12.5);
  CHECK(roster.find_handle("@TESTMP").has_value());
  CHECK(roster.find_handle("testmp") == roster.find_handle("TestMP"));
}

TEST_CASE("duplicate handles and missing columns are fatal") {
  testutil::TempDir tmp;
  auto dup = tmp.write("dup.csv",
                       "handle,name,party,gender,bame,is_mp,is_candidate,prominence\n"
                       "x,One,Labour,female,,true,true,\n"
                       "@X,Two,Labour,male,,true,false,\n");
  CHECK_THROWS_WITH_AS(load_roster(dup), doctest::Contains("duplicate roster handle: 'x'"),
                       DataError);

  auto missing = tmp.write("missing.csv", "name,party\nOne,Labour\n");
  CHECK_THROWS_WITH_AS(load_roster(missing), doctest::Contains("handle"), DataError);

  auto neither = tmp.write("neither.csv",
                           "handle,name,party,gender,bame,is_mp,is_candidate,prominence\n"
                           "x,One,Labour,female,,false,false,\n");
  CHECK_THROWS_AS(load_roster(neither), DataError);
}

TEST_CASE("full-scale roster: 506 MPs, 1811 candidates, 444 both") {
  std::ostringstream rows;
  rows << "handle,name,party,gender,bame,is_mp,is_candidate,prominence\n";
  int handle = 0;
  for (int i = 0; i < 444; ++i)  // MPs standing again
    rows << "mp" << handle++ << ",N,Labour,female,,true,true,\n";
  for (int i = 0; i < 62; ++i)  // MPs standing down
    rows << "mp" << handle++ << ",N,Labour,male,,true,false,\n";
  for (int i = 0; i < 1367; ++i)  // new candidates
    rows << "cand" << handle++ << ",N,Conservative,female,,false,true,\n";
  testutil::TempDir tmp;
  auto roster = load_roster(tmp.write("big.csv", rows.str()));
  CHECK(roster.size() == 1873);
  CHECK(roster.mp_count() == 506);
  CHECK(roster.candidate_count() == 1811);
  CHECK(roster.mp_and_candidate_count() == 444);
}

TEST_CASE("account stats ages are measured from the window end") {
  testutil::TempDir tmp;
  auto path = tmp.write("a.csv",
                        "account_id,created_at,favourites,followers,following,listed,posts,is_closed\n"
                        "u1,2017-05-05T23:59:59Z,1,2,3,4,5,false\n"
                        "u2,2010-01-01T00:00:00Z,10,20,30,40,50,true\n"
                        "u3,2018-01-01T00:00:00Z,0,0,0,0,0,false\n");
  auto accounts = load_account_stats(path, kWindow.end);
  CHECK(accounts.at("u1").age_days == 2);
  CHECK(accounts.at("u2").age_days == (kWindow.end - *parse_utc("2010-01-01")) / 86400);
  CHECK(accounts.at("u3").age_days == 0);  // created after the reference date
  CHECK(accounts.at("u2").is_closed);

  auto bad = tmp.write("bad.csv",
                       "account_id,created_at,favourites,followers,following,listed,posts,is_closed\n"
                       "u1,2010-01-01,-3,0,0,0,0,false\n");
  CHECK_THROWS_AS(load_account_stats(bad, kWindow.end), DataError);
}

TEST_CASE("link_replies attributes replies and excludes retweets") {
  testutil::TempDir tmp;
  std::string lines;
  lines += tweet_line(1, "aaa", "politician speaks", "2017-04-10T10:00:00Z");
  lines += tweet_line(2, "u1", "reply to a", "2017-04-10T11:00:00Z", "aaa", 1);
  lines += tweet_line(3, "u2", "retweet of a", "2017-04-10T12:00:00Z", "aaa", 1, true);
  lines += tweet_line(4, "u3", "reply to nobody known", "2017-04-10T13:00:00Z", "zzz", 0);
  auto ingest = ingest_tweets(tmp.write("t.jsonl", lines), kWindow);
  Corpus corpus(std::move(ingest.tweets), {}, small_roster(), kWindow, ingest.counters);
  auto replies = link_replies(corpus);

  CHECK(replies.total == 1);
  REQUIRE(replies.by_politician.size() == 2);
  CHECK(replies.by_politician[0].size() == 1);
  CHECK(replies.by_politician[1].empty());
  CHECK(replies.target(*corpus.index_of(2)) == 0);
  CHECK(!replies.target(*corpus.index_of(3)));  // retweet excluded
  CHECK(!replies.target(*corpus.index_of(4)));  // unresolvable ignored
}

TEST_CASE("reply counts: 5 to A and 3 to B, each counted once") {
  testutil::TempDir tmp;
  std::string lines;
  std::uint64_t id = 1;
  for (int i = 0; i < 5; ++i)
    lines += tweet_line(id++, "u" + std::to_string(i), "to a", "2017-04-10T10:00:00Z", "aaa", 0);
  for (int i = 0; i < 3; ++i)
    lines += tweet_line(id++, "v" + std::to_string(i), "to b", "2017-04-10T10:00:00Z", "@BBB", 0);
  lines += tweet_line(id++, "w", "no reply", "2017-04-10T10:00:00Z");
  auto ingest = ingest_tweets(tmp.write("t.jsonl", lines), kWindow);
  Corpus corpus(std::move(ingest.tweets), {}, small_roster(), kWindow, ingest.counters);
  auto replies = link_replies(corpus);

  CHECK(replies.by_politician[0].size() == 5);
  CHECK(replies.by_politician[1].size() == 3);  // '@BBB' resolves as handle
  CHECK(replies.total == 8);

  // every reply edge resolving to the roster is counted exactly once
  std::uint64_t resolved = 0;
  for (const auto& t : corpus.tweets())
    if (!t.is_retweet && t.reply_to_account && corpus.roster().resolve_account(*t.reply_to_account))
      ++resolved;
  std::uint64_t indexed = 0;
  for (const auto& list : replies.by_politician) indexed += list.size();
  CHECK(indexed == resolved);
}

TEST_CASE("corpus lookups are consistent") {
  testutil::TempDir tmp;
  auto ingest = ingest_tweets(
      tmp.write("t.jsonl", tweet_line(11, "u1", "one", "2017-04-10T10:00:00Z") +
                               tweet_line(12, "u2", "two", "2017-04-10T11:00:00Z")),
      kWindow);
  Corpus corpus(std::move(ingest.tweets), {}, small_roster(), kWindow, ingest.counters);
  REQUIRE(corpus.tweet_by_id(11));
  CHECK(corpus.tweet_by_id(11)->text == "one");
  CHECK(corpus.tweet_by_id(999) == nullptr);
  CHECK(corpus.roster().resolve_account("aaa").has_value());
}
