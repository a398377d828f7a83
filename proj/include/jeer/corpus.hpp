// SPDX-License-Identifier: Apache-2.0
#ifndef JEER_CORPUS_HPP_
#define JEER_CORPUS_HPP_

#include <cstdint>
#include <fstream>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "jeer/csv.hpp"
#include "jeer/error.hpp"
#include "jeer/text.hpp"
#include "jeer/timeutil.hpp"

namespace jeer {

struct Tweet {
  std::uint64_t id = 0;
  std::string author_id;
  std::string text;
  UtcSeconds created_at = 0;
  std::optional<std::string> reply_to_account;
  std::optional<std::uint64_t> reply_to_tweet;
  bool is_retweet = false;
};

struct AccountStats {
  std::string account_id;
  UtcSeconds created_at = 0;
  std::int64_t age_days = 0;  // floor days between creation and the reference date, >= 0
  std::int64_t favourites = 0;
  std::int64_t followers = 0;
  std::int64_t following = 0;
  std::int64_t listed = 0;
  std::int64_t posts = 0;
  bool is_closed = false;
};

enum class Gender : std::uint8_t { female, male, unspecified };

inline std::string_view to_string(Gender g) {
  switch (g) {
    case Gender::female: return "female";
    case Gender::male: return "male";
    case Gender::unspecified: return "unspecified";
  }
  return "?";
}

struct Politician {
  std::string handle;      // lowercase, no leading '@'
  std::string account_id;  // defaults to the handle when the roster has no account_id column
  std::string name;
  std::string party;       // label kept verbatim
  Gender gender = Gender::unspecified;
  std::optional<bool> bame;
  bool is_mp = false;
  bool is_candidate = false;
  std::optional<double> prominence;  // externally supplied search-trend total
};

// Inclusive collection window.
struct TimeWindow {
  UtcSeconds begin = kMinTime;
  UtcSeconds end = kMaxTime;
  bool contains(UtcSeconds t) const { return t >= begin && t <= end; }
  bool bounded_end() const { return end != kMaxTime; }
};

struct IngestCounters {
  std::uint64_t lines = 0;  // non-blank lines seen
  std::uint64_t loaded = 0;
  std::uint64_t malformed = 0;
  std::uint64_t out_of_window = 0;
  std::uint64_t duplicate_ids = 0;
};

inline std::string normalize_handle(std::string_view raw) {
  auto t = text::trim(raw);
  if (!t.empty() && t.front() == '@') t.remove_prefix(1);
  return text::to_lower(t);
}

// Politician roster keyed by both handle and account id.
class Roster {
 public:
  void add(Politician p) {
    if (p.handle.empty()) throw DataError("roster entry with empty handle");
    if (!p.is_mp && !p.is_candidate)
      throw DataError("roster entry '" + p.handle + "' is neither MP nor candidate");
    if (by_handle_.count(p.handle))
      throw DataError("duplicate roster handle: '" + p.handle + "'");
    std::uint32_t idx = static_cast<std::uint32_t>(members_.size());
    by_handle_.emplace(p.handle, idx);
    by_account_.emplace(p.account_id, idx);  // first wins; account ids normally unique
    members_.push_back(std::move(p));
  }

  std::optional<std::uint32_t> find_handle(std::string_view raw) const {
    auto it = by_handle_.find(normalize_handle(raw));
    if (it == by_handle_.end()) return std::nullopt;
    return it->second;
  }

  // Reply targets resolve by account id first, then as a handle.
  std::optional<std::uint32_t> resolve_account(std::string_view account) const {
    auto it = by_account_.find(account);
    if (it != by_account_.end()) return it->second;
    return find_handle(account);
  }

  const std::vector<Politician>& members() const { return members_; }
  size_t size() const { return members_.size(); }

  size_t mp_count() const { return count([](const Politician& p) { return p.is_mp; }); }
  size_t candidate_count() const { return count([](const Politician& p) { return p.is_candidate; }); }
  size_t mp_and_candidate_count() const {
    return count([](const Politician& p) { return p.is_mp && p.is_candidate; });
  }

 private:
  template <typename Pred>
  size_t count(Pred pred) const {
    size_t n = 0;
    for (const auto& p : members_)
      if (pred(p)) ++n;
    return n;
  }

  std::vector<Politician> members_;
  std::unordered_map<std::string, std::uint32_t, StringHash, StringEq> by_handle_;
  std::unordered_map<std::string, std::uint32_t, StringHash, StringEq> by_account_;
};

namespace detail {

inline std::optional<bool> parse_bool(std::string_view s) {
  std::string v = text::to_lower(text::trim(s));
  if (v == "true" || v == "1" || v == "yes" || v == "y") return true;
  if (v == "false" || v == "0" || v == "no" || v == "n") return false;
  return std::nullopt;
}

inline std::optional<std::int64_t> parse_int(std::string_view s) {
  auto t = text::trim(s);
  if (t.empty()) return std::nullopt;
  std::int64_t sign = 1;
  size_t i = 0;
  if (t[0] == '-') {
    sign = -1;
    i = 1;
  }
  if (i == t.size()) return std::nullopt;
  std::int64_t v = 0;
  for (; i < t.size(); ++i) {
    if (t[i] < '0' || t[i] > '9') return std::nullopt;
    v = v * 10 + (t[i] - '0');
  }
  return sign * v;
}

inline std::optional<std::uint64_t> parse_u64(std::string_view s) {
  auto t = text::trim(s);
  if (t.empty()) return std::nullopt;
  std::uint64_t v = 0;
  for (char c : t) {
    if (c < '0' || c > '9') return std::nullopt;
    v = v * 10 + static_cast<std::uint64_t>(c - '0');
  }
  return v;
}

struct HeaderIndex {
  std::unordered_map<std::string, size_t, StringHash, StringEq> cols;

  explicit HeaderIndex(const std::vector<std::string>& header) {
    for (size_t i = 0; i < header.size(); ++i)
      cols.emplace(text::to_lower(text::trim(header[i])), i);
  }

  std::optional<size_t> find(std::string_view name) const {
    auto it = cols.find(name);
    if (it == cols.end()) return std::nullopt;
    return it->second;
  }

  size_t require(std::string_view name, const std::string& path) const {
    auto idx = find(name);
    if (!idx) throw DataError(path + ": missing required column '" + std::string(name) + "'");
    return *idx;
  }
};

inline std::string field(const std::vector<std::string>& row, size_t idx) {
  return idx < row.size() ? row[idx] : std::string();
}

}  // namespace detail

// Roster file: header handle,name,party,gender,bame,is_mp,is_candidate,prominence.
// An optional account_id column overrides the default account_id == handle.
// Unknown party labels are kept verbatim.
inline Roster load_roster(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open roster: " + path);
  CsvReader csv(in, /*skip_comments=*/true);
  auto header = csv.next();
  if (!header) throw DataError("roster is empty: " + path);
  detail::HeaderIndex hdr(*header);
  const size_t c_handle = hdr.require("handle", path);
  const size_t c_name = hdr.require("name", path);
  const size_t c_party = hdr.require("party", path);
  const size_t c_gender = hdr.require("gender", path);
  const size_t c_mp = hdr.require("is_mp", path);
  const size_t c_cand = hdr.require("is_candidate", path);
  const auto c_bame = hdr.find("bame");
  const auto c_prom = hdr.find("prominence");
  const auto c_account = hdr.find("account_id");

  Roster roster;
  while (auto row = csv.next()) {
    const std::string where = path + ":" + std::to_string(csv.record_line());
    Politician p;
    p.handle = normalize_handle(detail::field(*row, c_handle));
    p.name = std::string(text::trim(detail::field(*row, c_name)));
    p.party = std::string(text::trim(detail::field(*row, c_party)));

    std::string g = text::to_lower(text::trim(detail::field(*row, c_gender)));
    p.gender = (g == "female" || g == "f")  ? Gender::female
               : (g == "male" || g == "m") ? Gender::male
                                           : Gender::unspecified;

    auto mp = detail::parse_bool(detail::field(*row, c_mp));
    auto cand = detail::parse_bool(detail::field(*row, c_cand));
    if (!mp || !cand) throw DataError(where + ": is_mp/is_candidate must be boolean");
    p.is_mp = *mp;
    p.is_candidate = *cand;

    if (c_bame) {
      auto raw = text::trim(detail::field(*row, *c_bame));
      if (!raw.empty()) {
        auto b = detail::parse_bool(raw);
        if (!b) throw DataError(where + ": bame must be boolean or empty");
        p.bame = *b;
      }
    }
    if (c_prom) {
      auto raw = text::trim(detail::field(*row, *c_prom));
      if (!raw.empty()) {
        try {
          p.prominence = std::stod(std::string(raw));
        } catch (const std::exception&) {
          throw DataError(where + ": prominence must be numeric or empty");
        }
        if (*p.prominence < 0) throw DataError(where + ": prominence must be non-negative");
      }
    }
    p.account_id = c_account ? std::string(text::trim(detail::field(*row, *c_account))) : p.handle;
    if (p.account_id.empty()) p.account_id = p.handle;

    try {
      roster.add(std::move(p));
    } catch (const DataError& e) {
      throw DataError(where + ": " + e.what());
    }
  }
  if (roster.size() == 0) throw DataError("roster has no entries: " + path);
  return roster;
}

// Account stats file: header account_id,created_at,favourites,followers,
// following,listed,posts,is_closed. Ages are measured against `reference`
// (the end of the collection window) and clamped at zero.
inline std::unordered_map<std::string, AccountStats> load_account_stats(const std::string& path,
                                                                        UtcSeconds reference) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open account stats: " + path);
  CsvReader csv(in, /*skip_comments=*/true);
  auto header = csv.next();
  if (!header) throw DataError("account stats file is empty: " + path);
  detail::HeaderIndex hdr(*header);
  const size_t c_id = hdr.require("account_id", path);
  const size_t c_created = hdr.require("created_at", path);
  const size_t c_fav = hdr.require("favourites", path);
  const size_t c_fol = hdr.require("followers", path);
  const size_t c_ing = hdr.require("following", path);
  const size_t c_lst = hdr.require("listed", path);
  const size_t c_post = hdr.require("posts", path);
  const size_t c_closed = hdr.require("is_closed", path);

  std::unordered_map<std::string, AccountStats> out;
  while (auto row = csv.next()) {
    const std::string where = path + ":" + std::to_string(csv.record_line());
    AccountStats s;
    s.account_id = std::string(text::trim(detail::field(*row, c_id)));
    if (s.account_id.empty()) throw DataError(where + ": empty account_id");
    auto created = parse_utc(text::trim(detail::field(*row, c_created)));
    if (!created) throw DataError(where + ": bad created_at timestamp");
    s.created_at = *created;
    auto num = [&](size_t col, const char* name) {
      auto v = detail::parse_int(detail::field(*row, col));
      if (!v || *v < 0) throw DataError(where + ": " + name + " must be a non-negative integer");
      return *v;
    };
    s.favourites = num(c_fav, "favourites");
    s.followers = num(c_fol, "followers");
    s.following = num(c_ing, "following");
    s.listed = num(c_lst, "listed");
    s.posts = num(c_post, "posts");
    auto closed = detail::parse_bool(detail::field(*row, c_closed));
    if (!closed) throw DataError(where + ": is_closed must be boolean");
    s.is_closed = *closed;
    s.age_days = std::max<std::int64_t>(0, (reference - s.created_at) / 86400);
    if (!out.emplace(s.account_id, s).second)
      throw DataError(where + ": duplicate account_id '" + s.account_id + "'");
  }
  return out;
}

struct IngestResult {
  std::vector<Tweet> tweets;
  IngestCounters counters;
};

// Line-delimited JSON ingest. Fields: id, author_id, text, created_at
// (ISO-8601 UTC), in_reply_to_account, in_reply_to_tweet, is_retweet.
// Malformed lines and out-of-window records are counted and skipped; the
// whole ingest only aborts when the file is unreadable or more than half
// the lines are malformed.
inline IngestResult ingest_tweets(const std::string& path, const TimeWindow& window) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open tweets file: " + path);

  IngestResult result;
  std::unordered_set<std::uint64_t> seen_ids;
  std::string line;

  auto get_string_id = [](const nlohmann::json& v) -> std::optional<std::string> {
    if (v.is_string()) {
      auto s = v.get<std::string>();
      return s.empty() ? std::nullopt : std::optional<std::string>(std::move(s));
    }
    if (v.is_number_unsigned()) return std::to_string(v.get<std::uint64_t>());
    if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
    return std::nullopt;
  };
  auto get_u64 = [](const nlohmann::json& v) -> std::optional<std::uint64_t> {
    if (v.is_number_unsigned()) return v.get<std::uint64_t>();
    if (v.is_string()) return detail::parse_u64(v.get<std::string>());
    return std::nullopt;
  };

  while (std::getline(in, line)) {
    if (text::trim(line).empty()) continue;
    ++result.counters.lines;

    auto fail = [&]() { ++result.counters.malformed; };
    nlohmann::json j = nlohmann::json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded() || !j.is_object()) {
      fail();
      continue;
    }

    Tweet t;
    auto id = j.contains("id") ? get_u64(j["id"]) : std::nullopt;
    auto author = j.contains("author_id") ? get_string_id(j["author_id"]) : std::nullopt;
    if (!id || !author || !j.contains("text") || !j["text"].is_string() ||
        !j.contains("created_at") || !j["created_at"].is_string()) {
      fail();
      continue;
    }
    t.id = *id;
    t.author_id = std::move(*author);
    t.text = j["text"].get<std::string>();
    if (text::trim(t.text).empty()) {
      fail();
      continue;
    }
    auto created = parse_utc(j["created_at"].get<std::string>());
    if (!created) {
      fail();
      continue;
    }
    t.created_at = *created;
    if (j.contains("in_reply_to_account") && !j["in_reply_to_account"].is_null()) {
      auto v = get_string_id(j["in_reply_to_account"]);
      if (!v) {
        fail();
        continue;
      }
      t.reply_to_account = std::move(*v);
    }
    if (j.contains("in_reply_to_tweet") && !j["in_reply_to_tweet"].is_null()) {
      auto v = get_u64(j["in_reply_to_tweet"]);
      if (!v) {
        fail();
        continue;
      }
      t.reply_to_tweet = *v;
    }
    if (j.contains("is_retweet")) {
      if (!j["is_retweet"].is_boolean()) {
        fail();
        continue;
      }
      t.is_retweet = j["is_retweet"].get<bool>();
    }

    if (!window.contains(t.created_at)) {
      ++result.counters.out_of_window;
      continue;
    }
    if (!seen_ids.insert(t.id).second) {
      ++result.counters.duplicate_ids;
      continue;
    }
    result.tweets.push_back(std::move(t));
    ++result.counters.loaded;
  }

  if (result.counters.lines > 0 && result.counters.malformed * 2 > result.counters.lines)
    throw DataError(path + ": " + std::to_string(result.counters.malformed) + " of " +
                    std::to_string(result.counters.lines) +
                    " lines malformed (more than half); refusing to continue");
  return result;
}

// Immutable after construction; safe to share across read-only workers.
class Corpus {
 public:
  Corpus() = default;
  Corpus(std::vector<Tweet> tweets, std::unordered_map<std::string, AccountStats> accounts,
         Roster roster, TimeWindow window, IngestCounters counters = {})
      : tweets_(std::move(tweets)),
        accounts_(std::move(accounts)),
        roster_(std::move(roster)),
        window_(window),
        counters_(counters) {
    by_id_.reserve(tweets_.size());
    for (std::uint32_t i = 0; i < tweets_.size(); ++i) by_id_.emplace(tweets_[i].id, i);
  }

  const std::vector<Tweet>& tweets() const { return tweets_; }

  const Tweet* tweet_by_id(std::uint64_t id) const {
    auto it = by_id_.find(id);
    return it == by_id_.end() ? nullptr : &tweets_[it->second];
  }

  std::optional<std::uint32_t> index_of(std::uint64_t id) const {
    auto it = by_id_.find(id);
    if (it == by_id_.end()) return std::nullopt;
    return it->second;
  }

  const std::unordered_map<std::string, AccountStats>& accounts() const { return accounts_; }

  const AccountStats* account(std::string_view id) const {
    auto it = accounts_.find(std::string(id));
    return it == accounts_.end() ? nullptr : &it->second;
  }

  const Roster& roster() const { return roster_; }
  const TimeWindow& window() const { return window_; }
  const IngestCounters& counters() const { return counters_; }

 private:
  std::vector<Tweet> tweets_;
  std::unordered_map<std::uint64_t, std::uint32_t> by_id_;
  std::unordered_map<std::string, AccountStats> accounts_;
  Roster roster_;
  TimeWindow window_;
  IngestCounters counters_;
};

// Reply attribution. A tweet is a reply to politician P iff its reply-target
// account resolves to P; retweets never count; each reply belongs to exactly
// one politician. Unresolvable targets are ignored.
struct ReplyIndex {
  std::vector<std::vector<std::uint32_t>> by_politician;  // tweet indices, per roster index
  std::vector<std::optional<std::uint32_t>> target_of;    // per tweet index -> roster index
  std::uint64_t total = 0;

  std::optional<std::uint32_t> target(std::uint32_t tweet_index) const {
    return tweet_index < target_of.size() ? target_of[tweet_index] : std::nullopt;
  }
};

inline ReplyIndex link_replies(const Corpus& corpus) {
  ReplyIndex index;
  index.by_politician.resize(corpus.roster().size());
  index.target_of.resize(corpus.tweets().size());
  for (std::uint32_t i = 0; i < corpus.tweets().size(); ++i) {
    const Tweet& t = corpus.tweets()[i];
    if (t.is_retweet || !t.reply_to_account) continue;
    auto who = corpus.roster().resolve_account(*t.reply_to_account);
    if (!who) continue;
    index.by_politician[*who].push_back(i);
    index.target_of[i] = *who;
    ++index.total;
  }
  return index;
}

}  // namespace jeer

#endif  // JEER_CORPUS_HPP_
