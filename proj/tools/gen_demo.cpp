// SPDX-License-Identifier: Apache-2.0
//
// Deterministic generator for the bundled demonstration corpus: a roster of
// 20 fictional politicians, ~2,000 tweets in the 2017 window, 60 abusive
// accounts split across the three targetedness groups, and account
// statistics for every author. Rerunning always produces identical files.

#include <array>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "jeer/csv.hpp"
#include "jeer/timeutil.hpp"

namespace fs = std::filesystem;
using jeer::UtcSeconds;

namespace {

constexpr std::uint64_t kSeed = 1337;
const UtcSeconds kFrom = *jeer::parse_utc("2017-04-07T00:00:00Z");
const UtcSeconds kTo = *jeer::parse_utc("2017-05-07T23:59:59Z");

struct Politician {
  const char* handle;
  const char* name;
  const char* party;
  const char* gender;
  const char* bame;  // "" = unknown
  bool is_mp;
  bool is_candidate;
  const char* prominence;  // "" = none
};

// 14 MPs (10 of them re-standing) and 6 new candidates.
const std::array<Politician, 20> kRoster = {{
    {"avance", "Alice Vance", "Conservative", "female", "false", true, true, "82000"},
    {"bmorleymp", "Brian Morley", "Conservative", "male", "false", true, true, "64000"},
    {"cfaulkner", "Carol Faulkner", "Conservative", "female", "false", true, false, ""},
    {"dhartley", "David Hartley", "Conservative", "male", "false", true, true, "17500"},
    {"epatelmp", "Esha Patel", "Conservative", "female", "true", true, true, "9100"},
    {"fgrangemp", "Frank Grange", "Conservative", "male", "false", true, false, ""},
    {"gquinn2017", "Grace Quinn", "Conservative", "female", "false", false, true, ""},
    {"hobrienmp", "Helen O'Brien", "Labour", "female", "false", true, true, "51000"},
    {"iadeyemi", "Isaac Adeyemi", "Labour", "male", "true", true, true, "12300"},
    {"jwhitfield", "Janet Whitfield", "Labour", "female", "false", true, false, ""},
    {"kross_mp", "Keith Ross", "Labour", "male", "false", true, true, "7800"},
    {"lsharma", "Leela Sharma", "Labour", "female", "true", false, true, ""},
    {"mbyrne2017", "Martin Byrne", "Labour", "male", "false", false, true, ""},
    {"ncampbellmp", "Nina Campbell", "Scottish National Party", "female", "false", true, true,
     "23000"},
    {"omacrae", "Owen MacRae", "Scottish National Party", "male", "false", true, true, "5400"},
    {"pstewart17", "Paula Stewart", "Scottish National Party", "female", "false", false, true, ""},
    {"qhollis", "Quentin Hollis", "Liberal Democrat", "male", "false", true, false, ""},
    {"rnakamura", "Rose Nakamura", "Liberal Democrat", "female", "true", true, true, "3900"},
    {"sdrummond", "Stuart Drummond", "Liberal Democrat", "male", "false", false, true, ""},
    {"tewing", "Tessa Ewing", "Liberal Democrat", "female", "false", true, true, "2100"},
}};

// Politician tweet templates; topic terms come from the bundled topic lexicon.
const std::vector<const char*> kPoliticianTweets = {
    "Our plan for the economy: cut the deficit and back small business.",
    "The nhs needs investment, not cuts. We will fund our hospitals properly.",
    "Strong borders and a fair immigration system keep communities together.",
    "More police on our streets and real action on knife crime.",
    "Brexit must deliver the best deal for Britain in europe.",
    "We will freeze vat and keep income tax low for working families.",
    "Standing up for scotland in every negotiation.",
    "We will fund our schools and give teachers the support they deserve.",
    "Real action on terrorism to keep our country safe.",
    "New jobs and higher wages for every region, not just the capital.",
    "Social care must be fixed for good. Our nurses deserve better.",
    "Our manifesto is fully costed: no surprise taxes, honest numbers.",
    "Join me on the doorstep tomorrow! #ge2017",
    "Proud to meet apprentices this morning. Employment is rising here.",
    "The single market question deserves a straight answer.",
    "Grateful for the welcome in the high street today.",
};

const std::vector<const char*> kBenignReplies = {
    "Good luck tomorrow!",
    "Totally agree with you on this.",
    "What about the nhs waiting lists in our area?",
    "Will you commit to more funding for schools?",
    "Thanks for visiting our town today.",
    "Can you publish the full costings please?",
    "Looking forward to the debate tonight.",
    "How does this affect pensioners?",
    "Great speech this morning, very clear.",
    "Where do you stand on brexit exactly?",
    "Our food bank would love a visit from you.",
    "Fair point, although the numbers look optimistic.",
};

// Abusive reply templates; every one contains a bundled abuse term.
const std::vector<const char*> kAbusiveReplies = {
    "You are an absolute idiot.",
    "Resign, you coward.",
    "What a complete moron you are.",
    "Utter scum, the lot of you.",
    "You liar, nobody believes a word.",
    "Total muppet, stay away from my town.",
    "Pathetic clown, give it up.",
    "You numpty, read your own manifesto.",
    "Shameless traitor to this country.",
    "Useless halfwit.",
    "#killthewitch",
    "You dick, have you even read the report?",
};

// Topic colour for each abuser; appended to some abusive replies and used
// for their own (non-abusive) posts.
struct TopicFlavour {
  const char* phrase;
  const char* own_post;
};
const std::vector<TopicFlavour> kFlavours = {
    {"Open borders are wrecking this country.",
     "Another day, another lecture about immigration and borders."},
    {"You sold out the nhs.", "The nhs is the only issue that matters this election."},
    {"Brexit betrayal, plain and simple.", "No deal is better than a bad deal for europe."},
    {"The economy is ruined thanks to you.", "Watch the deficit, not the slogans. Economy first."},
    {"Terrorism is out of control on your watch.",
     "National security should be the first duty of government. Terrorism worries me."},
    {"Crime is soaring and you do nothing.", "More police, less talk. Crime and policing matter."},
    {"Scotland deserves better than you.", "Holyrood should decide for scotland, simple as that."},
    {"Our schools are falling apart because of you.",
     "Class sizes up again at our local schools. Teachers deserve better."},
    {"Tax the rich, stop squeezing the rest of us.", "Income tax and vat hit working people hardest."},
    {"Where are the jobs you promised?", "Zero hours contracts are no way to run employment."},
};

struct AccountRow {
  std::string id;
  UtcSeconds created;
  std::int64_t favourites, followers, following, listed, posts;
  bool closed;
};

class Generator {
 public:
  explicit Generator(const std::string& out_dir) : out_dir_(out_dir), rng_(kSeed) {}

  void run() {
    fs::create_directories(out_dir_);
    write_roster();
    make_politician_tweets();
    make_benign_repliers();
    make_abusers();
    make_retweets();
    write_tweets();
    write_accounts();
    std::cout << "wrote " << tweets_.size() << " tweets, " << kRoster.size()
              << " roster entries, " << accounts_.size() << " account rows to " << out_dir_
              << "\n";
  }

 private:
  UtcSeconds stamp() { return kFrom + static_cast<UtcSeconds>(rng_() % (kTo - kFrom)); }

  std::uint64_t next_id() { return id_counter_++; }

  std::int64_t range(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(rng_() % std::uint64_t(hi - lo + 1));
  }

  void add_tweet(std::uint64_t id, const std::string& author, const std::string& text,
                 UtcSeconds at, const std::string& reply_acc = "", std::uint64_t reply_tweet = 0,
                 bool retweet = false) {
    nlohmann::json j;
    j["id"] = id;
    j["author_id"] = author;
    j["text"] = text;
    j["created_at"] = jeer::format_utc(at);
    if (!reply_acc.empty()) {
      j["in_reply_to_account"] = reply_acc;
      j["in_reply_to_tweet"] = reply_tweet;
    } else {
      j["in_reply_to_account"] = nullptr;
      j["in_reply_to_tweet"] = nullptr;
    }
    j["is_retweet"] = retweet;
    tweets_.push_back(j.dump());
  }

  void write_roster() {
    std::ofstream out(fs::path(out_dir_) / "roster.csv", std::ios::binary);
    jeer::write_csv_row(out, {"handle", "name", "party", "gender", "bame", "is_mp",
                              "is_candidate", "prominence"});
    for (const auto& p : kRoster)
      jeer::write_csv_row(out, {p.handle, p.name, p.party, p.gender, p.bame,
                                p.is_mp ? "true" : "false", p.is_candidate ? "true" : "false",
                                p.prominence});
  }

  void make_politician_tweets() {
    tweets_by_politician_.resize(kRoster.size());
    for (size_t m = 0; m < kRoster.size(); ++m) {
      const auto& p = kRoster[m];
      const int n = static_cast<int>(range(12, 18));
      for (int i = 0; i < n; ++i) {
        const std::uint64_t id = next_id();
        add_tweet(id, p.handle, kPoliticianTweets[rng_() % kPoliticianTweets.size()], stamp());
        politician_tweets_.emplace_back(id, p.handle);
        tweets_by_politician_[m].push_back(id);
      }
      accounts_.push_back(AccountRow{p.handle,
                                     *jeer::parse_utc("2009-06-01T00:00:00Z") +
                                         static_cast<UtcSeconds>(rng_() % (86400LL * 1200)),
                                     range(2000, 40000), range(8000, 250000), range(300, 4000),
                                     range(50, 900), range(4000, 40000), false});
    }
  }

  std::pair<std::uint64_t, std::string> random_politician_tweet() {
    return politician_tweets_[rng_() % politician_tweets_.size()];
  }

  void make_benign_repliers() {
    for (int u = 0; u < 120; ++u) {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "user%03d", u + 1);
      const std::string id = buf;
      const int n = static_cast<int>(range(8, 15));
      for (int i = 0; i < n; ++i) {
        auto [tid, handle] = random_politician_tweet();
        add_tweet(next_id(), id, kBenignReplies[rng_() % kBenignReplies.size()], stamp(), handle,
                  tid);
      }
      accounts_.push_back(AccountRow{id,
                                     *jeer::parse_utc("2010-01-01T00:00:00Z") +
                                         static_cast<UtcSeconds>(rng_() % (86400LL * 2500)),
                                     range(400, 20000), range(50, 3500), range(80, 1800),
                                     range(0, 90), range(800, 30000), u < 2});
    }
  }

  void make_abusers() {
    // (abusive tweets, distinct recipients) per group: 20 targeted, 20
    // responsive (a == 2r-1), 20 broad.
    std::vector<std::pair<int, int>> shapes;
    for (int i = 0; i < 20; ++i) shapes.emplace_back(3 + i % 6, 1 + (i % 6) / 4);  // targeted
    for (int i = 0; i < 20; ++i) {
      const int r = 2 + i % 4;  // responsive
      shapes.emplace_back(2 * r - 1, r);
    }
    for (int i = 0; i < 20; ++i) {
      const int r = 3 + i % 4;  // broad
      shapes.emplace_back(r + (i % 2), r);
    }

    for (size_t t = 0; t < shapes.size(); ++t) {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "troll%03d", static_cast<int>(t) + 1);
      const std::string id = buf;
      auto [abusive, recipients] = shapes[t];
      // a dominant interest plus a weaker secondary one
      const TopicFlavour& flavour = kFlavours[t % kFlavours.size()];
      const TopicFlavour& secondary = kFlavours[(t + 3) % kFlavours.size()];

      // Fixed recipient set, then abusive replies spread over it with every
      // recipient hit at least once.
      std::vector<size_t> targets;
      while (targets.size() < size_t(recipients)) {
        size_t pick = rng_() % kRoster.size();
        bool dup = false;
        for (size_t existing : targets) dup |= (existing == pick);
        if (!dup) targets.push_back(pick);
      }
      for (int i = 0; i < abusive; ++i) {
        const size_t who = targets[size_t(i) % targets.size()];
        const auto& target = kRoster[who];
        std::string text = kAbusiveReplies[rng_() % kAbusiveReplies.size()];
        if (rng_() % 2)
          text += std::string(" ") + (rng_() % 4 == 0 ? secondary.phrase : flavour.phrase);
        const auto& pool = tweets_by_politician_[who];
        add_tweet(next_id(), id, text, stamp(), target.handle, pool[rng_() % pool.size()]);
      }
      const int own = static_cast<int>(range(4, 10));
      for (int i = 0; i < own; ++i)
        add_tweet(next_id(), id, rng_() % 3 == 0 ? secondary.own_post : flavour.own_post, stamp());

      const bool targeted_group = t < 20;
      const UtcSeconds created =
          *jeer::parse_utc(targeted_group ? "2016-02-01T00:00:00Z" : "2013-06-01T00:00:00Z") +
          static_cast<UtcSeconds>(rng_() % (86400LL * (targeted_group ? 380 : 1300)));
      accounts_.push_back(AccountRow{id, created, range(50, 8000), range(5, 600), range(30, 900),
                                     range(0, 25), range(100, 15000), t % 12 == 0});
    }
  }

  void make_retweets() {
    for (int i = 0; i < 100; ++i) {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "user%03d", static_cast<int>(rng_() % 120) + 1);
      auto [tid, handle] = random_politician_tweet();
      (void)tid;
      std::string text = std::string("RT @") + handle + ": " +
                         kPoliticianTweets[rng_() % kPoliticianTweets.size()];
      // Half keep the reply-target field set; retweets must stay out of the
      // reply index either way.
      if (i % 2 == 0) {
        add_tweet(next_id(), buf, text, stamp(), handle, tid, /*retweet=*/true);
      } else {
        add_tweet(next_id(), buf, text, stamp(), "", 0, /*retweet=*/true);
      }
    }
  }

  void write_tweets() {
    std::ofstream out(fs::path(out_dir_) / "tweets.jsonl", std::ios::binary);
    for (const auto& line : tweets_) out << line << '\n';
  }

  void write_accounts() {
    std::ofstream out(fs::path(out_dir_) / "accounts.csv", std::ios::binary);
    jeer::write_csv_row(out, {"account_id", "created_at", "favourites", "followers", "following",
                              "listed", "posts", "is_closed"});
    for (const auto& a : accounts_)
      jeer::write_csv_row(out, {a.id, jeer::format_utc(a.created), std::to_string(a.favourites),
                                std::to_string(a.followers), std::to_string(a.following),
                                std::to_string(a.listed), std::to_string(a.posts),
                                a.closed ? "true" : "false"});
  }

  std::string out_dir_;
  std::mt19937_64 rng_;
  std::uint64_t id_counter_ = 5000001;
  std::vector<std::string> tweets_;
  std::vector<std::pair<std::uint64_t, std::string>> politician_tweets_;
  std::vector<std::vector<std::uint64_t>> tweets_by_politician_;
  std::vector<AccountRow> accounts_;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generate the bundled demonstration corpus"};
  std::string out_dir = "data/demo";
  app.add_option("--out", out_dir, "Output directory")->capture_default_str();
  CLI11_PARSE(app, argc, argv);
  Generator(out_dir).run();
  return 0;
}
