// SPDX-License-Identifier: Apache-2.0
#ifndef JEER_METRICS_HPP_
#define JEER_METRICS_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "jeer/annotate.hpp"
#include "jeer/corpus.hpp"

namespace jeer {

// Targetedness t = a / (2r - 1): a abusive tweets spread over r distinct
// recipients. Dividing by 2r-1 deflates the score of senders who spread the
// same number of tweets over more people.
inline double targetedness(std::uint64_t abusive_count, std::uint64_t recipients) {
  if (recipients < 1 || abusive_count < recipients)
    throw std::invalid_argument("targetedness: need 1 <= recipients <= abusive_count");
  return double(abusive_count) / double(2 * recipients - 1);
}

enum class AbuserGroup : std::uint8_t { targeted, broad, responsive };

inline std::string_view to_string(AbuserGroup g) {
  switch (g) {
    case AbuserGroup::targeted: return "targeted";
    case AbuserGroup::broad: return "broad";
    case AbuserGroup::responsive: return "responsive";
  }
  return "?";
}

// The t = 1 boundary is decided on integers (a == 2r - 1), so no float
// rounding can misclassify a boundary account.
inline AbuserGroup classify_targetedness(std::uint64_t abusive_count, std::uint64_t recipients) {
  if (recipients < 1 || abusive_count < recipients)
    throw std::invalid_argument("classify_targetedness: need 1 <= recipients <= abusive_count");
  const std::uint64_t divisor = 2 * recipients - 1;
  if (abusive_count > divisor) return AbuserGroup::targeted;
  if (abusive_count < divisor) return AbuserGroup::broad;
  return AbuserGroup::responsive;
}

struct AbuserProfile {
  std::string account_id;
  std::uint64_t abusive_count = 0;  // abusive replies to roster members
  std::uint64_t recipients = 0;     // distinct roster targets among those
  double targetedness = 0.0;
  AbuserGroup group = AbuserGroup::responsive;
  std::optional<AccountStats> stats;  // absent when the account file lacks the account
};

// Accounts that sent at least `min_abusive` abusive replies to roster
// members. Recipients are counted over abusive replies only: the metric
// describes how abuse is spread, not general activity.
inline std::vector<AbuserProfile> classify_abusers(const AnnotatedCorpus& annotated,
                                                   const Corpus& corpus,
                                                   std::uint64_t min_abusive = 3) {
  struct Accum {
    std::uint64_t count = 0;
    std::set<std::uint32_t> targets;
  };
  std::map<std::string, Accum> per_account;  // ordered: deterministic output
  for (std::uint32_t i = 0; i < annotated.rows.size(); ++i) {
    const Annotation& a = annotated.rows[i];
    if (!a.abusive || !a.target) continue;
    Accum& acc = per_account[corpus.tweets()[i].author_id];
    ++acc.count;
    acc.targets.insert(*a.target);
  }

  std::vector<AbuserProfile> out;
  for (const auto& [account_id, acc] : per_account) {
    if (acc.count < min_abusive) continue;
    AbuserProfile p;
    p.account_id = account_id;
    p.abusive_count = acc.count;
    p.recipients = acc.targets.size();
    p.targetedness = targetedness(p.abusive_count, p.recipients);
    p.group = classify_targetedness(p.abusive_count, p.recipients);
    if (const AccountStats* s = corpus.account(account_id)) p.stats = *s;
    out.push_back(std::move(p));
  }
  return out;
}

struct MeanSd {
  double mean = 0.0;
  double sd = 0.0;  // sample standard deviation (n-1), 0 when n < 2
  size_t n = 0;
};

inline MeanSd mean_sd(const std::vector<double>& xs) {
  MeanSd m;
  m.n = xs.size();
  if (xs.empty()) return m;
  double s = 0;
  for (double x : xs) s += x;
  m.mean = s / double(xs.size());
  if (xs.size() < 2) return m;
  double ss = 0;
  for (double x : xs) ss += (x - m.mean) * (x - m.mean);
  m.sd = std::sqrt(ss / double(xs.size() - 1));
  return m;
}

struct GroupAccountStats {
  AbuserGroup group;
  size_t accounts = 0;    // profiles in the group
  size_t with_stats = 0;  // of which have account statistics
  MeanSd age_days, favourites, followers, following, listed, posts;
};

inline std::vector<GroupAccountStats> group_account_stats(const std::vector<AbuserProfile>& profiles) {
  std::vector<GroupAccountStats> out;
  for (AbuserGroup g : {AbuserGroup::targeted, AbuserGroup::broad, AbuserGroup::responsive}) {
    GroupAccountStats row;
    row.group = g;
    std::vector<double> age, fav, fol, ing, lst, post;
    for (const auto& p : profiles) {
      if (p.group != g) continue;
      ++row.accounts;
      if (!p.stats) continue;
      ++row.with_stats;
      age.push_back(double(p.stats->age_days));
      fav.push_back(double(p.stats->favourites));
      fol.push_back(double(p.stats->followers));
      ing.push_back(double(p.stats->following));
      lst.push_back(double(p.stats->listed));
      post.push_back(double(p.stats->posts));
    }
    row.age_days = mean_sd(age);
    row.favourites = mean_sd(fav);
    row.followers = mean_sd(fol);
    row.following = mean_sd(ing);
    row.listed = mean_sd(lst);
    row.posts = mean_sd(post);
    out.push_back(std::move(row));
  }
  return out;
}

struct PoliticianProfile {
  std::uint32_t roster_index = 0;
  std::string handle;
  std::string name;
  std::string party;
  Gender gender = Gender::unspecified;
  std::optional<bool> bame;
  bool is_mp = false;
  bool is_candidate = false;
  std::optional<double> prominence;
  std::uint64_t replies_received = 0;
  std::uint64_t abusive_replies = 0;
  double abuse_proportion = 0.0;  // abusive / received, 0 when no replies
  std::uint64_t tweets_sent = 0;  // tweets authored inside the corpus window
};

inline std::vector<PoliticianProfile> politician_profiles(const AnnotatedCorpus& annotated,
                                                          const Corpus& corpus,
                                                          const ReplyIndex& replies) {
  const auto& members = corpus.roster().members();
  std::vector<PoliticianProfile> out(members.size());
  std::unordered_map<std::string, std::uint32_t, StringHash, StringEq> by_account;
  for (std::uint32_t i = 0; i < members.size(); ++i) {
    PoliticianProfile& p = out[i];
    p.roster_index = i;
    p.handle = members[i].handle;
    p.name = members[i].name;
    p.party = members[i].party;
    p.gender = members[i].gender;
    p.bame = members[i].bame;
    p.is_mp = members[i].is_mp;
    p.is_candidate = members[i].is_candidate;
    p.prominence = members[i].prominence;
    by_account.emplace(members[i].account_id, i);
  }
  for (std::uint32_t i = 0; i < corpus.tweets().size(); ++i) {
    auto it = by_account.find(corpus.tweets()[i].author_id);
    if (it != by_account.end()) ++out[it->second].tweets_sent;
  }
  for (std::uint32_t m = 0; m < members.size(); ++m) {
    PoliticianProfile& p = out[m];
    p.replies_received = replies.by_politician[m].size();
    for (std::uint32_t ti : replies.by_politician[m])
      if (annotated.rows[ti].abusive) ++p.abusive_replies;
    p.abuse_proportion =
        p.replies_received ? double(p.abusive_replies) / double(p.replies_received) : 0.0;
  }
  return out;
}

// Outlier-removal protocol: drop the named handles before computing group
// statistics. Handles are normalized the way the roster loader does.
inline std::vector<PoliticianProfile> exclude_handles(std::vector<PoliticianProfile> profiles,
                                                      const std::vector<std::string>& handles) {
  std::unordered_set<std::string, StringHash, StringEq> drop;
  for (const auto& h : handles) drop.insert(normalize_handle(h));
  std::erase_if(profiles, [&](const PoliticianProfile& p) { return drop.count(p.handle) > 0; });
  return profiles;
}

// Sunburst shading: white is under 1%, black is 8% and above.
inline int proportion_band(double proportion) {
  const double pct = proportion * 100.0;
  if (pct < 0) return 0;
  return std::min(static_cast<int>(pct), 8);
}

struct TopicRate {
  std::uint32_t topic_index = 0;
  std::uint64_t mentions = 0;         // in politicians' own tweets
  std::uint64_t abusive_replies = 0;  // abusive replies to tweets carrying the mention
  double rate = 0.0;
  bool meets_min = false;  // at least min_abusive_replies abusive replies
};

struct TopicRateReport {
  std::vector<TopicRate> rows;  // topics with at least one mention, taxonomy order
  double mean_rate = 0.0;       // unweighted mean over rows
  std::uint64_t min_abusive_replies = 0;
};

// Abusive replies per topic mention. Mentions are counted per occurrence in
// politicians' own tweets; an abusive reply counts once per distinct topic
// of the tweet it answers.
inline TopicRateReport topic_abuse_rates(const AnnotatedCorpus& annotated, const Corpus& corpus,
                                         size_t taxonomy_size,
                                         std::uint64_t min_abusive_replies = 50) {
  std::unordered_set<std::string, StringHash, StringEq> roster_accounts;
  for (const auto& m : corpus.roster().members()) roster_accounts.insert(m.account_id);

  std::vector<std::uint64_t> mentions(taxonomy_size, 0);
  std::vector<std::uint64_t> abusive(taxonomy_size, 0);

  for (std::uint32_t i = 0; i < corpus.tweets().size(); ++i) {
    if (!roster_accounts.count(corpus.tweets()[i].author_id)) continue;
    for (const TopicHit& h : annotated.rows[i].topic_mentions) ++mentions[h.topic_index];
  }
  for (std::uint32_t i = 0; i < corpus.tweets().size(); ++i) {
    const Annotation& a = annotated.rows[i];
    const Tweet& t = corpus.tweets()[i];
    if (!a.abusive || t.is_retweet || !t.reply_to_tweet) continue;
    auto orig = corpus.index_of(*t.reply_to_tweet);
    if (!orig) continue;
    if (!roster_accounts.count(corpus.tweets()[*orig].author_id)) continue;
    std::set<std::uint32_t> topics;
    for (const TopicHit& h : annotated.rows[*orig].topic_mentions) topics.insert(h.topic_index);
    for (std::uint32_t topic : topics) ++abusive[topic];
  }

  TopicRateReport report;
  report.min_abusive_replies = min_abusive_replies;
  double sum = 0;
  for (std::uint32_t topic = 0; topic < taxonomy_size; ++topic) {
    if (mentions[topic] == 0) continue;
    TopicRate row;
    row.topic_index = topic;
    row.mentions = mentions[topic];
    row.abusive_replies = abusive[topic];
    row.rate = double(row.abusive_replies) / double(row.mentions);
    row.meets_min = row.abusive_replies >= min_abusive_replies;
    sum += row.rate;
    report.rows.push_back(row);
  }
  if (!report.rows.empty()) report.mean_rate = sum / double(report.rows.size());
  return report;
}

// Topic mention totals for the figure data: abusive replies to politicians
// versus the whole corpus.
struct TopicMentionCounts {
  std::vector<std::uint64_t> in_abusive_replies;
  std::vector<std::uint64_t> in_all_tweets;
};

inline TopicMentionCounts topic_mention_counts(const AnnotatedCorpus& annotated,
                                               size_t taxonomy_size) {
  TopicMentionCounts out;
  out.in_abusive_replies.assign(taxonomy_size, 0);
  out.in_all_tweets.assign(taxonomy_size, 0);
  for (const Annotation& a : annotated.rows) {
    for (const TopicHit& h : a.topic_mentions) {
      ++out.in_all_tweets[h.topic_index];
      if (a.abusive && a.target) ++out.in_abusive_replies[h.topic_index];
    }
  }
  return out;
}

// Topic interest vector: one dimension per taxonomy topic, counting the
// account's topic mentions over at most `post_cap` of its most recent posts.
inline std::vector<double> topic_vector(const std::vector<const Annotation*>& posts,
                                        size_t taxonomy_size, size_t post_cap = 3000) {
  std::vector<double> v(taxonomy_size, 0.0);
  size_t used = 0;
  for (const Annotation* a : posts) {
    if (used == post_cap) break;
    ++used;
    for (const TopicHit& h : a->topic_mentions) v[h.topic_index] += 1.0;
  }
  return v;
}

// Vectors for the profiled abuser accounts, over all their tweets in the
// corpus (most recent first, capped). Keyed by account id.
inline std::map<std::string, std::vector<double>> abuser_topic_vectors(
    const AnnotatedCorpus& annotated, const Corpus& corpus,
    const std::vector<AbuserProfile>& abusers, size_t taxonomy_size, size_t post_cap = 3000) {
  std::unordered_set<std::string, StringHash, StringEq> wanted;
  for (const auto& p : abusers) wanted.insert(p.account_id);

  std::unordered_map<std::string, std::vector<std::uint32_t>, StringHash, StringEq> posts;
  for (std::uint32_t i = 0; i < corpus.tweets().size(); ++i) {
    const auto& author = corpus.tweets()[i].author_id;
    if (wanted.count(author)) posts[author].push_back(i);
  }

  std::map<std::string, std::vector<double>> out;
  for (const auto& p : abusers) {
    auto& indices = posts[p.account_id];
    std::sort(indices.begin(), indices.end(), [&](std::uint32_t x, std::uint32_t y) {
      const Tweet& tx = corpus.tweets()[x];
      const Tweet& ty = corpus.tweets()[y];
      if (tx.created_at != ty.created_at) return tx.created_at > ty.created_at;
      return tx.id > ty.id;
    });
    std::vector<const Annotation*> rows;
    rows.reserve(indices.size());
    for (std::uint32_t i : indices) rows.push_back(&annotated.rows[i]);
    out.emplace(p.account_id, topic_vector(rows, taxonomy_size, post_cap));
  }
  return out;
}

// Authored/abusive tweet totals per account; used to pick the non-abusive
// contrast group.
struct AccountActivity {
  std::uint64_t authored = 0;
  std::uint64_t abusive = 0;
};

inline std::unordered_map<std::string, AccountActivity, StringHash, StringEq> account_activity(
    const AnnotatedCorpus& annotated, const Corpus& corpus) {
  std::unordered_map<std::string, AccountActivity, StringHash, StringEq> out;
  for (std::uint32_t i = 0; i < corpus.tweets().size(); ++i) {
    AccountActivity& a = out[corpus.tweets()[i].author_id];
    ++a.authored;
    if (annotated.rows[i].abusive) ++a.abusive;
  }
  return out;
}

// Account-age distribution per abuser group, plus a "none" row for accounts
// that tweeted in the corpus without any abusive tweet (roster members
// excluded). Feeds the account-age timeline figure.
struct AgeTimelineRow {
  std::string group;
  std::int64_t age_years = 0;
  std::uint64_t count = 0;
  double percent = 0.0;  // of the group's accounts
};

inline std::vector<AgeTimelineRow> account_age_timeline(const std::vector<AbuserProfile>& abusers,
                                                        const AnnotatedCorpus& annotated,
                                                        const Corpus& corpus) {
  std::map<std::string, std::map<std::int64_t, std::uint64_t>> hist;
  std::map<std::string, std::uint64_t> totals;

  for (const auto& p : abusers) {
    if (!p.stats) continue;
    const std::string g(to_string(p.group));
    ++hist[g][p.stats->age_days / 365];
    ++totals[g];
  }

  std::unordered_set<std::string, StringHash, StringEq> roster_accounts;
  for (const auto& m : corpus.roster().members()) roster_accounts.insert(m.account_id);
  auto activity = account_activity(annotated, corpus);
  for (const auto& [account_id, act] : activity) {
    if (act.authored == 0 || act.abusive > 0) continue;
    if (roster_accounts.count(account_id)) continue;
    const AccountStats* s = corpus.account(account_id);
    if (!s) continue;
    ++hist["none"][s->age_days / 365];
    ++totals["none"];
  }

  std::vector<AgeTimelineRow> out;
  for (const auto& [group, buckets] : hist) {
    for (const auto& [years, count] : buckets) {
      AgeTimelineRow row;
      row.group = group;
      row.age_years = years;
      row.count = count;
      row.percent = totals[group] ? 100.0 * double(count) / double(totals[group]) : 0.0;
      out.push_back(std::move(row));
    }
  }
  return out;
}

}  // namespace jeer

#endif  // JEER_METRICS_HPP_
