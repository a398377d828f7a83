// SPDX-License-Identifier: Apache-2.0
#ifndef JEER_REPORT_HPP_
#define JEER_REPORT_HPP_

#include <array>
#include <cstdio>
#include <fstream>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "jeer/annotate.hpp"
#include "jeer/corpus.hpp"
#include "jeer/csv.hpp"
#include "jeer/kmeans.hpp"
#include "jeer/metrics.hpp"
#include "jeer/sha256.hpp"
#include "jeer/stats.hpp"
#include "jeer/timeutil.hpp"

namespace jeer {

inline std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

// Presentation rounding for percentages, two decimals (e.g. "4.01").
inline std::string fmt_pct(double fraction) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.2f", fraction * 100.0);
  return buf;
}

namespace detail {

inline std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write file: " + path);
  return out;
}

}  // namespace detail

inline void write_annotations_csv(const std::string& path, const AnnotatedCorpus& annotated,
                                  const Corpus& corpus, const CompiledLexicon& lexicon) {
  auto out = detail::open_out(path);
  write_csv_row(out, {"tweet_id", "abusive", "abuse_terms", "topics", "target"});
  for (const Annotation& a : annotated.rows) {
    std::string terms, topics;
    for (size_t i = 0; i < a.abuse_matches.size(); ++i) {
      if (i) terms += ';';
      terms += lexicon.abuse_terms()[a.abuse_matches[i].term_index].surface;
    }
    for (size_t i = 0; i < a.topic_mentions.size(); ++i) {
      if (i) topics += ';';
      topics += lexicon.taxonomy()[a.topic_mentions[i].topic_index];
    }
    write_csv_row(out, {std::to_string(a.tweet_id), a.abusive ? "1" : "0", terms, topics,
                        a.target ? corpus.roster().members()[*a.target].handle : ""});
  }
}

inline nlohmann::json summary_to_json(const Corpus& corpus, const AnnotationSummary& s,
                                      double mean_topic_rate) {
  nlohmann::json j;
  j["window"]["from"] =
      corpus.window().begin == kMinTime ? "" : format_utc(corpus.window().begin);
  j["window"]["to"] = corpus.window().end == kMaxTime ? "" : format_utc(corpus.window().end);
  j["ingest"]["lines"] = corpus.counters().lines;
  j["ingest"]["loaded"] = corpus.counters().loaded;
  j["ingest"]["malformed"] = corpus.counters().malformed;
  j["ingest"]["out_of_window"] = corpus.counters().out_of_window;
  j["ingest"]["duplicate_ids"] = corpus.counters().duplicate_ids;
  j["collected"] = s.collected;
  j["had_abuse"] = s.had_abuse;
  j["pct_abusive"] = s.abusive_fraction() * 100.0;
  j["replies_to_politicians"]["collected"] = s.replies_to_roster;
  j["replies_to_politicians"]["had_abuse"] = s.abusive_replies_to_roster;
  j["replies_to_politicians"]["pct_abusive"] = s.roster_abusive_fraction() * 100.0;
  j["replies_to_mps"]["collected"] = s.replies_to_mps;
  j["replies_to_mps"]["had_abuse"] = s.abusive_replies_to_mps;
  j["replies_to_mps"]["pct_abusive"] = s.mp_abusive_fraction() * 100.0;
  j["mean_topic_abuse_rate"] = mean_topic_rate;
  return j;
}

inline void write_summary_json(const std::string& path, const Corpus& corpus,
                               const AnnotationSummary& s, double mean_topic_rate) {
  auto out = detail::open_out(path);
  out << summary_to_json(corpus, s, mean_topic_rate).dump(2) << '\n';
}

inline void write_politician_profiles_csv(const std::string& path,
                                          const std::vector<PoliticianProfile>& profiles) {
  auto out = detail::open_out(path);
  write_csv_row(out, {"handle", "name", "party", "gender", "bame", "is_mp", "is_candidate",
                      "prominence", "tweets_sent", "replies_received", "abusive_replies",
                      "abuse_proportion"});
  for (const auto& p : profiles) {
    write_csv_row(out, {p.handle, p.name, p.party, std::string(to_string(p.gender)),
                        p.bame ? (*p.bame ? "true" : "false") : "",
                        p.is_mp ? "true" : "false", p.is_candidate ? "true" : "false",
                        p.prominence ? fmt_double(*p.prominence) : "",
                        std::to_string(p.tweets_sent), std::to_string(p.replies_received),
                        std::to_string(p.abusive_replies), fmt_double(p.abuse_proportion)});
  }
}

// Per-politician feature matrix for external structural-equation fitting:
// abuse volume, attention, engagement, prominence and group attributes.
inline void write_features_csv(const std::string& path,
                               const std::vector<PoliticianProfile>& profiles) {
  auto out = detail::open_out(path);
  write_csv_row(out, {"handle", "abusive_replies", "replies_received", "tweets_sent",
                      "prominence", "gender", "party", "bame"});
  for (const auto& p : profiles) {
    write_csv_row(out, {p.handle, std::to_string(p.abusive_replies),
                        std::to_string(p.replies_received), std::to_string(p.tweets_sent),
                        p.prominence ? fmt_double(*p.prominence) : "",
                        std::string(to_string(p.gender)), p.party,
                        p.bame ? (*p.bame ? "true" : "false") : ""});
  }
}

// Sunburst data: MPs only, shaded by the share of their replies that is
// abusive (band 0 = under 1%, band 8 = 8% and above).
inline void write_sunburst_csv(const std::string& path,
                               const std::vector<PoliticianProfile>& profiles) {
  auto out = detail::open_out(path);
  write_csv_row(out, {"handle", "party", "gender", "abusive_replies", "replies_received",
                      "abuse_proportion", "band"});
  for (const auto& p : profiles) {
    if (!p.is_mp) continue;
    write_csv_row(out, {p.handle, p.party, std::string(to_string(p.gender)),
                        std::to_string(p.abusive_replies), std::to_string(p.replies_received),
                        fmt_double(p.abuse_proportion),
                        std::to_string(proportion_band(p.abuse_proportion))});
  }
}

// Party x gender abuse volume and proportion for the rise figure; one file
// per collection period, labelled by year.
inline void write_rise_csv(const std::string& path,
                           const std::vector<PoliticianProfile>& profiles, int year) {
  auto out = detail::open_out(path);
  write_csv_row(out, {"year", "party", "gender", "politicians", "replies_received",
                      "abusive_replies", "abuse_proportion"});
  std::map<std::pair<std::string, std::string>, std::array<std::uint64_t, 3>> rows;
  for (const auto& p : profiles) {
    if (!p.is_mp) continue;
    auto& acc = rows[{p.party, std::string(to_string(p.gender))}];
    acc[0] += 1;
    acc[1] += p.replies_received;
    acc[2] += p.abusive_replies;
  }
  for (const auto& [key, acc] : rows) {
    const double prop = acc[1] ? double(acc[2]) / double(acc[1]) : 0.0;
    write_csv_row(out, {std::to_string(year), key.first, key.second, std::to_string(acc[0]),
                        std::to_string(acc[1]), std::to_string(acc[2]), fmt_double(prop)});
  }
}

inline void write_abuser_profiles_csv(const std::string& path,
                                      const std::vector<AbuserProfile>& abusers) {
  auto out = detail::open_out(path);
  write_csv_row(out, {"account_id", "abusive_tweets", "recipients", "targetedness", "group",
                      "age_days", "favourites", "followers", "following", "listed", "posts",
                      "is_closed"});
  for (const auto& a : abusers) {
    std::vector<std::string> row{a.account_id, std::to_string(a.abusive_count),
                                 std::to_string(a.recipients), fmt_double(a.targetedness),
                                 std::string(to_string(a.group))};
    if (a.stats) {
      row.insert(row.end(), {std::to_string(a.stats->age_days), std::to_string(a.stats->favourites),
                             std::to_string(a.stats->followers), std::to_string(a.stats->following),
                             std::to_string(a.stats->listed), std::to_string(a.stats->posts),
                             a.stats->is_closed ? "true" : "false"});
    } else {
      row.insert(row.end(), {"", "", "", "", "", "", ""});
    }
    write_csv_row(out, row);
  }
}

inline void write_group_stats_csv(const std::string& path,
                                  const std::vector<GroupAccountStats>& groups) {
  auto out = detail::open_out(path);
  write_csv_row(out, {"group", "accounts", "with_stats", "age_days_mean", "age_days_sd",
                      "favourites_mean", "favourites_sd", "followers_mean", "followers_sd",
                      "following_mean", "following_sd", "listed_mean", "listed_sd", "posts_mean",
                      "posts_sd"});
  for (const auto& g : groups) {
    write_csv_row(out, {std::string(to_string(g.group)), std::to_string(g.accounts),
                        std::to_string(g.with_stats), fmt_double(g.age_days.mean),
                        fmt_double(g.age_days.sd), fmt_double(g.favourites.mean),
                        fmt_double(g.favourites.sd), fmt_double(g.followers.mean),
                        fmt_double(g.followers.sd), fmt_double(g.following.mean),
                        fmt_double(g.following.sd), fmt_double(g.listed.mean),
                        fmt_double(g.listed.sd), fmt_double(g.posts.mean),
                        fmt_double(g.posts.sd)});
  }
}

inline void write_topic_rates_csv(const std::string& path, const TopicRateReport& report,
                                  const std::vector<std::string>& taxonomy) {
  auto out = detail::open_out(path);
  write_csv_row(out, {"topic", "mentions", "abusive_replies", "rate", "meets_min_abusive"});
  for (const auto& row : report.rows) {
    write_csv_row(out, {taxonomy[row.topic_index], std::to_string(row.mentions),
                        std::to_string(row.abusive_replies), fmt_double(row.rate),
                        row.meets_min ? "true" : "false"});
  }
}

inline void write_topic_mentions_csv(const std::string& path, const TopicMentionCounts& counts,
                                     const std::vector<std::string>& taxonomy) {
  auto out = detail::open_out(path);
  write_csv_row(out, {"topic", "mentions_in_abusive_replies", "mentions_in_all_tweets"});
  for (size_t i = 0; i < taxonomy.size(); ++i) {
    write_csv_row(out, {taxonomy[i], std::to_string(counts.in_abusive_replies[i]),
                        std::to_string(counts.in_all_tweets[i])});
  }
}

inline void write_age_timeline_csv(const std::string& path,
                                   const std::vector<AgeTimelineRow>& rows) {
  auto out = detail::open_out(path);
  write_csv_row(out, {"group", "age_years", "accounts", "percent_of_group"});
  for (const auto& r : rows) {
    write_csv_row(out, {r.group, std::to_string(r.age_years), std::to_string(r.count),
                        fmt_double(r.percent)});
  }
}

// One row per profiled abuser, one column per taxonomy topic.
inline void write_abuser_topic_vectors_csv(const std::string& path,
                                           const std::map<std::string, std::vector<double>>& vectors,
                                           const std::vector<std::string>& taxonomy) {
  auto out = detail::open_out(path);
  std::vector<std::string> header{"account_id"};
  header.insert(header.end(), taxonomy.begin(), taxonomy.end());
  write_csv_row(out, header);
  for (const auto& [id, v] : vectors) {
    std::vector<std::string> row{id};
    for (double x : v) row.push_back(fmt_double(x));
    write_csv_row(out, row);
  }
}

inline void write_cluster_assignments_csv(const std::string& path,
                                          const std::vector<std::string>& account_ids,
                                          const ClusterModel& model) {
  auto out = detail::open_out(path);
  write_csv_row(out, {"account_id", "cluster"});
  for (size_t i = 0; i < account_ids.size(); ++i)
    write_csv_row(out, {account_ids[i], std::to_string(model.assignments[i])});
}

inline void write_clusters_json(const std::string& path, const ClusterModel& model,
                                const std::vector<std::string>& taxonomy) {
  auto out = detail::open_out(path);
  nlohmann::json j;
  j["k"] = model.k;
  j["seed"] = model.seed;
  j["objective"] = model.objective;
  j["iterations"] = model.objective_history.size();
  j["clusters"] = nlohmann::json::array();
  for (size_t c = 0; c < model.k; ++c) {
    nlohmann::json jc;
    jc["cluster"] = c;
    jc["accounts"] = model.sizes[c];
    jc["centroid"] = model.centroids[c];
    nlohmann::json cos = nlohmann::json::object();
    for (size_t t = 0; t < taxonomy.size(); ++t) cos[taxonomy[t]] = model.axis_cosines[c][t];
    jc["topic_cosines"] = cos;
    j["clusters"].push_back(jc);
  }
  out << j.dump(2) << '\n';
}

inline void write_stat_tests_csv(const std::string& path,
                                 const std::vector<std::pair<std::string, TestResult>>& rows) {
  auto out = detail::open_out(path);
  write_csv_row(out, {"test", "method", "statistic", "df", "p_value", "n1", "n2", "note"});
  for (const auto& [name, r] : rows) {
    write_csv_row(out, {name, r.method, fmt_double(r.statistic),
                        r.df ? fmt_double(*r.df) : "", fmt_double(r.p_value),
                        std::to_string(r.n1), std::to_string(r.n2), r.note});
  }
}

// manifest.json: config echo plus a digest of every emitted file. Two runs
// over identical inputs and config produce byte-identical manifests.
inline void write_manifest(const std::string& path, const nlohmann::json& config,
                           const std::map<std::string, std::string>& digests) {
  auto out = detail::open_out(path);
  nlohmann::json j;
  j["config"] = config;
  j["files"] = nlohmann::json::object();
  for (const auto& [name, digest] : digests) j["files"][name] = digest;
  out << j.dump(2) << '\n';
}

}  // namespace jeer

#endif  // JEER_REPORT_HPP_
