// SPDX-License-Identifier: Apache-2.0
#ifndef JEER_PIPELINE_HPP_
#define JEER_PIPELINE_HPP_

#include <algorithm>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include <json.hpp>

#include "jeer/annotate.hpp"
#include "jeer/corpus.hpp"
#include "jeer/error.hpp"
#include "jeer/kmeans.hpp"
#include "jeer/lexicon.hpp"
#include "jeer/metrics.hpp"
#include "jeer/report.hpp"
#include "jeer/stats.hpp"

namespace jeer {

// Bad invocation rather than bad data; the CLI maps this to exit code 1.
class UsageError : public std::runtime_error {
 public:
  explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

struct RunConfig {
  std::string tweets_path;
  std::string accounts_path;
  std::string roster_path;
  std::string abuse_lexicon_path;
  std::string topic_lexicon_path;
  std::string wordlist_path;
  std::string from;  // ISO-8601, empty = unbounded
  std::string to;
  std::uint64_t min_abusive = 3;
  size_t k = 8;
  std::uint64_t seed = 42;  // recorded in every report
  size_t post_cap = 3000;
  std::uint64_t min_topic_abusive = 50;
  std::vector<std::string> exclude_handles;
  std::string out_dir = "out";
};

inline TimeWindow parse_window(const RunConfig& config) {
  TimeWindow w;
  if (!config.from.empty()) {
    auto t = parse_utc(config.from);
    if (!t) throw UsageError("bad --from timestamp: " + config.from);
    w.begin = *t;
  }
  if (!config.to.empty()) {
    auto t = parse_utc(config.to);
    if (!t) throw UsageError("bad --to timestamp: " + config.to);
    w.end = *t;
  }
  if (w.begin >= w.end) throw UsageError("window start must precede window end");
  return w;
}

// Everything the analysis stages need, loaded once.
struct PipelineData {
  Corpus corpus;
  CompiledLexicon lexicon;
  SegmentationDict dict;
  ReplyIndex replies;
  AnnotatedCorpus annotated;
};

inline PipelineData load_pipeline_data(const RunConfig& config) {
  PipelineData data;
  const TimeWindow window = parse_window(config);

  Roster roster = load_roster(config.roster_path);
  IngestResult ingest = ingest_tweets(config.tweets_path, window);

  // Account ages are measured from the window end; with an unbounded window
  // the newest ingested tweet stands in, keeping reruns reproducible.
  UtcSeconds reference = window.end;
  if (!window.bounded_end()) {
    reference = 0;
    for (const Tweet& t : ingest.tweets) reference = std::max(reference, t.created_at);
  }
  std::unordered_map<std::string, AccountStats> accounts;
  if (!config.accounts_path.empty())
    accounts = load_account_stats(config.accounts_path, reference);

  data.corpus = Corpus(std::move(ingest.tweets), std::move(accounts), std::move(roster), window,
                       ingest.counters);
  data.lexicon = CompiledLexicon::load(config.abuse_lexicon_path, config.topic_lexicon_path);
  data.dict = config.wordlist_path.empty() ? SegmentationDict()
                                           : SegmentationDict::load(config.wordlist_path);
  data.lexicon.add_surfaces(data.dict);
  data.replies = link_replies(data.corpus);
  data.annotated = annotate_corpus(data.lexicon, data.dict, data.corpus, data.replies);
  return data;
}

namespace detail {

inline void append_or_skip(std::vector<std::pair<std::string, TestResult>>& rows,
                           const std::string& name, std::function<TestResult()> make) {
  try {
    rows.emplace_back(name, make());
  } catch (const std::exception& e) {
    TestResult r;
    r.method = "skipped";
    r.note = e.what();
    rows.emplace_back(name, std::move(r));
  }
}

inline std::vector<double> proportions(const std::vector<PoliticianProfile>& profiles,
                                       const std::function<bool(const PoliticianProfile&)>& pred) {
  std::vector<double> out;
  for (const auto& p : profiles)
    if (p.is_mp && pred(p)) out.push_back(p.abuse_proportion);
  return out;
}

// The two largest parties among MPs, by headcount (ties broken by name).
inline std::vector<std::string> top_two_parties(const std::vector<PoliticianProfile>& profiles) {
  std::map<std::string, size_t> counts;
  for (const auto& p : profiles)
    if (p.is_mp) ++counts[p.party];
  std::vector<std::pair<std::string, size_t>> order(counts.begin(), counts.end());
  std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  std::vector<std::string> out;
  for (size_t i = 0; i < order.size() && i < 2; ++i) out.push_back(order[i].first);
  return out;
}

}  // namespace detail

// The comparisons behind the findings: abuse received by gender, party and
// ethnicity (with and without the named outliers), sender account statistics
// against the non-abusive contrast group, partial correlations controlling
// account age, the closed-account rates, and each qualifying topic's abuse
// rate against the rest.
inline std::vector<std::pair<std::string, TestResult>> run_stat_battery(
    const PipelineData& data, const std::vector<PoliticianProfile>& profiles,
    const std::vector<AbuserProfile>& abusers, const TopicRateReport& topic_rates,
    const std::vector<std::string>& exclude) {
  std::vector<std::pair<std::string, TestResult>> rows;

  auto add_received_tests = [&](const std::vector<PoliticianProfile>& ps,
                                const std::string& suffix) {
    detail::append_or_skip(rows, "abuse_proportion.female_vs_male" + suffix, [&] {
      auto a = detail::proportions(ps, [](const auto& p) { return p.gender == Gender::female; });
      auto b = detail::proportions(ps, [](const auto& p) { return p.gender == Gender::male; });
      return welch_t_test(a, b);
    });
    auto parties = detail::top_two_parties(ps);
    if (parties.size() == 2) {
      detail::append_or_skip(
          rows, "abuse_proportion." + parties[0] + "_vs_" + parties[1] + suffix, [&] {
            auto a = detail::proportions(ps, [&](const auto& p) { return p.party == parties[0]; });
            auto b = detail::proportions(ps, [&](const auto& p) { return p.party == parties[1]; });
            return welch_t_test(a, b);
          });
    }
    detail::append_or_skip(rows, "abuse_proportion.bame_vs_other" + suffix, [&] {
      auto a = detail::proportions(ps, [](const auto& p) { return p.bame && *p.bame; });
      auto b = detail::proportions(ps, [](const auto& p) { return p.bame && !*p.bame; });
      return welch_t_test(a, b);
    });
  };
  add_received_tests(profiles, "");
  if (!exclude.empty())
    add_received_tests(exclude_handles(profiles, exclude), ".excluding_outliers");

  // Sender comparisons: profiled abusers vs accounts with no abusive tweet.
  auto activity = account_activity(data.annotated, data.corpus);
  std::unordered_set<std::string, StringHash, StringEq> roster_accounts;
  for (const auto& m : data.corpus.roster().members()) roster_accounts.insert(m.account_id);

  std::vector<const AccountStats*> contrast;
  {
    std::vector<std::string> ids;
    for (const auto& [id, act] : activity) {
      if (act.abusive > 0 || roster_accounts.count(id)) continue;
      if (data.corpus.account(id) != nullptr) ids.push_back(id);
    }
    std::sort(ids.begin(), ids.end());
    for (const auto& id : ids) contrast.push_back(data.corpus.account(id));
  }

  struct StatField {
    const char* name;
    std::function<double(const AccountStats&)> get;
  };
  const std::vector<StatField> fields = {
      {"age_days", [](const AccountStats& s) { return double(s.age_days); }},
      {"favourites", [](const AccountStats& s) { return double(s.favourites); }},
      {"followers", [](const AccountStats& s) { return double(s.followers); }},
      {"following", [](const AccountStats& s) { return double(s.following); }},
      {"listed", [](const AccountStats& s) { return double(s.listed); }},
      {"posts", [](const AccountStats& s) { return double(s.posts); }},
  };
  for (const auto& field : fields) {
    detail::append_or_skip(rows, std::string("senders.") + field.name + ".abusers_vs_contrast",
                           [&] {
                             std::vector<double> a, b;
                             for (const auto& p : abusers)
                               if (p.stats) a.push_back(field.get(*p.stats));
                             for (const AccountStats* s : contrast) b.push_back(field.get(*s));
                             return welch_t_test(a, b);
                           });
  }

  // Partial correlations: abusive volume vs each account statistic with
  // account age partialed out, over the profiled abusers.
  for (const auto& field : fields) {
    if (std::string(field.name) == "age_days") continue;
    detail::append_or_skip(
        rows, std::string("senders.abusive_count_vs_") + field.name + ".controlling_age", [&] {
          std::vector<double> x, y, z;
          for (const auto& p : abusers) {
            if (!p.stats) continue;
            x.push_back(double(p.abusive_count));
            y.push_back(field.get(*p.stats));
            z.push_back(double(p.stats->age_days));
          }
          return partial_correlation(x, y, z);
        });
  }

  detail::append_or_skip(rows, "senders.closed_accounts.abusers_vs_contrast", [&] {
    std::uint64_t closed_a = 0, open_a = 0, closed_b = 0, open_b = 0;
    for (const auto& p : abusers) {
      if (!p.stats) continue;
      (p.stats->is_closed ? closed_a : open_a) += 1;
    }
    for (const AccountStats* s : contrast) (s->is_closed ? closed_b : open_b) += 1;
    return fisher_exact_2x2(closed_a, open_a, closed_b, open_b);
  });

  // Each qualifying topic against all other topics pooled.
  std::uint64_t total_mentions = 0, total_abusive = 0;
  for (const auto& row : topic_rates.rows) {
    total_mentions += row.mentions;
    total_abusive += row.abusive_replies;
  }
  const auto& taxonomy = data.lexicon.taxonomy();
  for (const auto& row : topic_rates.rows) {
    if (!row.meets_min) continue;
    detail::append_or_skip(rows, "topics." + taxonomy[row.topic_index] + ".rate_vs_rest", [&] {
      const std::uint64_t rest_mentions = total_mentions - row.mentions;
      const std::uint64_t rest_abusive = total_abusive - row.abusive_replies;
      return chi_square_yates(row.abusive_replies, row.mentions - row.abusive_replies,
                              rest_abusive, rest_mentions - rest_abusive);
    });
  }
  return rows;
}

inline nlohmann::json config_to_json(const RunConfig& c) {
  nlohmann::json j;
  j["tweets"] = c.tweets_path;
  j["accounts"] = c.accounts_path;
  j["roster"] = c.roster_path;
  j["abuse_lexicon"] = c.abuse_lexicon_path;
  j["topic_lexicon"] = c.topic_lexicon_path;
  j["wordlist"] = c.wordlist_path;
  j["from"] = c.from;
  j["to"] = c.to;
  j["min_abusive"] = c.min_abusive;
  j["k"] = c.k;
  j["seed"] = c.seed;
  j["post_cap"] = c.post_cap;
  j["min_topic_abusive"] = c.min_topic_abusive;
  j["exclude_handles"] = c.exclude_handles;
  return j;
}

struct RunResult {
  std::map<std::string, std::string> digests;  // file name -> sha256
  AnnotationSummary summary;
};

inline int window_year(const Corpus& corpus) {
  UtcSeconds t = corpus.window().begin;
  if (t == kMinTime) {
    if (corpus.tweets().empty()) return 0;
    t = corpus.tweets().front().created_at;
    for (const Tweet& tw : corpus.tweets()) t = std::min(t, tw.created_at);
  }
  std::int64_t y;
  unsigned m, d;
  jeer::detail::civil_from_days(t / 86400 - (t % 86400 < 0 ? 1 : 0), y, m, d);
  return static_cast<int>(y);
}

// ingest -> annotate -> profiles -> abusers -> topic rates -> clusters ->
// statistics, with every report written under config.out_dir and digested
// into manifest.json. A failure removes whatever was already written.
inline RunResult run_pipeline(const RunConfig& config) {
  namespace fs = std::filesystem;
  fs::create_directories(config.out_dir);

  std::vector<std::string> written;
  auto emit = [&](const std::string& name, auto&& writer) {
    const std::string path = (fs::path(config.out_dir) / name).string();
    writer(path);
    written.push_back(name);
  };

  try {
    PipelineData data = load_pipeline_data(config);
    const auto& taxonomy = data.lexicon.taxonomy();

    auto profiles = politician_profiles(data.annotated, data.corpus, data.replies);
    auto abusers = classify_abusers(data.annotated, data.corpus, config.min_abusive);
    auto groups = group_account_stats(abusers);
    auto rates = topic_abuse_rates(data.annotated, data.corpus, taxonomy.size(),
                                   config.min_topic_abusive);
    auto mention_counts = topic_mention_counts(data.annotated, taxonomy.size());
    auto timeline = account_age_timeline(abusers, data.annotated, data.corpus);
    const int year = window_year(data.corpus);

    emit("annotations.csv",
         [&](const std::string& p) { write_annotations_csv(p, data.annotated, data.corpus, data.lexicon); });
    emit("summary.json", [&](const std::string& p) {
      write_summary_json(p, data.corpus, data.annotated.summary, rates.mean_rate);
    });
    emit("politician_profiles.csv",
         [&](const std::string& p) { write_politician_profiles_csv(p, profiles); });
    emit("features.csv", [&](const std::string& p) { write_features_csv(p, profiles); });
    emit("sunburst.csv", [&](const std::string& p) { write_sunburst_csv(p, profiles); });
    emit("rise.csv", [&](const std::string& p) { write_rise_csv(p, profiles, year); });
    emit("abuser_profiles.csv",
         [&](const std::string& p) { write_abuser_profiles_csv(p, abusers); });
    emit("abuser_group_stats.csv",
         [&](const std::string& p) { write_group_stats_csv(p, groups); });
    emit("topic_rates.csv",
         [&](const std::string& p) { write_topic_rates_csv(p, rates, taxonomy); });
    emit("topic_mentions.csv",
         [&](const std::string& p) { write_topic_mentions_csv(p, mention_counts, taxonomy); });
    emit("account_age_timeline.csv",
         [&](const std::string& p) { write_age_timeline_csv(p, timeline); });

    // Topic-interest clustering of the abuser accounts.
    auto vectors = abuser_topic_vectors(data.annotated, data.corpus, abusers, taxonomy.size(),
                                        config.post_cap);
    emit("abuser_topic_vectors.csv",
         [&](const std::string& p) { write_abuser_topic_vectors_csv(p, vectors, taxonomy); });
    std::vector<std::string> ids;
    std::vector<std::vector<double>> points;
    for (auto& [id, v] : vectors) {
      ids.push_back(id);
      points.push_back(v);
    }
    try {
      ClusterModel model = kmeans(points, config.k, config.seed);
      emit("clusters.json",
           [&](const std::string& p) { write_clusters_json(p, model, taxonomy); });
      emit("cluster_assignments.csv",
           [&](const std::string& p) { write_cluster_assignments_csv(p, ids, model); });
    } catch (const std::invalid_argument& e) {
      const std::string reason = e.what();
      emit("clusters.json", [&](const std::string& p) {
        auto out = detail::open_out(p);
        nlohmann::json j;
        j["skipped"] = reason;
        j["seed"] = config.seed;
        out << j.dump(2) << '\n';
      });
    }

    auto battery = run_stat_battery(data, profiles, abusers, rates, config.exclude_handles);
    emit("stat_tests.csv", [&](const std::string& p) { write_stat_tests_csv(p, battery); });

    RunResult result;
    result.summary = data.annotated.summary;
    for (const auto& name : written)
      result.digests[name] = sha256_file((fs::path(config.out_dir) / name).string());
    written.push_back("manifest.json");
    write_manifest((fs::path(config.out_dir) / "manifest.json").string(), config_to_json(config),
                   result.digests);
    return result;
  } catch (...) {
    // Do not leave partial output behind.
    for (const auto& name : written) {
      std::error_code ec;
      fs::remove(fs::path(config.out_dir) / name, ec);
    }
    throw;
  }
}

// Labeled-corpus evaluation: runs the lexicon classifier over each text and
// scores it against the gold labels. Accepts label,text files as well as the
// Kaggle insults layout (Insult,Date,Comment) without conversion.
struct LabeledExample {
  bool label;
  std::string text;
};

inline std::vector<LabeledExample> load_labeled_corpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open labeled corpus: " + path);
  CsvReader csv(in, /*skip_comments=*/false);
  auto first = csv.next();
  if (!first) throw DataError("labeled corpus is empty: " + path);

  size_t label_col = 0, text_col = first->size() - 1;
  bool first_is_header = false;
  {
    std::vector<std::string> lowered;
    for (const auto& f : *first) lowered.push_back(text::to_lower(text::trim(f)));
    auto find = [&](std::string_view name) -> std::optional<size_t> {
      for (size_t i = 0; i < lowered.size(); ++i)
        if (lowered[i] == name) return i;
      return std::nullopt;
    };
    if (auto insult = find("insult"); insult) {
      auto comment = find("comment");
      if (!comment) throw DataError(path + ": Insult column without Comment column");
      label_col = *insult;
      text_col = *comment;
      first_is_header = true;
    } else if (auto label = find("label"); label) {
      auto text_idx = find("text");
      if (!text_idx) throw DataError(path + ": label column without text column");
      label_col = *label;
      text_col = *text_idx;
      first_is_header = true;
    }
  }

  std::vector<LabeledExample> out;
  auto consume = [&](const std::vector<std::string>& row, size_t line) {
    if (row.size() <= std::max(label_col, text_col))
      throw DataError(path + ":" + std::to_string(line) + ": short row");
    auto raw = text::trim(row[label_col]);
    if (raw != "0" && raw != "1")
      throw DataError(path + ":" + std::to_string(line) + ": label must be 0 or 1, got '" +
                      std::string(raw) + "'");
    out.push_back(LabeledExample{raw == "1", row[text_col]});
  };
  if (!first_is_header) consume(*first, 1);
  while (auto row = csv.next()) consume(*row, csv.record_line());
  if (out.empty()) throw DataError(path + ": no labeled rows");
  return out;
}

inline ClassifierEval evaluate_lexicon_classifier(const CompiledLexicon& lexicon,
                                                  const SegmentationDict& dict,
                                                  const std::vector<LabeledExample>& examples) {
  std::vector<bool> predictions, gold;
  predictions.reserve(examples.size());
  gold.reserve(examples.size());
  for (const auto& ex : examples) {
    TokenStream stream = tokenize(ex.text, &dict);
    bool abusive = false;
    for (const Match& m : lexicon.match(stream)) {
      if (m.kind == TermKind::abuse) {
        abusive = true;
        break;
      }
    }
    predictions.push_back(abusive);
    gold.push_back(ex.label);
  }
  return evaluate_classifier(predictions, gold);
}

}  // namespace jeer

#endif  // JEER_PIPELINE_HPP_
