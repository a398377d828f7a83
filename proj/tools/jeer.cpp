// SPDX-License-Identifier: Apache-2.0
//
// jeer: abuse analytics over archived political tweet streams.
//
// Subcommands mirror the pipeline stages: ingest, annotate, profile,
// abusers, topics, cluster, eval, report, and run (everything, with a
// digest manifest). Exit codes: 0 success, 1 usage, 2 data error.

#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "jeer/pipeline.hpp"

namespace fs = std::filesystem;

namespace {

struct CliOptions {
  jeer::RunConfig config;
  std::string labeled_path;
};

void add_window_options(CLI::App* sub, jeer::RunConfig& config) {
  sub->add_option("--from", config.from, "Window start (ISO-8601 UTC, inclusive)");
  sub->add_option("--to", config.to, "Window end (ISO-8601 UTC, inclusive)");
}

void add_corpus_options(CLI::App* sub, jeer::RunConfig& config) {
  sub->add_option("--tweets", config.tweets_path, "Line-delimited JSON tweet archive")
      ->required();
  sub->add_option("--accounts", config.accounts_path, "Account statistics CSV");
  sub->add_option("--roster", config.roster_path, "Politician roster CSV")->required();
  add_window_options(sub, config);
}

void add_lexicon_options(CLI::App* sub, jeer::RunConfig& config) {
  sub->add_option("--abuse-lexicon", config.abuse_lexicon_path, "Abuse term list CSV")
      ->required();
  sub->add_option("--topic-lexicon", config.topic_lexicon_path, "Topic term list CSV")
      ->required();
  sub->add_option("--wordlist", config.wordlist_path,
                  "Word list for hashtag segmentation (one word per line)");
}

void add_out_option(CLI::App* sub, jeer::RunConfig& config) {
  sub->add_option("--out", config.out_dir, "Output directory")->capture_default_str();
}

std::string out_path(const jeer::RunConfig& config, const std::string& name) {
  fs::create_directories(config.out_dir);
  return (fs::path(config.out_dir) / name).string();
}

void print_summary_line(const jeer::AnnotationSummary& s) {
  std::cerr << "collected " << s.collected << ", abusive " << s.had_abuse << " ("
            << jeer::fmt_pct(s.abusive_fraction()) << "%), replies to MPs " << s.replies_to_mps
            << " (" << jeer::fmt_pct(s.mp_abusive_fraction()) << "% abusive)\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Abusive-reply analytics for archived political tweet streams"};
  app.require_subcommand(1);

  CliOptions opts;
  jeer::RunConfig& config = opts.config;

  auto* cmd_ingest = app.add_subcommand("ingest", "Load and validate a tweet archive");
  cmd_ingest->add_option("--tweets", config.tweets_path, "Line-delimited JSON tweet archive")
      ->required();
  add_window_options(cmd_ingest, config);
  add_out_option(cmd_ingest, config);

  auto* cmd_annotate = app.add_subcommand("annotate", "Annotate every tweet with the lexicon");
  auto* cmd_profile = app.add_subcommand("profile", "Per-politician abuse profiles");
  auto* cmd_abusers = app.add_subcommand("abusers", "Profile and group abuse-sending accounts");
  auto* cmd_topics = app.add_subcommand("topics", "Topic mention counts and abuse rates");
  auto* cmd_cluster = app.add_subcommand("cluster", "Cluster abusers by topic interests");
  auto* cmd_report = app.add_subcommand("report", "Figure-backing report files");
  auto* cmd_run = app.add_subcommand("run", "Full pipeline with digest manifest");
  for (CLI::App* sub :
       {cmd_annotate, cmd_profile, cmd_abusers, cmd_topics, cmd_cluster, cmd_report, cmd_run}) {
    add_corpus_options(sub, config);
    add_lexicon_options(sub, config);
    add_out_option(sub, config);
  }
  for (CLI::App* sub : {cmd_abusers, cmd_cluster, cmd_report, cmd_run})
    sub->add_option("--min-abusive", config.min_abusive,
                    "Abusive tweets needed to profile an account")
        ->capture_default_str();
  for (CLI::App* sub : {cmd_cluster, cmd_run}) {
    sub->add_option("--k", config.k, "Cluster count")->capture_default_str();
    sub->add_option("--seed", config.seed, "PRNG seed")->capture_default_str();
  }
  for (CLI::App* sub : {cmd_topics, cmd_run})
    sub->add_option("--min-topic-abusive", config.min_topic_abusive,
                    "Abusive replies needed to flag a topic rate")
        ->capture_default_str();
  cmd_run->add_option("--exclude-handles", config.exclude_handles,
                      "Outlier handles excluded from the group comparisons")
      ->delimiter(',');
  cmd_run->add_option("--post-cap", config.post_cap,
                      "Posts per account considered for topic vectors")
      ->capture_default_str();

  auto* cmd_eval = app.add_subcommand("eval", "Score the lexicon classifier on a labeled corpus");
  cmd_eval->add_option("--labeled", opts.labeled_path,
                       "Labeled corpus (label,text or Kaggle Insult,Date,Comment)")
      ->required();
  add_lexicon_options(cmd_eval, config);
  add_out_option(cmd_eval, config);

  // `jeer --config run.ini run ...`; keys live in [subcommand] sections and
  // command-line flags override file values.
  app.set_config("--config", "", "Config file (INI, one [subcommand] section per command)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (cmd_ingest->parsed()) {
      const jeer::TimeWindow window = jeer::parse_window(config);
      jeer::IngestResult result = jeer::ingest_tweets(config.tweets_path, window);
      nlohmann::json j;
      j["lines"] = result.counters.lines;
      j["loaded"] = result.counters.loaded;
      j["malformed"] = result.counters.malformed;
      j["out_of_window"] = result.counters.out_of_window;
      j["duplicate_ids"] = result.counters.duplicate_ids;
      std::ofstream out(out_path(config, "ingest.json"), std::ios::binary);
      out << j.dump(2) << '\n';
      std::cout << j.dump(2) << '\n';
      return 0;
    }

    if (cmd_eval->parsed()) {
      jeer::CompiledLexicon lexicon =
          jeer::CompiledLexicon::load(config.abuse_lexicon_path, config.topic_lexicon_path);
      jeer::SegmentationDict dict = config.wordlist_path.empty()
                                        ? jeer::SegmentationDict()
                                        : jeer::SegmentationDict::load(config.wordlist_path);
      lexicon.add_surfaces(dict);
      auto examples = jeer::load_labeled_corpus(opts.labeled_path);
      jeer::ClassifierEval eval = jeer::evaluate_lexicon_classifier(lexicon, dict, examples);
      nlohmann::json j;
      j["items"] = examples.size();
      j["tp"] = eval.tp;
      j["fp"] = eval.fp;
      j["tn"] = eval.tn;
      j["fn"] = eval.fn;
      j["accuracy"] = eval.accuracy;
      j["precision"] = eval.precision;
      j["recall"] = eval.recall;
      j["f1"] = eval.f1;
      j["kappa"] = eval.kappa;
      if (eval.degenerate_precision) j["degenerate_precision"] = true;
      if (eval.degenerate_kappa) j["degenerate_kappa"] = true;
      std::ofstream out(out_path(config, "eval.json"), std::ios::binary);
      out << j.dump(2) << '\n';
      std::cout << j.dump(2) << '\n';
      return 0;
    }

    if (cmd_run->parsed()) {
      jeer::RunResult result = jeer::run_pipeline(config);
      print_summary_line(result.summary);
      std::cerr << "wrote " << result.digests.size() + 1 << " files to " << config.out_dir
                << " (manifest.json has the digests)\n";
      return 0;
    }

    // Remaining subcommands share the loaded pipeline data.
    jeer::PipelineData data = jeer::load_pipeline_data(config);
    const auto& taxonomy = data.lexicon.taxonomy();

    if (cmd_annotate->parsed()) {
      auto rates = jeer::topic_abuse_rates(data.annotated, data.corpus, taxonomy.size(),
                                           config.min_topic_abusive);
      jeer::write_annotations_csv(out_path(config, "annotations.csv"), data.annotated,
                                  data.corpus, data.lexicon);
      jeer::write_summary_json(out_path(config, "summary.json"), data.corpus,
                               data.annotated.summary, rates.mean_rate);
      print_summary_line(data.annotated.summary);
      return 0;
    }

    if (cmd_profile->parsed()) {
      auto profiles = jeer::politician_profiles(data.annotated, data.corpus, data.replies);
      jeer::write_politician_profiles_csv(out_path(config, "politician_profiles.csv"), profiles);
      jeer::write_features_csv(out_path(config, "features.csv"), profiles);
      return 0;
    }

    if (cmd_abusers->parsed()) {
      auto abusers = jeer::classify_abusers(data.annotated, data.corpus, config.min_abusive);
      jeer::write_abuser_profiles_csv(out_path(config, "abuser_profiles.csv"), abusers);
      jeer::write_group_stats_csv(out_path(config, "abuser_group_stats.csv"),
                                  jeer::group_account_stats(abusers));
      auto vectors = jeer::abuser_topic_vectors(data.annotated, data.corpus, abusers,
                                                taxonomy.size(), config.post_cap);
      jeer::write_abuser_topic_vectors_csv(out_path(config, "abuser_topic_vectors.csv"), vectors,
                                           taxonomy);
      std::cerr << "profiled " << abusers.size() << " accounts\n";
      return 0;
    }

    if (cmd_topics->parsed()) {
      auto rates = jeer::topic_abuse_rates(data.annotated, data.corpus, taxonomy.size(),
                                           config.min_topic_abusive);
      jeer::write_topic_rates_csv(out_path(config, "topic_rates.csv"), rates, taxonomy);
      jeer::write_topic_mentions_csv(out_path(config, "topic_mentions.csv"),
                                     jeer::topic_mention_counts(data.annotated, taxonomy.size()),
                                     taxonomy);
      return 0;
    }

    if (cmd_cluster->parsed()) {
      auto abusers = jeer::classify_abusers(data.annotated, data.corpus, config.min_abusive);
      auto vectors = jeer::abuser_topic_vectors(data.annotated, data.corpus, abusers,
                                                taxonomy.size(), config.post_cap);
      std::vector<std::string> ids;
      std::vector<std::vector<double>> points;
      for (auto& [id, v] : vectors) {
        ids.push_back(id);
        points.push_back(v);
      }
      jeer::ClusterModel model = jeer::kmeans(points, config.k, config.seed);
      jeer::write_clusters_json(out_path(config, "clusters.json"), model, taxonomy);
      jeer::write_cluster_assignments_csv(out_path(config, "cluster_assignments.csv"), ids, model);
      return 0;
    }

    if (cmd_report->parsed()) {
      auto profiles = jeer::politician_profiles(data.annotated, data.corpus, data.replies);
      auto abusers = jeer::classify_abusers(data.annotated, data.corpus, config.min_abusive);
      jeer::write_sunburst_csv(out_path(config, "sunburst.csv"), profiles);
      jeer::write_rise_csv(out_path(config, "rise.csv"), profiles, jeer::window_year(data.corpus));
      jeer::write_topic_mentions_csv(out_path(config, "topic_mentions.csv"),
                                     jeer::topic_mention_counts(data.annotated, taxonomy.size()),
                                     taxonomy);
      jeer::write_age_timeline_csv(out_path(config, "account_age_timeline.csv"),
                                   jeer::account_age_timeline(abusers, data.annotated, data.corpus));
      return 0;
    }

    std::cerr << "error: no subcommand\n";
    return 1;
  } catch (const jeer::UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
