// SPDX-License-Identifier: Apache-2.0
#ifndef JEER_ANNOTATE_HPP_
#define JEER_ANNOTATE_HPP_

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "jeer/corpus.hpp"
#include "jeer/lexicon.hpp"
#include "jeer/segment.hpp"

namespace jeer {

struct AbuseHit {
  std::uint32_t term_index;
  std::uint32_t begin, end;  // token span
};

// One counted topic mention. A topic mentioned by two different terms counts
// twice; the same (topic, span) pair never double-counts.
struct TopicHit {
  std::uint32_t topic_index;
  std::uint32_t term_index;
  std::uint32_t begin, end;
};

struct Annotation {
  std::uint64_t tweet_id = 0;
  bool abusive = false;
  std::vector<AbuseHit> abuse_matches;
  std::vector<TopicHit> topic_mentions;
  std::optional<std::uint32_t> target;  // roster index of the replied-to politician
};

// Pure function of (lexicon, text, reply link); annotating twice gives
// identical results.
inline Annotation annotate_tweet(const CompiledLexicon& lexicon, const SegmentationDict& dict,
                                 const Tweet& tweet, std::optional<std::uint32_t> target) {
  Annotation a;
  a.tweet_id = tweet.id;
  a.target = target;
  TokenStream stream = tokenize(tweet.text, &dict);
  for (const Match& m : lexicon.match(stream)) {
    if (m.kind == TermKind::abuse) {
      a.abuse_matches.push_back(AbuseHit{m.term_index, m.begin, m.end});
    } else {
      const std::uint32_t topic =
          static_cast<std::uint32_t>(lexicon.topic_index(lexicon.topic_terms()[m.term_index].topic));
      bool dup = std::any_of(a.topic_mentions.begin(), a.topic_mentions.end(),
                             [&](const TopicHit& h) {
                               return h.topic_index == topic && h.begin == m.begin && h.end == m.end;
                             });
      if (!dup) a.topic_mentions.push_back(TopicHit{topic, m.term_index, m.begin, m.end});
    }
  }
  a.abusive = !a.abuse_matches.empty();
  return a;
}

struct AnnotationSummary {
  std::uint64_t collected = 0;
  std::uint64_t had_abuse = 0;
  std::uint64_t replies_to_roster = 0;
  std::uint64_t abusive_replies_to_roster = 0;
  std::uint64_t replies_to_mps = 0;
  std::uint64_t abusive_replies_to_mps = 0;

  // Exact ratios; rounding happens only at presentation.
  double abusive_fraction() const { return collected ? double(had_abuse) / double(collected) : 0.0; }
  double roster_abusive_fraction() const {
    return replies_to_roster ? double(abusive_replies_to_roster) / double(replies_to_roster) : 0.0;
  }
  double mp_abusive_fraction() const {
    return replies_to_mps ? double(abusive_replies_to_mps) / double(replies_to_mps) : 0.0;
  }
};

struct AnnotatedCorpus {
  std::vector<Annotation> rows;  // one per tweet, in corpus order
  AnnotationSummary summary;
};

inline AnnotatedCorpus annotate_corpus(const CompiledLexicon& lexicon, const SegmentationDict& dict,
                                       const Corpus& corpus, const ReplyIndex& replies) {
  AnnotatedCorpus out;
  out.rows.reserve(corpus.tweets().size());
  for (std::uint32_t i = 0; i < corpus.tweets().size(); ++i) {
    Annotation a = annotate_tweet(lexicon, dict, corpus.tweets()[i], replies.target(i));
    ++out.summary.collected;
    if (a.abusive) ++out.summary.had_abuse;
    if (a.target) {
      ++out.summary.replies_to_roster;
      if (a.abusive) ++out.summary.abusive_replies_to_roster;
      if (corpus.roster().members()[*a.target].is_mp) {
        ++out.summary.replies_to_mps;
        if (a.abusive) ++out.summary.abusive_replies_to_mps;
      }
    }
    out.rows.push_back(std::move(a));
  }
  return out;
}

}  // namespace jeer

#endif  // JEER_ANNOTATE_HPP_
