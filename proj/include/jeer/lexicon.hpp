// SPDX-License-Identifier: Apache-2.0
#ifndef JEER_LEXICON_HPP_
#define JEER_LEXICON_HPP_

#include <cstdint>
#include <fstream>
#include <queue>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "jeer/csv.hpp"
#include "jeer/error.hpp"
#include "jeer/segment.hpp"
#include "jeer/text.hpp"

namespace jeer {

enum class AbuseCategory : std::uint8_t { obscene, slur, insult, threat };

inline std::string_view to_string(AbuseCategory c) {
  switch (c) {
    case AbuseCategory::obscene: return "obscene";
    case AbuseCategory::slur: return "slur";
    case AbuseCategory::insult: return "insult";
    case AbuseCategory::threat: return "threat";
  }
  return "?";
}

struct AbuseTerm {
  std::string surface;               // normalized: words joined by single spaces
  AbuseCategory category = AbuseCategory::insult;
  std::vector<std::string> words;    // 1..5 lowercase tokens
};

struct TopicTerm {
  std::string surface;
  std::string topic;
  std::string subtopic;  // optional, empty when absent
  std::vector<std::string> words;
};

enum class TermKind : std::uint8_t { abuse, topic };

// One lexicon hit over a token stream; [begin, end) are token indices.
struct Match {
  TermKind kind;
  std::uint32_t term_index;  // into abuse_terms() or topic_terms()
  std::uint32_t begin;
  std::uint32_t end;
};

namespace detail {

// Aho-Corasick automaton whose alphabet is interned token ids. Patterns are
// short (lexicon terms are 1..5 tokens) but numerous, and the stream is long,
// so matching walks the NFA with suffix links: linear in stream length for a
// fixed lexicon.
class TokenAutomaton {
 public:
  void build(const std::vector<std::vector<std::int32_t>>& patterns) {
    nodes_.clear();
    nodes_.resize(1);
    pattern_len_.clear();
    pattern_len_.reserve(patterns.size());
    for (std::size_t pid = 0; pid < patterns.size(); ++pid) {
      const auto& pat = patterns[pid];
      pattern_len_.push_back(static_cast<std::uint32_t>(pat.size()));
      std::int32_t node = 0;
      for (std::int32_t sym : pat) {
        auto it = nodes_[node].next.find(sym);
        if (it == nodes_[node].next.end()) {
          std::int32_t child = static_cast<std::int32_t>(nodes_.size());
          nodes_[node].next.emplace(sym, child);
          nodes_.emplace_back();
          node = child;
        } else {
          node = it->second;
        }
      }
      nodes_[node].outputs.push_back(static_cast<std::int32_t>(pid));
    }

    // BFS to wire suffix and output links.
    std::queue<std::int32_t> queue;
    for (auto& [sym, child] : nodes_[0].next) {
      nodes_[child].fail = 0;
      queue.push(child);
    }
    while (!queue.empty()) {
      std::int32_t node = queue.front();
      queue.pop();
      std::int32_t fail = nodes_[node].fail;
      nodes_[node].out_link =
          nodes_[fail].outputs.empty() ? nodes_[fail].out_link : fail;
      for (auto& [sym, child] : nodes_[node].next) {
        std::int32_t f = fail;
        while (f != 0 && nodes_[f].next.find(sym) == nodes_[f].next.end())
          f = nodes_[f].fail;
        auto it = nodes_[f].next.find(sym);
        nodes_[child].fail = (it != nodes_[f].next.end() && it->second != child) ? it->second : 0;
        queue.push(child);
      }
    }
  }

  std::int32_t root() const { return 0; }

  std::int32_t step(std::int32_t state, std::int32_t sym) const {
    while (true) {
      auto it = nodes_[state].next.find(sym);
      if (it != nodes_[state].next.end()) return it->second;
      if (state == 0) return 0;
      state = nodes_[state].fail;
    }
  }

  // Invokes cb(pattern_id, pattern_len) for every pattern ending at `state`.
  template <typename Cb>
  void collect(std::int32_t state, Cb&& cb) const {
    for (std::int32_t s = state; s != -1; s = nodes_[s].out_link)
      for (std::int32_t pid : nodes_[s].outputs) cb(pid, pattern_len_[pid]);
  }

 private:
  struct Node {
    std::unordered_map<std::int32_t, std::int32_t> next;
    std::int32_t fail = 0;
    std::int32_t out_link = -1;  // nearest suffix state with outputs
    std::vector<std::int32_t> outputs;
  };
  std::vector<Node> nodes_;
  std::vector<std::uint32_t> pattern_len_;
};

}  // namespace detail

// Abuse and topic term lists compiled into one token-level multi-pattern
// matcher. Immutable after construction; concurrent match() calls are safe.
class CompiledLexicon {
 public:
  static CompiledLexicon compile(std::vector<AbuseTerm> abuse, std::vector<TopicTerm> topics) {
    if (abuse.empty()) throw DataError("abuse lexicon is empty");
    CompiledLexicon lex;
    lex.abuse_ = std::move(abuse);
    lex.topics_ = std::move(topics);

    std::unordered_set<std::string, StringHash, StringEq> seen;
    for (auto& term : lex.abuse_) {
      normalize(term.surface, term.words);
      if (term.words.empty() || term.words.size() > 5)
        throw DataError("abuse term must be 1..5 tokens: '" + term.surface + "'");
      if (!seen.insert(term.surface).second)
        throw DataError("duplicate abuse term: '" + term.surface + "'");
    }
    seen.clear();
    for (auto& term : lex.topics_) {
      normalize(term.surface, term.words);
      if (term.words.empty()) throw DataError("empty topic term surface");
      if (term.topic.empty()) throw DataError("topic term without topic: '" + term.surface + "'");
      if (!seen.insert(term.surface).second)
        throw DataError("duplicate topic term: '" + term.surface + "'");
      if (lex.topic_index_.find(term.topic) == lex.topic_index_.end()) {
        lex.topic_index_.emplace(term.topic, static_cast<int>(lex.taxonomy_.size()));
        lex.taxonomy_.push_back(term.topic);
      }
    }

    std::vector<std::vector<std::int32_t>> patterns;
    patterns.reserve(lex.abuse_.size() + lex.topics_.size());
    for (const auto& term : lex.abuse_) patterns.push_back(lex.intern(term.words));
    for (const auto& term : lex.topics_) patterns.push_back(lex.intern(term.words));
    lex.automaton_.build(patterns);
    return lex;
  }

  // Delimited term files, '#' comment lines. Abuse rows: surface,category.
  // Topic rows: surface,topic[,subtopic].
  static CompiledLexicon load(const std::string& abuse_path, const std::string& topic_path) {
    std::ifstream abuse_in(abuse_path);
    if (!abuse_in) throw DataError("cannot open abuse lexicon: " + abuse_path);
    std::vector<AbuseTerm> abuse;
    CsvReader abuse_csv(abuse_in, /*skip_comments=*/true);
    while (auto row = abuse_csv.next()) {
      if (row->size() != 2)
        throw DataError(abuse_path + ":" + std::to_string(abuse_csv.record_line()) +
                        ": expected surface,category");
      AbuseTerm term;
      term.surface = (*row)[0];
      term.category = parse_category(text::trim((*row)[1]), abuse_path, abuse_csv.record_line());
      abuse.push_back(std::move(term));
    }

    std::ifstream topic_in(topic_path);
    if (!topic_in) throw DataError("cannot open topic lexicon: " + topic_path);
    std::vector<TopicTerm> topics;
    CsvReader topic_csv(topic_in, /*skip_comments=*/true);
    while (auto row = topic_csv.next()) {
      if (row->size() != 2 && row->size() != 3)
        throw DataError(topic_path + ":" + std::to_string(topic_csv.record_line()) +
                        ": expected surface,topic[,subtopic]");
      TopicTerm term;
      term.surface = (*row)[0];
      term.topic = std::string(text::trim((*row)[1]));
      if (row->size() == 3) term.subtopic = std::string(text::trim((*row)[2]));
      topics.push_back(std::move(term));
    }
    if (topics.empty()) throw DataError("topic lexicon is empty: " + topic_path);
    return compile(std::move(abuse), std::move(topics));
  }

  // All term occurrences in the stream. Matches start and end at token
  // boundaries; URL and mention tokens never participate and break
  // multi-token runs. Overlapping matches are all reported.
  std::vector<Match> match(const TokenStream& stream) const {
    std::vector<Match> out;
    std::int32_t state = automaton_.root();
    const std::uint32_t abuse_count = static_cast<std::uint32_t>(abuse_.size());
    for (std::uint32_t i = 0; i < stream.tokens.size(); ++i) {
      const Token& tok = stream.tokens[i];
      if (tok.origin == TokenOrigin::url || tok.origin == TokenOrigin::mention) {
        state = automaton_.root();
        continue;
      }
      auto it = vocab_.find(tok.surface);
      if (it == vocab_.end()) {
        state = automaton_.root();
        continue;
      }
      state = automaton_.step(state, it->second);
      automaton_.collect(state, [&](std::int32_t pid, std::uint32_t len) {
        Match m;
        m.begin = i + 1 - len;
        m.end = i + 1;
        if (static_cast<std::uint32_t>(pid) < abuse_count) {
          m.kind = TermKind::abuse;
          m.term_index = static_cast<std::uint32_t>(pid);
        } else {
          m.kind = TermKind::topic;
          m.term_index = static_cast<std::uint32_t>(pid) - abuse_count;
        }
        out.push_back(m);
      });
    }
    return out;
  }

  const std::vector<AbuseTerm>& abuse_terms() const { return abuse_; }
  const std::vector<TopicTerm>& topic_terms() const { return topics_; }
  const std::vector<std::string>& taxonomy() const { return taxonomy_; }

  int topic_index(std::string_view label) const {
    auto it = topic_index_.find(label);
    return it == topic_index_.end() ? -1 : it->second;
  }

  // Feed every term word into the hashtag segmentation dictionary so terms
  // hidden in hashtags stay recoverable.
  void add_surfaces(SegmentationDict& dict) const {
    for (const auto& t : abuse_)
      for (const auto& w : t.words) dict.add(w);
    for (const auto& t : topics_)
      for (const auto& w : t.words) dict.add(w);
  }

 private:
  static void normalize(std::string& surface, std::vector<std::string>& words) {
    words = split_plain_words(surface);
    surface.clear();
    for (size_t i = 0; i < words.size(); ++i) {
      if (i) surface.push_back(' ');
      surface += words[i];
    }
  }

  static AbuseCategory parse_category(std::string_view s, const std::string& path, size_t line) {
    std::string v = text::to_lower(s);
    if (v == "obscene") return AbuseCategory::obscene;
    if (v == "slur") return AbuseCategory::slur;
    if (v == "insult") return AbuseCategory::insult;
    if (v == "threat") return AbuseCategory::threat;
    throw DataError(path + ":" + std::to_string(line) + ": unknown abuse category '" +
                    std::string(s) + "'");
  }

  std::vector<std::int32_t> intern(const std::vector<std::string>& words) {
    std::vector<std::int32_t> ids;
    ids.reserve(words.size());
    for (const auto& w : words) {
      auto [it, inserted] = vocab_.emplace(w, static_cast<std::int32_t>(vocab_.size()));
      ids.push_back(it->second);
    }
    return ids;
  }

  std::vector<AbuseTerm> abuse_;
  std::vector<TopicTerm> topics_;
  std::vector<std::string> taxonomy_;
  std::unordered_map<std::string, int, StringHash, StringEq> topic_index_;
  std::unordered_map<std::string, std::int32_t, StringHash, StringEq> vocab_;
  detail::TokenAutomaton automaton_;
};

}  // namespace jeer

#endif  // JEER_LEXICON_HPP_
