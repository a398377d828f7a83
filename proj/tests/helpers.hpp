// SPDX-License-Identifier: Apache-2.0
//
// Shared test utilities: scratch directories, fixture writing, and the
// brute-force oracles the implementation is checked against. The oracles
// deliberately avoid the production code paths.
#ifndef JEER_TESTS_HELPERS_HPP_
#define JEER_TESTS_HELPERS_HPP_

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "jeer/lexicon.hpp"
#include "jeer/segment.hpp"

namespace testutil {

class TempDir {
 public:
  TempDir() {
    auto stamp = std::chrono::steady_clock::now().time_since_epoch().count();
    path_ = std::filesystem::temp_directory_path() /
            ("jeer_test_" + std::to_string(stamp) + "_" + std::to_string(counter_++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }

  std::string write(const std::string& name, const std::string& content) const {
    auto p = path_ / name;
    std::ofstream out(p, std::ios::binary);
    out << content;
    return p.string();
  }

 private:
  std::filesystem::path path_;
  static inline int counter_ = 0;
};

// Token-by-token scan of every term at every position; the reference for the
// automaton. URL and mention tokens can be neither inside nor across a match.
inline std::set<std::tuple<int, std::uint32_t, std::uint32_t, std::uint32_t>> brute_force_matches(
    const jeer::CompiledLexicon& lexicon, const jeer::TokenStream& stream) {
  std::set<std::tuple<int, std::uint32_t, std::uint32_t, std::uint32_t>> out;
  auto matchable = [&](std::uint32_t i) {
    return stream.tokens[i].origin != jeer::TokenOrigin::url &&
           stream.tokens[i].origin != jeer::TokenOrigin::mention;
  };
  auto scan = [&](const std::vector<std::string>& words, int kind, std::uint32_t term) {
    if (words.empty()) return;
    for (std::uint32_t start = 0; start + words.size() <= stream.tokens.size(); ++start) {
      bool ok = true;
      for (std::uint32_t k = 0; k < words.size() && ok; ++k)
        ok = matchable(start + k) && stream.tokens[start + k].surface == words[k];
      if (ok)
        out.emplace(kind, term, start, start + static_cast<std::uint32_t>(words.size()));
    }
  };
  for (std::uint32_t t = 0; t < lexicon.abuse_terms().size(); ++t)
    scan(lexicon.abuse_terms()[t].words, 0, t);
  for (std::uint32_t t = 0; t < lexicon.topic_terms().size(); ++t)
    scan(lexicon.topic_terms()[t].words, 1, t);
  return out;
}

inline std::set<std::tuple<int, std::uint32_t, std::uint32_t, std::uint32_t>> match_set(
    const jeer::CompiledLexicon& lexicon, const jeer::TokenStream& stream) {
  std::set<std::tuple<int, std::uint32_t, std::uint32_t, std::uint32_t>> out;
  for (const jeer::Match& m : lexicon.match(stream))
    out.emplace(m.kind == jeer::TermKind::abuse ? 0 : 1, m.term_index, m.begin, m.end);
  return out;
}

// Exhaustive hashtag segmentation: enumerate every split, apply the stated
// order (fewest words, then longest first word, then lexicographically
// smallest sequence), return the optimum.
inline void enumerate_segmentations(const std::string& body, size_t pos,
                                    const jeer::SegmentationDict& dict,
                                    std::vector<std::string>& current,
                                    std::vector<std::vector<std::string>>& all) {
  if (pos == body.size()) {
    all.push_back(current);
    return;
  }
  auto is_digit = [](char c) { return c >= '0' && c <= '9'; };
  if (is_digit(body[pos])) {
    size_t k = pos;
    while (k < body.size() && is_digit(body[k])) ++k;
    current.push_back(body.substr(pos, k - pos));
    enumerate_segmentations(body, k, dict, current, all);
    current.pop_back();
    return;
  }
  for (size_t len = 1; pos + len <= body.size(); ++len) {
    if (is_digit(body[pos + len - 1])) break;
    std::string word = body.substr(pos, len);
    if (!dict.contains(word)) continue;
    current.push_back(word);
    enumerate_segmentations(body, pos + len, dict, current, all);
    current.pop_back();
  }
}

inline std::optional<std::vector<std::string>> brute_force_segment(
    const std::string& body, const jeer::SegmentationDict& dict) {
  std::vector<std::vector<std::string>> all;
  std::vector<std::string> current;
  enumerate_segmentations(body, 0, dict, current, all);
  if (all.empty()) return std::nullopt;
  auto better = [](const std::vector<std::string>& a, const std::vector<std::string>& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    if (a[0].size() != b[0].size()) return a[0].size() > b[0].size();
    return a < b;
  };
  std::sort(all.begin(), all.end(), better);
  return all.front();
}

// ---- numeric oracles, independent of jeer/stats.hpp internals ----

inline double t_density(double x, double df) {
  const double ln = std::lgamma((df + 1) / 2) - std::lgamma(df / 2) -
                    0.5 * std::log(df * M_PI) - (df + 1) / 2 * std::log1p(x * x / df);
  return std::exp(ln);
}

inline double simpson_t(double df, double a, double b, double fa, double fb, double fm,
                        double eps, int depth) {
  const double m = (a + b) / 2;
  const double lm = (a + m) / 2, rm = (m + b) / 2;
  const double flm = t_density(lm, df), frm = t_density(rm, df);
  const double whole = (b - a) / 6 * (fa + 4 * fm + fb);
  const double left = (m - a) / 6 * (fa + 4 * flm + fm);
  const double right = (b - m) / 6 * (fm + 4 * frm + fb);
  if (depth > 40 || std::fabs(left + right - whole) < 15 * eps)
    return left + right + (left + right - whole) / 15;
  return simpson_t(df, a, m, fa, fm, flm, eps / 2, depth + 1) +
         simpson_t(df, m, b, fm, fb, frm, eps / 2, depth + 1);
}

// Two-sided Student-t p by adaptive quadrature of the density.
inline double t_two_sided_quad(double t, double df) {
  const double hi = std::fabs(t);
  if (hi == 0) return 1.0;
  const double integral = simpson_t(df, 0, hi, t_density(0, df), t_density(hi, df),
                                    t_density(hi / 2, df), 1e-13, 0);
  return std::max(0.0, 1.0 - 2.0 * integral);
}

// Hypergeometric table probability from plain factorials (n <= 60).
inline long double choose_ld(int n, int k) {
  static long double fact[171];
  static bool init = false;
  if (!init) {
    fact[0] = 1.0L;
    for (int i = 1; i <= 170; ++i) fact[i] = fact[i - 1] * i;
    init = true;
  }
  return fact[n] / (fact[k] * fact[n - k]);
}

inline double fisher_two_sided_enum(int a, int b, int c, int d) {
  const int r1 = a + b, c1 = a + c, n = a + b + c + d;
  if (n == 0) return 1.0;
  const long double denom = choose_ld(n, c1);
  auto pk = [&](int k) { return double(choose_ld(r1, k) * choose_ld(n - r1, c1 - k) / denom); };
  const int lo = std::max(0, r1 + c1 - n), hi = std::min(r1, c1);
  const double p_obs = pk(a);
  double p = 0;
  for (int k = lo; k <= hi; ++k)
    if (pk(k) <= p_obs * (1 + 1e-7)) p += pk(k);
  return std::min(p, 1.0);
}

inline double pearson_plain(const std::vector<double>& x, const std::vector<double>& y) {
  const size_t n = x.size();
  double mx = 0, my = 0;
  for (size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= double(n);
  my /= double(n);
  double sxy = 0, sxx = 0, syy = 0;
  for (size_t i = 0; i < n; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

// Partial correlation through the regression-residual route.
inline double partial_by_residuals(const std::vector<double>& x, const std::vector<double>& y,
                                   const std::vector<double>& z) {
  const size_t n = x.size();
  auto residuals = [&](const std::vector<double>& v) {
    double mv = 0, mz = 0;
    for (size_t i = 0; i < n; ++i) {
      mv += v[i];
      mz += z[i];
    }
    mv /= double(n);
    mz /= double(n);
    double szz = 0, svz = 0;
    for (size_t i = 0; i < n; ++i) {
      szz += (z[i] - mz) * (z[i] - mz);
      svz += (v[i] - mv) * (z[i] - mz);
    }
    const double beta = svz / szz;
    std::vector<double> res(n);
    for (size_t i = 0; i < n; ++i) res[i] = v[i] - mv - beta * (z[i] - mz);
    return res;
  };
  return pearson_plain(residuals(x), residuals(y));
}

}  // namespace testutil

#endif  // JEER_TESTS_HELPERS_HPP_
