// SPDX-License-Identifier: Apache-2.0
#ifndef JEER_STATS_HPP_
#define JEER_STATS_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace jeer {

struct TestResult {
  std::string method;  // fully identifies the variant, e.g. "welch-t"
  double statistic = 0.0;
  double p_value = 1.0;
  std::optional<double> df;
  size_t n1 = 0, n2 = 0;
  std::string note;
};

namespace numeric {

inline constexpr double kEps = 3e-16;
inline constexpr int kMaxIter = 500;

// Continued fraction for the incomplete beta function (modified Lentz).
inline double beta_cf(double a, double b, double x) {
  const double tiny = 1e-300;
  double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < tiny) d = tiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) break;
  }
  return h;
}

// Regularized incomplete beta I_x(a, b).
inline double reg_inc_beta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  double ln_bt = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) +
                 b * std::log1p(-x);
  double bt = std::exp(ln_bt);
  if (x < (a + 1.0) / (a + b + 2.0)) return bt * beta_cf(a, b, x) / a;
  return 1.0 - bt * beta_cf(b, a, 1.0 - x) / b;
}

// Regularized lower incomplete gamma P(a, x): series for x < a+1,
// continued fraction otherwise.
inline double reg_inc_gamma_p(double a, double x) {
  if (x <= 0.0) return 0.0;
  if (x < a + 1.0) {
    double ap = a, sum = 1.0 / a, del = sum;
    for (int n = 1; n <= kMaxIter; ++n) {
      ap += 1.0;
      del *= x / ap;
      sum += del;
      if (std::fabs(del) < std::fabs(sum) * kEps) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
  }
  const double tiny = 1e-300;
  double b = x + 1.0 - a, c = 1.0 / tiny, d = 1.0 / b, h = d;
  for (int i = 1; i <= kMaxIter; ++i) {
    double an = -double(i) * (double(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) break;
  }
  double q = std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
  return 1.0 - q;
}

inline double chi_square_upper_p(double x, double df) {
  return 1.0 - reg_inc_gamma_p(df / 2.0, x / 2.0);
}

// Two-sided tail of Student's t.
inline double student_t_two_sided_p(double t, double df) {
  if (std::isinf(t)) return 0.0;
  double x = df / (df + t * t);
  return reg_inc_beta(df / 2.0, 0.5, x);
}

inline double mean(std::span<const double> xs) {
  double s = 0;
  for (double x : xs) s += x;
  return s / double(xs.size());
}

// Unbiased sample variance (n-1 divisor).
inline double sample_variance(std::span<const double> xs, double m) {
  double s = 0;
  for (double x : xs) s += (x - m) * (x - m);
  return s / double(xs.size() - 1);
}

inline double pearson_r(std::span<const double> xs, std::span<const double> ys) {
  const size_t n = xs.size();
  double mx = mean(xs), my = mean(ys);
  double sxy = 0, sxx = 0, syy = 0;
  for (size_t i = 0; i < n; ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0)
    throw std::invalid_argument("pearson_r: sample with zero variance");
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace numeric

// Welch's unequal-variance t-test, two-sided, with Welch-Satterthwaite
// degrees of freedom. Sample variances use the n-1 divisor.
inline TestResult welch_t_test(std::span<const double> a, std::span<const double> b) {
  if (a.size() < 2 || b.size() < 2)
    throw std::invalid_argument("welch_t_test: each sample needs at least 2 values");
  TestResult r;
  r.method = "welch-t";
  r.n1 = a.size();
  r.n2 = b.size();
  const double ma = numeric::mean(a), mb = numeric::mean(b);
  const double va = numeric::sample_variance(a, ma), vb = numeric::sample_variance(b, mb);
  if (va == 0.0 && vb == 0.0) {
    r.df = double(a.size() + b.size() - 2);
    if (ma == mb) {
      r.statistic = 0.0;
      r.p_value = 1.0;
      r.note = "both samples constant and equal";
    } else {
      r.statistic = ma > mb ? std::numeric_limits<double>::infinity()
                            : -std::numeric_limits<double>::infinity();
      r.p_value = 0.0;
      r.note = "both samples constant";
    }
    return r;
  }
  const double sa = va / double(a.size()), sb = vb / double(b.size());
  r.statistic = (ma - mb) / std::sqrt(sa + sb);
  const double df = (sa + sb) * (sa + sb) /
                    (sa * sa / double(a.size() - 1) + sb * sb / double(b.size() - 1));
  r.df = df;
  r.p_value = numeric::student_t_two_sided_p(r.statistic, df);
  return r;
}

// First-order partial Pearson correlation of (x, y) controlling for z, from
// the pairwise correlations; p via the t transform with n-3 df. When the
// control absorbs x or y entirely (|r| with the control = 1) nothing is left
// to correlate and the result is 0 with a degeneracy note.
inline TestResult partial_correlation(std::span<const double> x, std::span<const double> y,
                                      std::span<const double> control) {
  if (x.size() != y.size() || x.size() != control.size())
    throw std::invalid_argument("partial_correlation: samples must have equal length");
  if (x.size() < 4)
    throw std::invalid_argument("partial_correlation: need at least 4 observations");
  TestResult r;
  r.method = "partial-pearson";
  r.n1 = r.n2 = x.size();
  r.df = double(x.size() - 3);
  const double rxy = numeric::pearson_r(x, y);
  const double rxz = numeric::pearson_r(x, control);
  const double ryz = numeric::pearson_r(y, control);
  const double den = (1.0 - rxz * rxz) * (1.0 - ryz * ryz);
  if (den <= 1e-12) {
    r.statistic = 0.0;
    r.p_value = 1.0;
    r.note = "degenerate: control absorbs a variable";
    return r;
  }
  double pr = (rxy - rxz * ryz) / std::sqrt(den);
  pr = std::clamp(pr, -1.0, 1.0);
  r.statistic = pr;
  const double df = double(x.size() - 3);
  if (1.0 - pr * pr <= 1e-15) {
    r.p_value = 0.0;
  } else {
    const double t = pr * std::sqrt(df / (1.0 - pr * pr));
    r.p_value = numeric::student_t_two_sided_p(t, df);
  }
  return r;
}

// 2x2 chi-square with Yates continuity correction; the correction never
// overshoots (|O-E| - 0.5 floors at zero). p from chi-square with 1 df.
inline TestResult chi_square_yates(std::uint64_t a, std::uint64_t b, std::uint64_t c,
                                   std::uint64_t d) {
  const double r1 = double(a + b), r2 = double(c + d);
  const double c1 = double(a + c), c2 = double(b + d);
  if (r1 == 0 || r2 == 0 || c1 == 0 || c2 == 0)
    throw std::invalid_argument("chi_square_yates: zero margin");
  const double n = r1 + r2;
  const double obs[4] = {double(a), double(b), double(c), double(d)};
  const double exp[4] = {r1 * c1 / n, r1 * c2 / n, r2 * c1 / n, r2 * c2 / n};
  double stat = 0;
  for (int i = 0; i < 4; ++i) {
    const double diff = std::max(std::fabs(obs[i] - exp[i]) - 0.5, 0.0);
    stat += diff * diff / exp[i];
  }
  TestResult r;
  r.method = "chi-square-yates";
  r.statistic = stat;
  r.df = 1.0;
  r.n1 = static_cast<size_t>(r1);
  r.n2 = static_cast<size_t>(r2);
  r.p_value = numeric::chi_square_upper_p(stat, 1.0);
  return r;
}

// Fisher's exact test, two-sided by summing hypergeometric probabilities of
// tables as or more extreme than the observed one (standard small relative
// tolerance for ties).
inline TestResult fisher_exact_2x2(std::uint64_t a, std::uint64_t b, std::uint64_t c,
                                   std::uint64_t d) {
  const std::int64_t r1 = std::int64_t(a + b), c1 = std::int64_t(a + c);
  const std::int64_t n = std::int64_t(a + b + c + d);
  TestResult r;
  r.method = "fisher-exact";
  r.n1 = size_t(r1);
  r.n2 = size_t(c + d);
  const double oddsn = double(a) * double(d), oddsd = double(b) * double(c);
  r.statistic = oddsd > 0 ? oddsn / oddsd
                          : (oddsn > 0 ? std::numeric_limits<double>::infinity() : 1.0);
  if (n == 0) {
    r.p_value = 1.0;
    r.note = "empty table";
    return r;
  }
  auto log_choose = [](std::int64_t nn, std::int64_t kk) {
    return std::lgamma(double(nn + 1)) - std::lgamma(double(kk + 1)) -
           std::lgamma(double(nn - kk + 1));
  };
  const double log_denom = log_choose(n, c1);
  auto table_p = [&](std::int64_t k) {
    return std::exp(log_choose(r1, k) + log_choose(n - r1, c1 - k) - log_denom);
  };
  const std::int64_t lo = std::max<std::int64_t>(0, r1 + c1 - n);
  const std::int64_t hi = std::min(r1, c1);
  const double p_obs = table_p(std::int64_t(a));
  double p = 0;
  for (std::int64_t k = lo; k <= hi; ++k) {
    const double pk = table_p(k);
    if (pk <= p_obs * (1.0 + 1e-7)) p += pk;
  }
  r.p_value = std::min(p, 1.0);
  return r;
}

struct ClassifierEval {
  std::uint64_t tp = 0, fp = 0, tn = 0, fn = 0;
  double accuracy = 0, precision = 0, recall = 0, f1 = 0, kappa = 0;
  bool degenerate_precision = false;  // no positive predictions
  bool degenerate_recall = false;     // no positive gold labels
  bool degenerate_kappa = false;      // chance agreement is 1
};

inline ClassifierEval evaluate_counts(std::uint64_t tp, std::uint64_t fp, std::uint64_t tn,
                                      std::uint64_t fn) {
  ClassifierEval e;
  e.tp = tp;
  e.fp = fp;
  e.tn = tn;
  e.fn = fn;
  const double total = double(tp + fp + tn + fn);
  if (total == 0) throw std::invalid_argument("evaluate_counts: empty confusion matrix");
  e.accuracy = double(tp + tn) / total;
  if (tp + fp > 0) {
    e.precision = double(tp) / double(tp + fp);
  } else {
    e.degenerate_precision = true;
  }
  if (tp + fn > 0) {
    e.recall = double(tp) / double(tp + fn);
  } else {
    e.degenerate_recall = true;
  }
  e.f1 = (e.precision + e.recall > 0) ? 2.0 * e.precision * e.recall / (e.precision + e.recall)
                                      : 0.0;
  const double po = e.accuracy;
  const double pe = (double(tp + fp) * double(tp + fn) + double(fn + tn) * double(fp + tn)) /
                    (total * total);
  if (1.0 - pe <= 0.0) {
    e.kappa = 0.0;
    e.degenerate_kappa = true;
  } else {
    e.kappa = (po - pe) / (1.0 - pe);
  }
  return e;
}

// Cohen's kappa alongside the usual confusion-matrix metrics.
inline ClassifierEval evaluate_classifier(const std::vector<bool>& predictions,
                                          const std::vector<bool>& gold) {
  if (predictions.size() != gold.size())
    throw std::invalid_argument("evaluate_classifier: length mismatch");
  if (predictions.empty()) throw std::invalid_argument("evaluate_classifier: empty input");
  std::uint64_t tp = 0, fp = 0, tn = 0, fn = 0;
  for (size_t i = 0; i < predictions.size(); ++i) {
    if (predictions[i] && gold[i]) ++tp;
    else if (predictions[i] && !gold[i]) ++fp;
    else if (!predictions[i] && gold[i]) ++fn;
    else ++tn;
  }
  return evaluate_counts(tp, fp, tn, fn);
}

}  // namespace jeer

#endif  // JEER_STATS_HPP_
