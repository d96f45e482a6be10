// Copyright 2026 The miabench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "miabench/stats.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <string>

#include "miabench/errors.h"
#include "miabench/rng.h"

namespace miabench {

const char* KsMethodName(KsMethod m) {
  return m == KsMethod::kAsymptotic ? "asymptotic" : "permutation";
}

KsMethod ParseKsMethod(std::string_view name) {
  if (name == "asymptotic") return KsMethod::kAsymptotic;
  if (name == "permutation") return KsMethod::kPermutation;
  throw ConfigError("unknown KS method: " + std::string(name));
}

double KolmogorovSurvival(double lambda) {
  if (!(lambda > 0.0)) return 1.0;
  constexpr double kTermTol = 1e-10;
  if (lambda < 1.18) {
    // The alternating series converges slowly here; use the Jacobi theta
    // form of the CDF instead.
    const double pi = std::numbers::pi;
    const double c = pi * pi / (8.0 * lambda * lambda);
    double cdf = 0.0;
    for (int j = 1; j < 100; ++j) {
      const double odd = 2.0 * j - 1.0;
      const double term = std::exp(-odd * odd * c);
      cdf += term;
      if (term < kTermTol) break;
    }
    cdf *= std::sqrt(2.0 * pi) / lambda;
    return std::clamp(1.0 - cdf, 0.0, 1.0);
  }
  double sum = 0.0;
  double sign = 1.0;
  for (int j = 1; j < 100; ++j) {
    const double term = std::exp(-2.0 * j * j * lambda * lambda);
    sum += sign * term;
    if (term < kTermTol) break;
    sign = -sign;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

namespace {

void RequireNonEmpty(std::size_t n1, std::size_t n2) {
  if (n1 == 0 || n2 == 0) throw DomainError("KS test needs two non-empty samples");
}

// Pooled sample sorted by value, with tie groups marked so the ECDF
// difference is only read between distinct values.
struct SortedPool {
  std::vector<double> values;
  std::vector<std::size_t> source;  // original pooled index
  std::vector<bool> group_end;      // last element of a run of equal values
};

SortedPool MakePool(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size() + b.size();
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  auto value = [&](std::size_t i) { return i < a.size() ? a[i] : b[i - a.size()]; };
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t l, std::size_t r) { return value(l) < value(r); });
  SortedPool pool;
  pool.values.reserve(n);
  for (std::size_t i : idx) pool.values.push_back(value(i));
  pool.source = std::move(idx);
  pool.group_end.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    pool.group_end[i] = i + 1 == n || pool.values[i + 1] != pool.values[i];
  }
  return pool;
}

// in_a[k] tells whether sorted position k belongs to the first sample.
double SweepStatistic(const SortedPool& pool, const std::vector<char>& in_a,
                      std::size_t n1, std::size_t n2) {
  // Exact integer gaps keep equal statistics equal across permutations.
  const auto s1 = static_cast<std::int64_t>(n1);
  const auto s2 = static_cast<std::int64_t>(n2);
  std::int64_t c1 = 0;
  std::int64_t c2 = 0;
  std::int64_t best = 0;
  for (std::size_t k = 0; k < pool.values.size(); ++k) {
    if (in_a[k]) {
      ++c1;
    } else {
      ++c2;
    }
    if (pool.group_end[k]) best = std::max(best, std::abs(c1 * s2 - c2 * s1));
  }
  return static_cast<double>(best) / (static_cast<double>(n1) * static_cast<double>(n2));
}

double EffectiveSize(std::size_t n1, std::size_t n2) {
  const double a = static_cast<double>(n1);
  const double b = static_cast<double>(n2);
  return a * b / (a + b);
}

}  // namespace

double KsStatistic(std::span<const double> a, std::span<const double> b) {
  RequireNonEmpty(a.size(), b.size());
  const SortedPool pool = MakePool(a, b);
  std::vector<char> in_a(pool.values.size());
  for (std::size_t k = 0; k < in_a.size(); ++k) in_a[k] = pool.source[k] < a.size();
  return SweepStatistic(pool, in_a, a.size(), b.size());
}

KsResult KsUnivariate(std::span<const double> a, std::span<const double> b) {
  KsResult r;
  r.statistic = KsStatistic(a, b);
  r.n1 = a.size();
  r.n2 = b.size();
  r.method = KsMethod::kAsymptotic;
  r.p_value = KolmogorovSurvival(std::sqrt(EffectiveSize(r.n1, r.n2)) * r.statistic);
  return r;
}

KsResult KsUnivariatePermutation(std::span<const double> a, std::span<const double> b,
                                 std::size_t permutations, std::uint64_t seed) {
  RequireNonEmpty(a.size(), b.size());
  if (permutations == 0) throw ConfigError("permutation count must be positive");
  const SortedPool pool = MakePool(a, b);
  const std::size_t n = pool.values.size();
  std::vector<char> in_a(n);
  for (std::size_t k = 0; k < n; ++k) in_a[k] = pool.source[k] < a.size();
  KsResult r;
  r.statistic = SweepStatistic(pool, in_a, a.size(), b.size());
  r.n1 = a.size();
  r.n2 = b.size();
  r.method = KsMethod::kPermutation;

  Rng rng(DeriveSeed(seed, Stage::kPermutation));
  std::size_t at_least = 0;
  for (std::size_t p = 0; p < permutations; ++p) {
    std::shuffle(in_a.begin(), in_a.end(), rng);
    if (SweepStatistic(pool, in_a, a.size(), b.size()) >= r.statistic) ++at_least;
  }
  r.p_value = static_cast<double>(1 + at_least) / static_cast<double>(1 + permutations);
  return r;
}

namespace {

class Fenwick {
 public:
  explicit Fenwick(std::size_t n) : tree_(n + 1, 0) {}
  void Clear() { std::fill(tree_.begin(), tree_.end(), 0); }
  void Add(std::size_t i) {
    for (++i; i < tree_.size(); i += i & (~i + 1)) ++tree_[i];
  }
  // Count of inserted positions <= i.
  std::size_t Prefix(std::size_t i) const {
    std::size_t s = 0;
    for (++i; i > 0; i -= i & (~i + 1)) s += tree_[i];
    return s;
  }

 private:
  std::vector<std::size_t> tree_;
};

// Quadrant counts of one labeled subset of a fixed pooled 2-d sample, for
// every pooled point used as an anchor. Geometry is precomputed once so that
// relabelings (permutations) cost O(N log N).
class QuadrantSweep {
 public:
  explicit QuadrantSweep(std::vector<std::array<double, 2>> points)
      : pts_(std::move(points)), n_(pts_.size()), fenwick_(n_) {
    x_order_.resize(n_);
    std::iota(x_order_.begin(), x_order_.end(), std::size_t{0});
    std::sort(x_order_.begin(), x_order_.end(), [&](std::size_t l, std::size_t r) {
      return pts_[l][0] < pts_[r][0] || (pts_[l][0] == pts_[r][0] && pts_[l][1] < pts_[r][1]);
    });
    // Dense ranks of y (equal y share a rank).
    std::vector<std::size_t> y_order(n_);
    std::iota(y_order.begin(), y_order.end(), std::size_t{0});
    std::sort(y_order.begin(), y_order.end(),
              [&](std::size_t l, std::size_t r) { return pts_[l][1] < pts_[r][1]; });
    y_rank_.resize(n_);
    n_y_ranks_ = 0;
    for (std::size_t k = 0; k < n_; ++k) {
      if (k > 0 && pts_[y_order[k]][1] != pts_[y_order[k - 1]][1]) ++n_y_ranks_;
      y_rank_[y_order[k]] = n_y_ranks_;
    }
    ++n_y_ranks_;
    // Identical-point groups are contiguous in x_order_.
    same_group_.resize(n_);
    n_groups_ = 0;
    for (std::size_t k = 0; k < n_; ++k) {
      if (k > 0 && pts_[x_order_[k]] != pts_[x_order_[k - 1]]) ++n_groups_;
      same_group_[x_order_[k]] = n_groups_;
    }
    ++n_groups_;
  }

  std::size_t size() const { return n_; }

  struct Counts {
    std::vector<std::size_t> ll, left, low, same, total;
  };

  // Counts restricted to points with member[i] != 0.
  void Compute(const std::vector<char>& member, Counts& c) {
    c.ll.assign(n_, 0);
    c.left.assign(n_, 0);
    c.low.assign(n_, 0);
    c.same.assign(n_, 0);
    c.total.assign(n_, 0);
    std::size_t total = 0;
    for (char m : member) total += m ? 1 : 0;

    std::vector<std::size_t> by_rank(n_y_ranks_, 0);
    std::vector<std::size_t> by_group(n_groups_, 0);
    for (std::size_t i = 0; i < n_; ++i) {
      if (!member[i]) continue;
      ++by_rank[y_rank_[i]];
      ++by_group[same_group_[i]];
    }
    for (std::size_t r = 1; r < n_y_ranks_; ++r) by_rank[r] += by_rank[r - 1];

    fenwick_.Clear();
    std::size_t inserted = 0;
    std::size_t k = 0;
    while (k < n_) {
      std::size_t end = k;
      const double x = pts_[x_order_[k]][0];
      while (end < n_ && pts_[x_order_[end]][0] == x) ++end;
      for (std::size_t q = k; q < end; ++q) {
        const std::size_t i = x_order_[q];
        if (member[i]) {
          fenwick_.Add(y_rank_[i]);
          ++inserted;
        }
      }
      for (std::size_t q = k; q < end; ++q) {
        const std::size_t i = x_order_[q];
        c.ll[i] = fenwick_.Prefix(y_rank_[i]);
        c.left[i] = inserted;
        c.low[i] = by_rank[y_rank_[i]];
        c.same[i] = by_group[same_group_[i]];
        c.total[i] = total;
      }
      k = end;
    }
  }

 private:
  std::vector<std::array<double, 2>> pts_;
  std::size_t n_;
  std::vector<std::size_t> x_order_;
  std::vector<std::size_t> y_rank_;
  std::size_t n_y_ranks_ = 0;
  std::vector<std::size_t> same_group_;
  std::size_t n_groups_ = 0;
  Fenwick fenwick_;
};

// Four quadrant counts around anchor i, excluding anchor-coincident points.
std::array<double, 4> Quadrants(const QuadrantSweep::Counts& c, std::size_t i) {
  const double same = static_cast<double>(c.same[i]);
  const double ll = static_cast<double>(c.ll[i]) - same;
  const double left = static_cast<double>(c.left[i]) - same;
  const double low = static_cast<double>(c.low[i]) - same;
  const double rest = static_cast<double>(c.total[i]) - same;
  return {ll, left - ll, low - ll, rest - left - low + ll};
}

double SweepFF(QuadrantSweep& sweep, const std::vector<char>& in_a, std::size_t n1,
               std::size_t n2, QuadrantSweep::Counts& ca, QuadrantSweep::Counts& cb) {
  std::vector<char> in_b(in_a.size());
  for (std::size_t i = 0; i < in_a.size(); ++i) in_b[i] = !in_a[i];
  sweep.Compute(in_a, ca);
  sweep.Compute(in_b, cb);
  // Gaps are scaled by n1 * n2 so they stay exact integers.
  const double s1 = static_cast<double>(n1);
  const double s2 = static_cast<double>(n2);
  double d_a = 0.0;
  double d_b = 0.0;
  for (std::size_t i = 0; i < sweep.size(); ++i) {
    const auto qa = Quadrants(ca, i);
    const auto qb = Quadrants(cb, i);
    double m = 0.0;
    for (int q = 0; q < 4; ++q) m = std::max(m, std::abs(qa[q] * s2 - qb[q] * s1));
    if (in_a[i]) {
      d_a = std::max(d_a, m);
    } else {
      d_b = std::max(d_b, m);
    }
  }
  return 0.5 * (d_a + d_b) / (s1 * s2);
}

std::vector<std::array<double, 2>> Pool2d(std::span<const Vec> a, std::span<const Vec> b) {
  std::vector<std::array<double, 2>> pts;
  pts.reserve(a.size() + b.size());
  for (auto sample : {a, b}) {
    for (const Vec& p : sample) {
      if (p.size() != 2) {
        throw DomainError("bivariate KS supports only 2-dimensional points");
      }
      pts.push_back({p[0], p[1]});
    }
  }
  return pts;
}

double Pearson(std::span<const Vec> s) {
  const double n = static_cast<double>(s.size());
  double mx = 0.0, my = 0.0;
  for (const Vec& p : s) {
    mx += p[0];
    my += p[1];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (const Vec& p : s) {
    sxx += (p[0] - mx) * (p[0] - mx);
    syy += (p[1] - my) * (p[1] - my);
    sxy += (p[0] - mx) * (p[1] - my);
  }
  if (sxx <= 0.0 || syy <= 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

void RequireBivariate(std::span<const Vec> a, std::span<const Vec> b) {
  if (a.empty() || b.empty()) throw DomainError("KS test needs two non-empty samples");
  if (a.size() < 2 || b.size() < 2) {
    throw DomainError("bivariate KS test needs at least 2 points per sample");
  }
}

}  // namespace

double FasanoFranceschiniStatistic(std::span<const Vec> a, std::span<const Vec> b) {
  if (a.empty() || b.empty()) throw DomainError("KS test needs two non-empty samples");
  QuadrantSweep sweep(Pool2d(a, b));
  std::vector<char> in_a(sweep.size(), 0);
  std::fill(in_a.begin(), in_a.begin() + static_cast<std::ptrdiff_t>(a.size()), 1);
  QuadrantSweep::Counts ca, cb;
  return SweepFF(sweep, in_a, a.size(), b.size(), ca, cb);
}

KsResult KsBivariate(std::span<const Vec> a, std::span<const Vec> b,
                     const BivariateOpts& opts) {
  RequireBivariate(a, b);
  QuadrantSweep sweep(Pool2d(a, b));
  std::vector<char> in_a(sweep.size(), 0);
  std::fill(in_a.begin(), in_a.begin() + static_cast<std::ptrdiff_t>(a.size()), 1);
  QuadrantSweep::Counts ca, cb;

  KsResult r;
  r.n1 = a.size();
  r.n2 = b.size();
  r.method = opts.method;
  r.statistic = SweepFF(sweep, in_a, r.n1, r.n2, ca, cb);

  if (opts.method == KsMethod::kAsymptotic) {
    const double r1 = Pearson(a);
    const double r2 = Pearson(b);
    const double rr = std::sqrt(std::max(0.0, 1.0 - 0.5 * (r1 * r1 + r2 * r2)));
    const double sqrt_ne = std::sqrt(EffectiveSize(r.n1, r.n2));
    const double lambda = sqrt_ne * r.statistic / (1.0 + rr * (0.25 - 0.75 / sqrt_ne));
    r.p_value = KolmogorovSurvival(lambda);
    return r;
  }

  if (opts.permutations == 0) throw ConfigError("permutation count must be positive");
  Rng rng(DeriveSeed(opts.seed, Stage::kPermutation));
  std::size_t at_least = 0;
  for (std::size_t p = 0; p < opts.permutations; ++p) {
    std::shuffle(in_a.begin(), in_a.end(), rng);
    if (SweepFF(sweep, in_a, r.n1, r.n2, ca, cb) >= r.statistic) ++at_least;
  }
  r.p_value = static_cast<double>(1 + at_least) / static_cast<double>(1 + opts.permutations);
  return r;
}

double Mean(std::span<const double> values) {
  if (values.empty()) throw DomainError("mean of empty list");
  double s = 0.0;
  for (double v : values) s += v;
  return s / static_cast<double>(values.size());
}

double AveragePValues(std::span<const KsResult> results) {
  if (results.empty()) throw DomainError("no p-values to average");
  double s = 0.0;
  for (const KsResult& r : results) s += r.p_value;
  return s / static_cast<double>(results.size());
}

double Quantile(std::span<const double> values, double q) {
  if (values.empty()) throw DomainError("quantile of empty list");
  std::vector<double> v(values.begin(), values.end());
  std::sort(v.begin(), v.end());
  const double h = (static_cast<double>(v.size()) - 1.0) * std::clamp(q, 0.0, 1.0);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (h - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

double Median(std::span<const double> values) { return Quantile(values, 0.5); }

BoxplotSummary SummarizeBoxplot(std::span<const double> values) {
  if (values.empty()) throw DomainError("boxplot of empty list");
  std::vector<double> v(values.begin(), values.end());
  std::sort(v.begin(), v.end());
  BoxplotSummary s;
  s.min = v.front();
  s.max = v.back();
  s.q1 = Quantile(v, 0.25);
  s.median = Quantile(v, 0.5);
  s.q3 = Quantile(v, 0.75);
  const double iqr = s.q3 - s.q1;
  for (double x : v) {
    if (x < s.q1 - 1.5 * iqr || x > s.q3 + 1.5 * iqr) s.outliers.push_back(x);
  }
  return s;
}

namespace {

std::vector<double> AverageRanks(std::span<const double> v) {
  std::vector<std::size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> ranks(v.size());
  std::size_t k = 0;
  while (k < idx.size()) {
    std::size_t end = k;
    while (end < idx.size() && v[idx[end]] == v[idx[k]]) ++end;
    const double avg = 0.5 * static_cast<double>(k + end - 1) + 1.0;
    for (std::size_t q = k; q < end; ++q) ranks[idx[q]] = avg;
    k = end;
  }
  return ranks;
}

}  // namespace

double SpearmanCorrelation(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw DomainError("Spearman correlation needs two equal-length lists of size >= 2");
  }
  const std::vector<double> rx = AverageRanks(x);
  const std::vector<double> ry = AverageRanks(y);
  const double mx = Mean(rx);
  const double my = Mean(ry);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace miabench
