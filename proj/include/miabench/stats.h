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
#ifndef MIABENCH_STATS_H_
#define MIABENCH_STATS_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "miabench/vec.h"

namespace miabench {

enum class KsMethod { kAsymptotic, kPermutation };

const char* KsMethodName(KsMethod m);
KsMethod ParseKsMethod(std::string_view name);

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
  std::size_t n1 = 0;
  std::size_t n2 = 0;
  KsMethod method = KsMethod::kAsymptotic;
};

// Survival function of the Kolmogorov distribution,
// Q(l) = 2 sum_{j>=1} (-1)^(j-1) exp(-2 j^2 l^2), clamped to [0, 1].
double KolmogorovSurvival(double lambda);

// sup |ECDF_a - ECDF_b| over the pooled sample.
double KsStatistic(std::span<const double> a, std::span<const double> b);

// Two-sample KS test with the asymptotic p-value evaluated at
// lambda = sqrt(ne) * D, ne = n1 n2 / (n1 + n2).
KsResult KsUnivariate(std::span<const double> a, std::span<const double> b);

// Same statistic, p-value from `permutations` random relabelings of the
// pooled sample: p = (1 + #{D_perm >= D}) / (1 + permutations).
KsResult KsUnivariatePermutation(std::span<const double> a, std::span<const double> b,
                                 std::size_t permutations, std::uint64_t seed);

struct BivariateOpts {
  KsMethod method = KsMethod::kPermutation;
  std::size_t permutations = 500;
  std::uint64_t seed = 0;
};

// Fasano-Franceschini statistic: for each sample, the largest difference in
// quadrant fractions taken over anchors drawn from that sample; D is the
// mean of the two. Quadrants around anchor (ax, ay) are closed on the low
// side: a point goes "left" when x <= ax and "below" when y <= ay. Points
// equal to the anchor in both coordinates (the anchor itself and any exact
// copies) are left out of both samples' counts. Fractions use the full
// sample sizes as denominators.
double FasanoFranceschiniStatistic(std::span<const Vec> a, std::span<const Vec> b);

// Bivariate two-sample KS test. Requires 2-d points and at least 2 points
// per sample. The asymptotic p-value uses the correlation-corrected
// Kolmogorov approximation of Fasano and Franceschini.
KsResult KsBivariate(std::span<const Vec> a, std::span<const Vec> b,
                     const BivariateOpts& opts = {});

double AveragePValues(std::span<const KsResult> results);
double Mean(std::span<const double> values);

struct BoxplotSummary {
  double min = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double max = 0.0;
  std::vector<double> outliers;
};

// Quartiles by linear interpolation between order statistics; outliers
// fall beyond 1.5 IQR from the quartiles. min/max span every value.
BoxplotSummary SummarizeBoxplot(std::span<const double> values);

// Linear-interpolation quantile, q in [0, 1].
double Quantile(std::span<const double> values, double q);
double Median(std::span<const double> values);

// Spearman rank correlation with average ranks for ties.
double SpearmanCorrelation(std::span<const double> x, std::span<const double> y);

}  // namespace miabench

#endif  // MIABENCH_STATS_H_
