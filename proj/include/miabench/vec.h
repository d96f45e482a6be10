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

#ifndef MIABENCH_VEC_H_
#define MIABENCH_VEC_H_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "miabench/errors.h"

namespace miabench {

using Vec = std::vector<double>;

inline void RequireSameDim(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw DomainError("dimension mismatch");
}

inline double Dot(std::span<const double> a, std::span<const double> b) {
  RequireSameDim(a, b);
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double NormL2(std::span<const double> a) { return std::sqrt(Dot(a, a)); }

inline double NormL1(std::span<const double> a) {
  double s = 0.0;
  for (double v : a) s += std::abs(v);
  return s;
}

inline double NormLinf(std::span<const double> a) {
  double s = 0.0;
  for (double v : a) s = std::max(s, std::abs(v));
  return s;
}

inline double DistanceL2(std::span<const double> a, std::span<const double> b) {
  RequireSameDim(a, b);
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

inline Vec Sub(std::span<const double> a, std::span<const double> b) {
  RequireSameDim(a, b);
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

// a + t * b
inline Vec Axpy(std::span<const double> a, double t, std::span<const double> b) {
  RequireSameDim(a, b);
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + t * b[i];
  return out;
}

}  // namespace miabench

#endif  // MIABENCH_VEC_H_
