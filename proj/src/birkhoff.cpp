// Copyright 2026 The Duelbench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cmath>
#include <vector>

#include "duelbench/minimax.hpp"

namespace duelbench {

namespace {

constexpr double kZeroEntry = 1e-10;

// Kuhn augmenting-path matching restricted to entries >= threshold.
bool try_kuhn(int page, double threshold, const std::vector<double>& r, int n,
              std::vector<int>& match_of_pos, std::vector<char>& seen) {
  for (int pos = 0; pos < n; ++pos) {
    if (seen[pos] || r[static_cast<size_t>(page) * n + pos] < threshold) continue;
    seen[pos] = 1;
    if (match_of_pos[pos] < 0 ||
        try_kuhn(match_of_pos[pos], threshold, r, n, match_of_pos, seen)) {
      match_of_pos[pos] = page;
      return true;
    }
  }
  return false;
}

// Perfect matching using only entries >= threshold; empty if none exists.
std::vector<int> matching_at(double threshold, const std::vector<double>& r,
                             int n) {
  std::vector<int> match_of_pos(n, -1);
  for (int page = 0; page < n; ++page) {
    std::vector<char> seen(n, 0);
    if (!try_kuhn(page, threshold, r, n, match_of_pos, seen)) return {};
  }
  std::vector<int> pos_of_page(n, -1);
  for (int pos = 0; pos < n; ++pos) pos_of_page[match_of_pos[pos]] = pos;
  return pos_of_page;
}

}  // namespace

std::vector<BirkhoffTerm> birkhoff_decompose(const MarginalMatrix& q,
                                             double tol) {
  const int n = q.n;
  if (n < 1 || q.q.size() != static_cast<size_t>(n) * n) {
    throw std::invalid_argument("marginal matrix shape mismatch");
  }
  if (q.stochasticity_residual() > tol) {
    throw std::invalid_argument("matrix is not doubly stochastic within tolerance");
  }

  std::vector<double> r = q.q;
  for (double& v : r) v = std::max(v, 0.0);

  std::vector<BirkhoffTerm> terms;
  const int max_terms = n * n - 2 * n + 2 + 4;
  double total = 0.0;
  for (int iter = 0; iter < std::max(max_terms, 2); ++iter) {
    double remaining = *std::max_element(r.begin(), r.end());
    if (remaining < kZeroEntry || total >= 1.0 - 1e-9) break;

    // Largest threshold that still admits a perfect matching.
    std::vector<double> levels;
    levels.reserve(r.size());
    for (double v : r) {
      if (v >= kZeroEntry) levels.push_back(v);
    }
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
    int lo = 0, hi = static_cast<int>(levels.size()) - 1, best = -1;
    std::vector<int> best_match;
    while (lo <= hi) {
      int mid = (lo + hi) / 2;
      std::vector<int> m = matching_at(levels[mid], r, n);
      if (!m.empty()) {
        best = mid;
        best_match = std::move(m);
        lo = mid + 1;
      } else {
        hi = mid - 1;
      }
    }
    if (best < 0) {
      throw NumericalBreakdown(
          "no perfect matching on the residual support; matrix mass leaked");
    }

    double weight = 2.0;
    for (int page = 0; page < n; ++page) {
      weight = std::min(weight, r[static_cast<size_t>(page) * n + best_match[page]]);
    }
    weight = std::min(weight, 1.0 - total);
    terms.push_back({weight, best_match});
    total += weight;
    for (int page = 0; page < n; ++page) {
      double& cell = r[static_cast<size_t>(page) * n + best_match[page]];
      cell -= weight;
      if (cell < kZeroEntry) cell = 0.0;
    }
  }

  if (std::abs(total - 1.0) > 1e-6) {
    throw NumericalBreakdown("decomposition weights failed to reach 1");
  }
  for (BirkhoffTerm& t : terms) t.weight /= total;
  return terms;
}

}  // namespace duelbench
