#pragma once

#include <algorithm>
#include <map>
#include <utility>
#include <vector>

#include "rocscale/roc.hpp"

namespace testsupport {

/// Rank statistic P(S+ > S-) + 0.5 P(S+ = S-) by direct pairwise
/// enumeration; equals the area under the interpolated ROC curve.
inline double rank_auroc(const rocscale::ScorePool& pool) {
  double wins = 0.0;
  std::size_t pairs = 0;
  for (const auto& a : pool.samples()) {
    if (a.label != 1) continue;
    for (const auto& b : pool.samples()) {
      if (b.label != 0) continue;
      ++pairs;
      if (a.score > b.score)
        wins += 1.0;
      else if (a.score == b.score)
        wins += 0.5;
    }
  }
  return wins / static_cast<double>(pairs);
}

/// Step endpoints of the threshold sweep, by dumb enumeration: one point
/// per distinct score (descending), starting from (0, 0).
inline std::vector<rocscale::RocPoint> threshold_sweep(
    const rocscale::ScorePool& pool) {
  std::map<double, std::pair<int, int>> by_score;  // (pos, neg)
  int n_pos = 0, n_neg = 0;
  for (const auto& s : pool.samples()) {
    if (s.label == 1) {
      ++by_score[s.score].first;
      ++n_pos;
    } else {
      ++by_score[s.score].second;
      ++n_neg;
    }
  }
  std::vector<rocscale::RocPoint> pts{{0.0, 0.0}};
  int tp = 0, fp = 0;
  for (auto it = by_score.rbegin(); it != by_score.rend(); ++it) {
    tp += it->second.first;
    fp += it->second.second;
    pts.push_back({static_cast<double>(fp) / n_neg,
                   static_cast<double>(tp) / n_pos});
  }
  return pts;
}

/// Best true positive rate at false positive rate <= f, over sweep points.
inline double sweep_envelope(const std::vector<rocscale::RocPoint>& sweep,
                             double f) {
  double best = 0.0;
  for (const auto& p : sweep)
    if (p.fpr <= f) best = std::max(best, p.tpr);
  return best;
}

/// Closed form for H on the chance-level diagonal curve.
inline double diagonal_h(int k, int p) {
  if (k == 0) return 1.0;
  return static_cast<double>(p) / static_cast<double>(p + k);
}

}  // namespace testsupport
