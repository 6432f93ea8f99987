#include "vtex/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "parallel.hpp"
#include "vtex/error.hpp"

namespace vtex {

std::size_t FrameIndexSequence::cut_count() const noexcept {
  return static_cast<std::size_t>(std::count_if(
      transitions.begin(), transitions.end(),
      [](const Transition& t) { return t.kind == TransitionKind::Cut; }));
}

FrameIndexSequence annotate(std::vector<std::size_t> indices) {
  FrameIndexSequence seq;
  seq.indices = std::move(indices);
  for (std::size_t t = 0; t + 1 < seq.indices.size(); ++t) {
    const bool consecutive = seq.indices[t + 1] == seq.indices[t] + 1;
    seq.transitions.push_back(
        {t, consecutive ? TransitionKind::Consecutive : TransitionKind::Cut});
  }
  return seq;
}

namespace {

// Inverse-CDF draw over row[0, limit). Zero-probability entries are never
// returned.
std::size_t draw(std::span<const double> row, std::size_t limit, Rng& rng) {
  double total = 0.0;
  for (std::size_t j = 0; j < limit; ++j) total += row[j];
  const double target = rng.uniform() * total;
  double acc = 0.0;
  std::size_t last_positive = limit;
  for (std::size_t j = 0; j < limit; ++j) {
    if (row[j] <= 0.0) continue;
    acc += row[j];
    last_positive = j;
    if (acc > target) return j;
  }
  if (last_positive == limit) {
    fail(ErrorCode::InvalidArgument, "transition row has no probability mass");
  }
  return last_positive;
}

void check_row(const TransitionModel& model, std::size_t current) {
  if (current >= model.probabilities.rows()) {
    fail(ErrorCode::IndexOutOfRange,
         "frame " + std::to_string(current) + " outside model rows [0, " +
             std::to_string(model.probabilities.rows()) + ")");
  }
}

}  // namespace

std::size_t sample_next(const TransitionModel& model, std::size_t current, Rng& rng) {
  check_row(model, current);
  return draw(model.probabilities.row(current), model.probabilities.cols(), rng);
}

FrameIndexSequence random_playback(const TransitionModel& model, std::size_t start,
                                   std::size_t length, Rng& rng) {
  if (length < 1) fail(ErrorCode::InvalidArgument, "playback length must be >= 1");
  check_row(model, start);
  const std::size_t limit = std::min(model.probabilities.rows(), model.probabilities.cols());
  std::vector<std::size_t> out{start};
  out.reserve(length);
  std::size_t current = start;
  while (out.size() < length) {
    current = draw(model.probabilities.row(current), limit, rng);
    out.push_back(current);
  }
  return annotate(std::move(out));
}

std::size_t default_min_loop_length(std::size_t frame_count) noexcept {
  return std::max<std::size_t>(8, frame_count / 10);
}

namespace {

bool better(const Loop& a, const Loop& b) {
  if (a.cut_cost != b.cut_cost) return a.cut_cost < b.cut_cost;
  if (a.length() != b.length()) return a.length() > b.length();
  return a.start < b.start;
}

}  // namespace

Loop find_loop(const DistanceMatrix& shifted, std::size_t min_length, double prune_frac) {
  const Matrix& m = shifted.values;
  const std::size_t n = m.cols();
  if (n < 2 || m.rows() + 1 != n) {
    fail(ErrorCode::InvalidArgument, "find_loop expects an (n-1) x n shifted matrix");
  }
  if (!(prune_frac >= 0.0 && prune_frac < 0.5)) {
    fail(ErrorCode::InvalidArgument, "prune fraction must lie in [0, 0.5)");
  }
  const auto pruned = static_cast<std::size_t>(std::floor(prune_frac * static_cast<double>(n)));
  const std::size_t lo = pruned;
  // Highest usable end index: inside the pruned range and owning a row.
  const std::size_t hi = std::min(n - 1 - pruned, n - 2);
  const std::size_t need = std::max<std::size_t>(min_length, 2);

  const std::size_t starts = hi >= lo ? hi - lo + 1 : 0;
  std::vector<std::optional<Loop>> best_per_start(starts);
  detail::parallel_for(starts, [&](std::size_t s) {
    const std::size_t i = lo + s;
    for (std::size_t j = i + need - 1; j <= hi; ++j) {
      const Loop cand{i, j, m(j, i)};
      if (!best_per_start[s] || better(cand, *best_per_start[s])) best_per_start[s] = cand;
    }
  });
  std::optional<Loop> best;
  for (const auto& b : best_per_start) {
    if (b && (!best || better(*b, *best))) best = b;
  }
  if (!best) {
    fail(ErrorCode::NoFeasibleLoop,
         "no loop of length >= " + std::to_string(need) + " among frames [" +
             std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  return *best;
}

FrameIndexSequence loop_sequence(const Loop& loop) {
  std::vector<std::size_t> idx(loop.length());
  for (std::size_t t = 0; t < idx.size(); ++t) idx[t] = loop.start + t;
  return annotate(std::move(idx));
}

FrameIndexSequence cluster_sequence(const Clustering& clustering, const DistanceMatrix& d,
                                    std::size_t start, std::size_t length) {
  if (clustering.k < 3) {
    fail(ErrorCode::InsufficientClusters,
         "cluster sequencing needs k >= 3, got k = " + std::to_string(clustering.k));
  }
  const std::size_t n = clustering.assignments.size();
  if (d.values.rows() != n || d.values.cols() != n) {
    fail(ErrorCode::DimensionMismatch, "distance matrix does not cover the clustered frames");
  }
  if (start >= n) {
    fail(ErrorCode::IndexOutOfRange, "start frame " + std::to_string(start) + " >= " +
                                         std::to_string(n));
  }
  if (length < 1) fail(ErrorCode::InvalidArgument, "sequence length must be >= 1");

  const auto k = static_cast<std::size_t>(clustering.k);
  std::vector<std::vector<std::size_t>> members(k);
  for (std::size_t f = 0; f < n; ++f)
    members[static_cast<std::size_t>(clustering.assignments[f])].push_back(f);

  std::vector<std::size_t> out{start};
  std::size_t current = start;
  int previous_cluster = -1;
  while (out.size() < length) {
    const int here = clustering.assignments[current];
    int target = -1;
    double target_d = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < k; ++c) {
      const int ci = static_cast<int>(c);
      if (ci == here || ci == previous_cluster) continue;
      const double dist = squared_distance(clustering.centroids[here], clustering.centroids[c]);
      if (dist < target_d) {
        target_d = dist;
        target = ci;
      }
    }
    const auto& pool = members[static_cast<std::size_t>(target)];
    if (pool.empty()) {
      fail(ErrorCode::EmptyCluster, "cluster " + std::to_string(target) + " has no frames");
    }
    std::size_t next = pool.front();
    for (std::size_t f : pool) {
      if (d.values(current, f) < d.values(current, next)) next = f;
    }
    out.push_back(next);
    previous_cluster = here;
    current = next;
  }
  return annotate(std::move(out));
}

}  // namespace vtex
