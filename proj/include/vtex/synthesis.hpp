#pragma once

#include <cstddef>
#include <vector>

#include "vtex/analysis.hpp"
#include "vtex/random.hpp"
#include "vtex/wavelet.hpp"

namespace vtex {

enum class TransitionKind { Consecutive, Cut };

struct Transition {
  std::size_t position;  // between indices[position] and indices[position + 1]
  TransitionKind kind;

  friend bool operator==(const Transition&, const Transition&) = default;
};

/// Playback order over analysis frame indices. transitions has one entry per
/// adjacent pair; an entry is a Cut exactly when indices[t + 1] != indices[t] + 1.
struct FrameIndexSequence {
  std::vector<std::size_t> indices;
  std::vector<Transition> transitions;

  std::size_t cut_count() const noexcept;
  friend bool operator==(const FrameIndexSequence&, const FrameIndexSequence&) = default;
};

FrameIndexSequence annotate(std::vector<std::size_t> indices);

/// Draws j with probability P(current, j). Errors: IndexOutOfRange.
std::size_t sample_next(const TransitionModel& model, std::size_t current, Rng& rng);

/// Iterated sampling starting at `start`. When P has more columns than rows
/// (a future-shifted model), draws are restricted to columns that have a row
/// of their own and renormalised, so playback can always continue.
FrameIndexSequence random_playback(const TransitionModel& model, std::size_t start,
                                   std::size_t length, Rng& rng);

struct Loop {
  std::size_t start = 0;
  std::size_t end = 0;
  double cut_cost = 0.0;  // shifted(end, start)

  std::size_t length() const noexcept { return end - start + 1; }
};

inline constexpr double kDefaultPruneFraction = 0.05;

/// max(8, n / 10).
std::size_t default_min_loop_length(std::size_t frame_count) noexcept;

/// Cheapest end -> start jump over frames that survive pruning
/// floor(prune_frac * n) from each end, with length >= min_length. Ties go
/// to the longer loop, then the earlier start. Errors: NoFeasibleLoop,
/// InvalidArgument.
Loop find_loop(const DistanceMatrix& shifted, std::size_t min_length,
               double prune_frac = kDefaultPruneFraction);

/// start, start + 1, ..., end.
FrameIndexSequence loop_sequence(const Loop& loop);

/// Greedy walk that always moves to the cluster whose centroid is nearest
/// the current frame's centroid, excluding the current and previous
/// clusters, and emits that cluster's member closest to the current frame
/// under `d`. Errors: InsufficientClusters (k < 3), EmptyCluster,
/// IndexOutOfRange, DimensionMismatch.
FrameIndexSequence cluster_sequence(const Clustering& clustering, const DistanceMatrix& d,
                                    std::size_t start, std::size_t length);

}  // namespace vtex
