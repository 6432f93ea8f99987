#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "vtex/frame.hpp"
#include "vtex/matrix.hpp"
#include "vtex/wavelet.hpp"

namespace vtex {

enum class MetricKind { Ssd, Chebyshev, WaveletCluster };

std::string_view metric_name(MetricKind m) noexcept;
/// Accepts "ssd", "chebyshev", "wavelet" / "wavelet_cluster".
std::optional<MetricKind> parse_metric(std::string_view name) noexcept;

enum class Stage { Raw, Filtered, Shifted };

std::string_view stage_name(Stage s) noexcept;

/// Frame dissimilarities at one stage of processing. Rows and columns index
/// frames of the clip offset by crop_offset (after dynamics filtering).
/// Shifted matrices have one row fewer than columns.
struct DistanceMatrix {
  Matrix values;
  std::string metric_label;
  Stage stage = Stage::Raw;
  std::size_t crop_offset = 0;

  std::size_t frame_count() const noexcept { return values.cols(); }
};

inline constexpr double kDefaultSigmaMultiple = 0.05;

/// Pairwise distances over all samples of every channel.
///   ssd:       sum of squared sample differences
///   chebyshev: largest absolute sample difference
///   wavelet:   Euclidean distance between the two frames' cluster centroids
/// Errors: TooFewFrames, DimensionMismatch, MissingClustering.
DistanceMatrix distance_matrix(const FrameSequence& seq, MetricKind metric,
                               const Clustering* clustering = nullptr);

/// Single pair, for the ssd and chebyshev metrics.
double frame_distance(const Frame& a, const Frame& b, MetricKind metric);

/// Binomial weights and their offsets for a dynamics filter of 2 or 4 taps.
struct DynamicsKernel {
  std::vector<double> weights;
  std::vector<int> offsets;
};
DynamicsKernel dynamics_kernel(int taps);

/// D'(i, j) = sum_k w_k D(i + o_k, j + o_k) over the positions where every
/// offset stays inside D. Errors: InvalidArgument (stage/taps),
/// MatrixTooSmall.
DistanceMatrix preserve_dynamics(const DistanceMatrix& d, int taps);

/// (n-1) x n matrix with entry (i, j) = d(i + 1, j): the cost of showing
/// frame j after frame i. Errors: MatrixTooSmall.
DistanceMatrix future_shift(const DistanceMatrix& d);

struct TransitionModel {
  Matrix probabilities;  // row-stochastic
  double sigma = 0.0;
  double sigma_multiple = 0.0;
  Stage source_stage = Stage::Raw;
  std::size_t crop_offset = 0;
};

/// sigma = mean of the strictly positive entries * sigma_multiple;
/// P(i, j) = exp(-d(i, j) / sigma) normalised per row.
/// Errors: AllZeroDistances, NonPositiveSigmaMultiple.
TransitionModel probability_matrix(const DistanceMatrix& d,
                                   double sigma_multiple = kDefaultSigmaMultiple);

}  // namespace vtex
