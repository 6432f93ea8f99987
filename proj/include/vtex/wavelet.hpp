#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "vtex/frame.hpp"
#include "vtex/matrix.hpp"

namespace vtex {

/// Detail subbands of one Haar level. `rows_in` x `cols_in` is the size of
/// the signal this level decomposed, before edge-replication padding.
struct HaarLevel {
  Matrix horizontal;  // (a + b - c - d) / 2 on each 2x2 block
  Matrix vertical;    // (a - b + c - d) / 2
  Matrix diagonal;    // (a - b - c + d) / 2
  std::size_t rows_in = 0;
  std::size_t cols_in = 0;
};

/// Orthonormal 2D Haar decomposition. levels[0] is the finest level.
struct WaveletPyramid {
  Matrix approximation;
  std::vector<HaarLevel> levels;
};

/// Throws FrameTooSmall when either dimension is below 2^levels.
WaveletPyramid dwt2(const Matrix& image, int levels);
/// Decomposes the frame's luma.
WaveletPyramid dwt2(const Frame& frame, int levels);
/// Inverse transform; output has the original (unpadded) size.
Matrix idwt2(const WaveletPyramid& pyramid);

inline constexpr int kDescriptorLevels = 2;

/// Level-2 approximation subband of a frame, flattened row-major.
struct WaveletDescriptor {
  std::size_t frame_index = 0;
  std::vector<double> coefficients;
  std::size_t rows = 0;
  std::size_t cols = 0;
};

WaveletDescriptor descriptor(const Frame& frame, std::size_t frame_index = 0);
std::vector<WaveletDescriptor> descriptors(const FrameSequence& seq);

inline constexpr int kMinClusters = 1;
inline constexpr int kMaxClusters = 10;

struct Clustering {
  int k = 0;
  std::vector<int> assignments;               // point index -> cluster id
  std::vector<std::vector<double>> centroids;  // k entries
  double inertia = 0.0;
  std::uint64_t seed = 0;
  int iterations = 0;
  std::vector<double> inertia_history;  // after each centroid update
};

/// Lloyd's algorithm from a seeded k-means++ start. Stops at an assignment
/// fixpoint or after max_iters updates. Errors: EmptyInput, InvalidK.
Clustering kmeans(std::span<const std::vector<double>> points, int k,
                  std::uint64_t seed = 0, int max_iters = 100);
Clustering kmeans(std::span<const WaveletDescriptor> descriptors, int k,
                  std::uint64_t seed = 0, int max_iters = 100);

struct KScore {
  int k = 0;
  double intraclass = 0.0;  // inertia
  double interclass = 0.0;  // mean pairwise centroid distance
  double score = 0.0;       // interclass / (intraclass + eps)
};

struct KSelection {
  Clustering clustering;
  int chosen_k = 0;
  std::vector<KScore> report;
};

inline constexpr double kSelectEpsilon = 1e-12;

/// Runs kmeans for every k in [k_min, k_max] (capped at the number of
/// distinct points) and keeps the highest score; ties go to the smaller k.
KSelection select_k(std::span<const std::vector<double>> points,
                    int k_min = kMinClusters, int k_max = kMaxClusters,
                    std::uint64_t seed = 0);
KSelection select_k(std::span<const WaveletDescriptor> descriptors,
                    int k_min = kMinClusters, int k_max = kMaxClusters,
                    std::uint64_t seed = 0);

double squared_distance(std::span<const double> a, std::span<const double> b);

}  // namespace vtex
