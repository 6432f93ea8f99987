#include "vtex/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "parallel.hpp"
#include "vtex/error.hpp"

namespace vtex {

std::string_view metric_name(MetricKind m) noexcept {
  switch (m) {
    case MetricKind::Ssd: return "ssd";
    case MetricKind::Chebyshev: return "chebyshev";
    case MetricKind::WaveletCluster: return "wavelet";
  }
  return "unknown";
}

std::optional<MetricKind> parse_metric(std::string_view name) noexcept {
  if (name == "ssd") return MetricKind::Ssd;
  if (name == "chebyshev") return MetricKind::Chebyshev;
  if (name == "wavelet" || name == "wavelet_cluster") return MetricKind::WaveletCluster;
  return std::nullopt;
}

std::string_view stage_name(Stage s) noexcept {
  switch (s) {
    case Stage::Raw: return "raw";
    case Stage::Filtered: return "filtered";
    case Stage::Shifted: return "shifted";
  }
  return "unknown";
}

double frame_distance(const Frame& a, const Frame& b, MetricKind metric) {
  if (!a.same_shape(b)) fail(ErrorCode::DimensionMismatch, "frames differ in shape");
  const auto sa = a.samples();
  const auto sb = b.samples();
  switch (metric) {
    case MetricKind::Ssd: {
      std::uint64_t sum = 0;
      for (std::size_t i = 0; i < sa.size(); ++i) {
        const int d = int{sa[i]} - int{sb[i]};
        sum += static_cast<std::uint64_t>(d * d);
      }
      return static_cast<double>(sum);
    }
    case MetricKind::Chebyshev: {
      int worst = 0;
      for (std::size_t i = 0; i < sa.size(); ++i)
        worst = std::max(worst, std::abs(int{sa[i]} - int{sb[i]}));
      return worst;
    }
    case MetricKind::WaveletCluster:
      break;
  }
  fail(ErrorCode::InvalidArgument, "wavelet distance needs a clustering");
}

DistanceMatrix distance_matrix(const FrameSequence& seq, MetricKind metric,
                               const Clustering* clustering) {
  require_analysable(seq);
  const std::size_t n = seq.size();
  DistanceMatrix out{Matrix(n, n, 0.0), std::string(metric_name(metric)), Stage::Raw, 0};

  if (metric == MetricKind::WaveletCluster) {
    if (clustering == nullptr) {
      fail(ErrorCode::MissingClustering, "wavelet metric requires a clustering");
    }
    if (clustering->assignments.size() != n) {
      fail(ErrorCode::DimensionMismatch,
           "clustering covers " + std::to_string(clustering->assignments.size()) +
               " frames, sequence has " + std::to_string(n));
    }
    const auto& cs = clustering->centroids;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const int ci = clustering->assignments[i];
        const int cj = clustering->assignments[j];
        const double d = ci == cj ? 0.0 : std::sqrt(squared_distance(cs[ci], cs[cj]));
        out.values(i, j) = d;
        out.values(j, i) = d;
      }
    }
    return out;
  }

  // Row i computes the upper triangle j > i; mirrored cells are disjoint.
  detail::parallel_for(n, [&](std::size_t i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = frame_distance(seq[i], seq[j], metric);
      out.values(i, j) = d;
      out.values(j, i) = d;
    }
  });
  return out;
}

DynamicsKernel dynamics_kernel(int taps) {
  switch (taps) {
    case 2: return {{0.5, 0.5}, {0, 1}};
    case 4: return {{1.0 / 8, 3.0 / 8, 3.0 / 8, 1.0 / 8}, {-1, 0, 1, 2}};
    default:
      fail(ErrorCode::InvalidArgument,
           "dynamics filter takes 2 or 4 taps, got " + std::to_string(taps));
  }
}

DistanceMatrix preserve_dynamics(const DistanceMatrix& d, int taps) {
  const DynamicsKernel kernel = dynamics_kernel(taps);
  if (d.stage != Stage::Raw) {
    fail(ErrorCode::InvalidArgument, "dynamics filter expects a raw distance matrix");
  }
  const std::size_t n = d.values.rows();
  if (n != d.values.cols() || n <= static_cast<std::size_t>(taps)) {
    fail(ErrorCode::MatrixTooSmall, "dynamics filter with " + std::to_string(taps) +
                                        " taps needs n > taps, got n = " +
                                        std::to_string(n));
  }
  const int lead = -kernel.offsets.front();
  const int trail = kernel.offsets.back();
  const std::size_t m = n - static_cast<std::size_t>(lead + trail);
  DistanceMatrix out{Matrix(m, m), d.metric_label, Stage::Filtered,
                     d.crop_offset + static_cast<std::size_t>(lead)};
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < kernel.weights.size(); ++k) {
        const std::size_t r = i + lead + kernel.offsets[k];
        const std::size_t c = j + lead + kernel.offsets[k];
        acc += kernel.weights[k] * d.values(r, c);
      }
      out.values(i, j) = acc;
    }
  }
  return out;
}

DistanceMatrix future_shift(const DistanceMatrix& d) {
  const std::size_t n = d.values.cols();
  if (n < 2 || d.values.rows() != n) {
    fail(ErrorCode::MatrixTooSmall, "future shift needs a square matrix with n >= 2");
  }
  DistanceMatrix out{Matrix(n - 1, n), d.metric_label, Stage::Shifted, d.crop_offset};
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const auto src = d.values.row(i + 1);
    std::copy(src.begin(), src.end(), out.values.row(i).begin());
  }
  return out;
}

TransitionModel probability_matrix(const DistanceMatrix& d, double sigma_multiple) {
  if (!(sigma_multiple > 0.0) || !std::isfinite(sigma_multiple)) {
    fail(ErrorCode::NonPositiveSigmaMultiple,
         "sigma multiple must be positive, got " + std::to_string(sigma_multiple));
  }
  double sum = 0.0;
  std::size_t positive = 0;
  for (double v : d.values.values()) {
    if (!std::isfinite(v)) fail(ErrorCode::NonFiniteEntry, "distance matrix has a non-finite entry");
    if (v > 0.0) {
      sum += v;
      ++positive;
    }
  }
  if (positive == 0) {
    fail(ErrorCode::AllZeroDistances, "no positive distances, sigma is undefined");
  }
  TransitionModel model;
  model.sigma_multiple = sigma_multiple;
  model.sigma = sum / static_cast<double>(positive) * sigma_multiple;
  model.source_stage = d.stage;
  model.crop_offset = d.crop_offset;
  model.probabilities = Matrix(d.values.rows(), d.values.cols());
  for (std::size_t i = 0; i < d.values.rows(); ++i) {
    const auto src = d.values.row(i);
    auto dst = model.probabilities.row(i);
    // Subtracting the row minimum cancels in the normalisation and keeps
    // the largest term at exp(0), so a row never underflows to all zeros.
    const double lo = *std::min_element(src.begin(), src.end());
    double total = 0.0;
    for (std::size_t j = 0; j < src.size(); ++j) {
      dst[j] = std::exp(-(src[j] - lo) / model.sigma);
      total += dst[j];
    }
    for (double& p : dst) p /= total;
  }
  return model;
}

}  // namespace vtex
