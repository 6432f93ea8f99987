#include "vtex/wavelet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <string>

#include "parallel.hpp"
#include "vtex/error.hpp"
#include "vtex/random.hpp"

namespace vtex {

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

Matrix pad_even(const Matrix& m) {
  const std::size_t rows = m.rows() + m.rows() % 2;
  const std::size_t cols = m.cols() + m.cols() % 2;
  Matrix out(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const std::size_t sr = std::min(r, m.rows() - 1);
    for (std::size_t c = 0; c < cols; ++c) {
      out(r, c) = m(sr, std::min(c, m.cols() - 1));
    }
  }
  return out;
}

}  // namespace

WaveletPyramid dwt2(const Matrix& image, int levels) {
  if (levels < 1) fail(ErrorCode::InvalidArgument, "levels must be >= 1");
  const std::size_t min_side = std::size_t{1} << levels;
  if (image.rows() < min_side || image.cols() < min_side) {
    fail(ErrorCode::FrameTooSmall,
         std::to_string(image.cols()) + "x" + std::to_string(image.rows()) +
             " is too small for " + std::to_string(levels) + " Haar levels");
  }
  WaveletPyramid pyr;
  Matrix current = image;
  for (int level = 0; level < levels; ++level) {
    const std::size_t rows_in = current.rows();
    const std::size_t cols_in = current.cols();
    const Matrix x = pad_even(current);
    const std::size_t hr = x.rows() / 2;
    const std::size_t hc = x.cols() / 2;
    HaarLevel details{Matrix(hr, hc), Matrix(hr, hc), Matrix(hr, hc), rows_in, cols_in};
    Matrix approx(hr, hc);
    for (std::size_t r = 0; r < hr; ++r) {
      for (std::size_t c = 0; c < hc; ++c) {
        const double a = x(2 * r, 2 * c);
        const double b = x(2 * r, 2 * c + 1);
        const double cc = x(2 * r + 1, 2 * c);
        const double d = x(2 * r + 1, 2 * c + 1);
        // Row butterflies, then column butterflies, each scaled by 1/sqrt(2).
        const double top_lo = (a + b) * kInvSqrt2;
        const double top_hi = (a - b) * kInvSqrt2;
        const double bot_lo = (cc + d) * kInvSqrt2;
        const double bot_hi = (cc - d) * kInvSqrt2;
        approx(r, c) = (top_lo + bot_lo) * kInvSqrt2;
        details.horizontal(r, c) = (top_lo - bot_lo) * kInvSqrt2;
        details.vertical(r, c) = (top_hi + bot_hi) * kInvSqrt2;
        details.diagonal(r, c) = (top_hi - bot_hi) * kInvSqrt2;
      }
    }
    pyr.levels.push_back(std::move(details));
    current = std::move(approx);
  }
  pyr.approximation = std::move(current);
  return pyr;
}

WaveletPyramid dwt2(const Frame& frame, int levels) {
  const auto y = luma(frame);
  Matrix image(frame.height(), frame.width());
  std::copy(y.begin(), y.end(), image.values().begin());
  return dwt2(image, levels);
}

Matrix idwt2(const WaveletPyramid& pyramid) {
  Matrix current = pyramid.approximation;
  for (auto it = pyramid.levels.rbegin(); it != pyramid.levels.rend(); ++it) {
    const HaarLevel& lv = *it;
    const std::size_t hr = current.rows();
    const std::size_t hc = current.cols();
    Matrix full(2 * hr, 2 * hc);
    for (std::size_t r = 0; r < hr; ++r) {
      for (std::size_t c = 0; c < hc; ++c) {
        const double top_lo = (current(r, c) + lv.horizontal(r, c)) * kInvSqrt2;
        const double bot_lo = (current(r, c) - lv.horizontal(r, c)) * kInvSqrt2;
        const double top_hi = (lv.vertical(r, c) + lv.diagonal(r, c)) * kInvSqrt2;
        const double bot_hi = (lv.vertical(r, c) - lv.diagonal(r, c)) * kInvSqrt2;
        full(2 * r, 2 * c) = (top_lo + top_hi) * kInvSqrt2;
        full(2 * r, 2 * c + 1) = (top_lo - top_hi) * kInvSqrt2;
        full(2 * r + 1, 2 * c) = (bot_lo + bot_hi) * kInvSqrt2;
        full(2 * r + 1, 2 * c + 1) = (bot_lo - bot_hi) * kInvSqrt2;
      }
    }
    Matrix cropped(lv.rows_in, lv.cols_in);
    for (std::size_t r = 0; r < lv.rows_in; ++r)
      for (std::size_t c = 0; c < lv.cols_in; ++c) cropped(r, c) = full(r, c);
    current = std::move(cropped);
  }
  return current;
}

WaveletDescriptor descriptor(const Frame& frame, std::size_t frame_index) {
  WaveletPyramid pyr = dwt2(frame, kDescriptorLevels);
  WaveletDescriptor d;
  d.frame_index = frame_index;
  d.rows = pyr.approximation.rows();
  d.cols = pyr.approximation.cols();
  const auto v = pyr.approximation.values();
  d.coefficients.assign(v.begin(), v.end());
  return d;
}

std::vector<WaveletDescriptor> descriptors(const FrameSequence& seq) {
  std::vector<WaveletDescriptor> out(seq.size());
  detail::parallel_for(seq.size(), [&](std::size_t i) { out[i] = descriptor(seq[i], i); });
  return out;
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

namespace {

int nearest_centroid(std::span<const double> p,
                     const std::vector<std::vector<double>>& centroids,
                     double* dist = nullptr) {
  int best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < centroids.size(); ++c) {
    const double d = squared_distance(p, centroids[c]);
    if (d < best_d) {
      best_d = d;
      best = static_cast<int>(c);
    }
  }
  if (dist) *dist = best_d;
  return best;
}

std::vector<std::vector<double>> kmeans_plus_plus(
    std::span<const std::vector<double>> points, int k, Rng& rng) {
  const std::size_t n = points.size();
  std::vector<std::vector<double>> centers;
  std::vector<bool> chosen(n, false);
  std::size_t first = rng.below(n);
  centers.push_back(points[first]);
  chosen[first] = true;
  std::vector<double> d2(n);
  for (std::size_t i = 0; i < n; ++i) d2[i] = squared_distance(points[i], centers[0]);
  while (static_cast<int>(centers.size()) < k) {
    double total = 0.0;
    for (double v : d2) total += v;
    std::size_t pick = n;
    if (total > 0.0) {
      const double target = rng.uniform() * total;
      double acc = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        acc += d2[i];
        if (d2[i] > 0.0 && acc > target) {
          pick = i;
          break;
        }
      }
      if (pick == n) {
        for (std::size_t i = n; i-- > 0;) {
          if (d2[i] > 0.0) {
            pick = i;
            break;
          }
        }
      }
    } else {
      // Every remaining point duplicates a centre.
      for (std::size_t i = 0; i < n && pick == n; ++i)
        if (!chosen[i]) pick = i;
    }
    chosen[pick] = true;
    centers.push_back(points[pick]);
    for (std::size_t i = 0; i < n; ++i)
      d2[i] = std::min(d2[i], squared_distance(points[i], centers.back()));
  }
  return centers;
}

}  // namespace

Clustering kmeans(std::span<const std::vector<double>> points, int k,
                  std::uint64_t seed, int max_iters) {
  if (points.empty()) fail(ErrorCode::EmptyInput, "kmeans needs at least one point");
  const std::size_t n = points.size();
  const std::size_t dim = points.front().size();
  for (const auto& p : points) {
    if (p.size() != dim) fail(ErrorCode::DimensionMismatch, "descriptor lengths differ");
  }
  if (k < kMinClusters || k > kMaxClusters || static_cast<std::size_t>(k) > n) {
    fail(ErrorCode::InvalidK, "k=" + std::to_string(k) + " outside [1, min(10, " +
                                  std::to_string(n) + ")]");
  }
  if (max_iters < 1) fail(ErrorCode::InvalidArgument, "max_iters must be >= 1");

  Rng rng(seed);
  Clustering cl;
  cl.k = k;
  cl.seed = seed;
  cl.centroids = kmeans_plus_plus(points, k, rng);
  cl.assignments.assign(n, -1);

  std::vector<double> dist(n);
  for (int iter = 0; iter < max_iters; ++iter) {
    bool changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      const int c = nearest_centroid(points[i], cl.centroids, &dist[i]);
      if (c != cl.assignments[i]) {
        cl.assignments[i] = c;
        changed = true;
      }
    }
    if (!changed) break;

    // Update step.
    std::vector<std::vector<double>> sums(k, std::vector<double>(dim, 0.0));
    std::vector<std::size_t> counts(k, 0);
    for (std::size_t i = 0; i < n; ++i) {
      auto& s = sums[cl.assignments[i]];
      for (std::size_t j = 0; j < dim; ++j) s[j] += points[i][j];
      ++counts[cl.assignments[i]];
    }
    for (int c = 0; c < k; ++c) {
      if (counts[c] == 0) continue;
      for (std::size_t j = 0; j < dim; ++j)
        cl.centroids[c][j] = sums[c][j] / static_cast<double>(counts[c]);
    }
    // Empty clusters take the point farthest from its centroid, drawn from
    // a cluster that can spare it.
    for (int c = 0; c < k; ++c) {
      if (counts[c] != 0) continue;
      std::size_t far = n;
      double far_d = -1.0;
      for (std::size_t i = 0; i < n; ++i) {
        const int owner = cl.assignments[i];
        if (counts[owner] < 2) continue;
        const double d = squared_distance(points[i], cl.centroids[owner]);
        if (d > far_d) {
          far_d = d;
          far = i;
        }
      }
      if (far == n) break;
      const int owner = cl.assignments[far];
      for (std::size_t j = 0; j < dim; ++j) sums[owner][j] -= points[far][j];
      --counts[owner];
      for (std::size_t j = 0; j < dim; ++j)
        cl.centroids[owner][j] = sums[owner][j] / static_cast<double>(counts[owner]);
      cl.assignments[far] = c;
      counts[c] = 1;
      sums[c] = points[far];
      cl.centroids[c] = points[far];
    }
    double inertia = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      inertia += squared_distance(points[i], cl.centroids[cl.assignments[i]]);
    cl.inertia_history.push_back(inertia);
    ++cl.iterations;
  }

  cl.inertia = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    cl.inertia += squared_distance(points[i], cl.centroids[cl.assignments[i]]);
  return cl;
}

namespace {

std::vector<std::vector<double>> coefficient_vectors(
    std::span<const WaveletDescriptor> descriptors) {
  std::vector<std::vector<double>> pts;
  pts.reserve(descriptors.size());
  for (const auto& d : descriptors) pts.push_back(d.coefficients);
  return pts;
}

double mean_pairwise_distance(const std::vector<std::vector<double>>& centroids) {
  const std::size_t k = centroids.size();
  if (k < 2) return 0.0;
  double sum = 0.0;
  std::size_t pairs = 0;
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = a + 1; b < k; ++b) {
      sum += std::sqrt(squared_distance(centroids[a], centroids[b]));
      ++pairs;
    }
  }
  return sum / static_cast<double>(pairs);
}

}  // namespace

Clustering kmeans(std::span<const WaveletDescriptor> descriptors, int k,
                  std::uint64_t seed, int max_iters) {
  const auto pts = coefficient_vectors(descriptors);
  return kmeans(std::span<const std::vector<double>>(pts), k, seed, max_iters);
}

KSelection select_k(std::span<const std::vector<double>> points, int k_min,
                    int k_max, std::uint64_t seed) {
  if (points.empty()) fail(ErrorCode::EmptyInput, "select_k needs at least one point");
  if (k_min < kMinClusters || k_max > kMaxClusters || k_min > k_max) {
    fail(ErrorCode::InvalidK, "k range [" + std::to_string(k_min) + ", " +
                                  std::to_string(k_max) + "] outside [1, " +
                                  std::to_string(kMaxClusters) + "]");
  }
  // More clusters than distinct points only splits duplicates.
  const std::set<std::vector<double>> distinct(points.begin(), points.end());
  const int upper = std::max(k_min, std::min(k_max, static_cast<int>(distinct.size())));

  KSelection sel;
  double best = -1.0;
  for (int k = k_min; k <= upper; ++k) {
    Clustering cl = kmeans(points, k, seed);
    KScore s;
    s.k = k;
    s.intraclass = cl.inertia;
    s.interclass = mean_pairwise_distance(cl.centroids);
    s.score = s.interclass / (s.intraclass + kSelectEpsilon);
    sel.report.push_back(s);
    if (s.score > best) {
      best = s.score;
      sel.chosen_k = k;
      sel.clustering = std::move(cl);
    }
  }
  return sel;
}

KSelection select_k(std::span<const WaveletDescriptor> descriptors, int k_min,
                    int k_max, std::uint64_t seed) {
  const auto pts = coefficient_vectors(descriptors);
  return select_k(std::span<const std::vector<double>>(pts), k_min, k_max, seed);
}

}  // namespace vtex
