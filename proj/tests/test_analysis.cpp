#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "vtex/analysis.hpp"
#include "vtex/error.hpp"

using namespace vtex;

namespace {

double naive_ssd(const Frame& a, const Frame& b) {
  double s = 0;
  for (std::uint32_t r = 0; r < a.height(); ++r)
    for (std::uint32_t c = 0; c < a.width(); ++c)
      for (std::uint32_t ch = 0; ch < a.channels(); ++ch) {
        const double d = double(a.at(r, c, ch)) - double(b.at(r, c, ch));
        s += d * d;
      }
  return s;
}

double naive_cheb(const Frame& a, const Frame& b) {
  double m = 0;
  for (std::uint32_t r = 0; r < a.height(); ++r)
    for (std::uint32_t c = 0; c < a.width(); ++c)
      for (std::uint32_t ch = 0; ch < a.channels(); ++ch)
        m = std::max(m, std::abs(double(a.at(r, c, ch)) - double(b.at(r, c, ch))));
  return m;
}

// D'(i, j) = sum_k w_k D(i + o_k, j + o_k), written out from the definition.
Matrix oracle_filter(const Matrix& d, const std::vector<double>& w, const std::vector<int>& o) {
  const int n = static_cast<int>(d.rows());
  const int lo = -*std::min_element(o.begin(), o.end());
  const int hi = *std::max_element(o.begin(), o.end());
  const int m = n - lo - hi;
  Matrix out(m, m, 0.0);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (std::size_t k = 0; k < w.size(); ++k)
        out(i, j) += w[k] * d(i + lo + o[k], j + lo + o[k]);
  return out;
}

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Internal;
}

}  // namespace

TEST_CASE("distance matrix matches a naive double loop") {
  Rng rng(21);
  std::vector<Frame> frames;
  for (int i = 0; i < 6; ++i) frames.push_back(fixtures::random_frame(rng, 9, 5, 3));
  const FrameSequence seq(frames, 40);
  for (auto metric : {MetricKind::Ssd, MetricKind::Chebyshev}) {
    const auto d = distance_matrix(seq, metric);
    CHECK(d.stage == Stage::Raw);
    CHECK(d.crop_offset == 0);
    REQUIRE(d.values.rows() == 6);
    for (std::size_t i = 0; i < 6; ++i) {
      for (std::size_t j = 0; j < 6; ++j) {
        const double want = metric == MetricKind::Ssd ? naive_ssd(frames[i], frames[j])
                                                      : naive_cheb(frames[i], frames[j]);
        CHECK(d.values(i, j) == want);
        CHECK(d.values(i, j) == d.values(j, i));
      }
      CHECK(d.values(i, i) == 0.0);
    }
  }
}

TEST_CASE("ssd of two constant frames") {
  const Frame a(4, 3, 1, std::vector<std::uint8_t>(12, 10));
  const Frame b(4, 3, 1, std::vector<std::uint8_t>(12, 13));
  CHECK(frame_distance(a, b, MetricKind::Ssd) == 12 * 9);
  CHECK(frame_distance(a, b, MetricKind::Chebyshev) == 3);
}

TEST_CASE("wavelet metric needs a clustering and is centroid distance") {
  const auto seq = fixtures::periodic(6, 3);
  CHECK(code_of([&] { distance_matrix(seq, MetricKind::WaveletCluster); }) ==
        ErrorCode::MissingClustering);
  Clustering c;
  c.k = 2;
  c.assignments = {0, 1, 0, 1, 0, 1};
  c.centroids = {{0.0, 0.0}, {3.0, 4.0}};
  const auto d = distance_matrix(seq, MetricKind::WaveletCluster, &c);
  CHECK(d.values(0, 2) == 0.0);
  CHECK(d.values(0, 1) == doctest::Approx(5.0));
}

TEST_CASE("dynamics filter matches the diagonal convolution oracle") {
  Rng rng(22);
  for (int taps : {2, 4}) {
    const auto k = dynamics_kernel(taps);
    double sum = 0;
    for (double w : k.weights) sum += w;
    CHECK(sum == doctest::Approx(1.0));
    for (int t = 0; t < 20; ++t) {
      const DistanceMatrix raw{fixtures::random_distance(rng, 10), "ssd", Stage::Raw, 0};
      const auto f = preserve_dynamics(raw, taps);
      const auto want = oracle_filter(raw.values, k.weights, k.offsets);
      REQUIRE(f.values.rows() == want.rows());
      CHECK(f.stage == Stage::Filtered);
      CHECK(f.crop_offset == (taps == 4 ? 1u : 0u));
      for (std::size_t i = 0; i < want.rows(); ++i)
        for (std::size_t j = 0; j < want.cols(); ++j)
          CHECK(std::abs(f.values(i, j) - want(i, j)) <= 1e-12);
    }
  }
  CHECK(preserve_dynamics({Matrix(10, 10, 0.0), "ssd", Stage::Raw, 0}, 4).values.rows() == 7);
  CHECK(preserve_dynamics({Matrix(10, 10, 0.0), "ssd", Stage::Raw, 0}, 2).values.rows() == 9);
}

TEST_CASE("dynamics filter keeps symmetry and the zero diagonal") {
  Rng rng(23);
  const DistanceMatrix raw{fixtures::random_distance(rng, 12), "ssd", Stage::Raw, 0};
  const auto f = preserve_dynamics(raw, 4);
  for (std::size_t i = 0; i < f.values.rows(); ++i) {
    CHECK(f.values(i, i) == 0.0);
    for (std::size_t j = 0; j < i; ++j) CHECK(f.values(i, j) == f.values(j, i));
  }
}

TEST_CASE("dynamics filter errors") {
  const DistanceMatrix small{Matrix(4, 4, 1.0), "ssd", Stage::Raw, 0};
  CHECK(code_of([&] { preserve_dynamics(small, 4); }) == ErrorCode::MatrixTooSmall);
  CHECK(code_of([&] { preserve_dynamics(small, 3); }) == ErrorCode::InvalidArgument);
  const DistanceMatrix filtered{Matrix(8, 8, 1.0), "ssd", Stage::Filtered, 1};
  CHECK(code_of([&] { preserve_dynamics(filtered, 2); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("future shift is an index shift") {
  Rng rng(24);
  const DistanceMatrix raw{fixtures::random_distance(rng, 7), "ssd", Stage::Raw, 0};
  const auto s = future_shift(raw);
  REQUIRE(s.values.rows() == 6);
  REQUIRE(s.values.cols() == 7);
  CHECK(s.stage == Stage::Shifted);
  for (std::size_t i = 0; i < 6; ++i) {
    CHECK(s.values(i, i + 1) == 0.0);
    for (std::size_t j = 0; j < 7; ++j) CHECK(s.values(i, j) == raw.values(i + 1, j));
  }
  CHECK(code_of([] { future_shift({Matrix(1, 1, 0.0), "ssd", Stage::Raw, 0}); }) ==
        ErrorCode::MatrixTooSmall);
}

TEST_CASE("probabilities match the scalar oracle") {
  Rng rng(25);
  for (int t = 0; t < 20; ++t) {
    const DistanceMatrix d{fixtures::random_distance(rng, 10), "ssd", Stage::Raw, 0};
    const auto model = probability_matrix(d, 0.05);
    double sum = 0;
    int count = 0;
    for (double v : d.values.values()) {
      if (v > 0) {
        sum += v;
        ++count;
      }
    }
    const double sigma = sum / count * 0.05;
    CHECK(model.sigma == doctest::Approx(sigma).epsilon(1e-14));
    for (std::size_t i = 0; i < 10; ++i) {
      double rowsum = 0;
      for (std::size_t j = 0; j < 10; ++j) rowsum += std::exp(-d.values(i, j) / sigma);
      double total = 0;
      for (std::size_t j = 0; j < 10; ++j) {
        const double want = std::exp(-d.values(i, j) / sigma) / rowsum;
        CHECK(std::abs(model.probabilities(i, j) - want) <= 1e-12);
        CHECK(model.probabilities(i, j) >= 0.0);
        total += model.probabilities(i, j);
      }
      CHECK(std::abs(total - 1.0) <= 1e-9);
    }
  }
}

TEST_CASE("probability rows stay finite for huge distances") {
  Matrix m(3, 3, 0.0);
  m(0, 1) = m(1, 0) = 1e6;
  m(0, 2) = m(2, 0) = 1e9;
  m(1, 2) = m(2, 1) = 1e9;
  const auto model = probability_matrix({m, "ssd", Stage::Raw, 0}, 0.001);
  for (std::size_t i = 0; i < 3; ++i) {
    double s = 0;
    for (std::size_t j = 0; j < 3; ++j) {
      CHECK(std::isfinite(model.probabilities(i, j)));
      s += model.probabilities(i, j);
    }
    CHECK(s == doctest::Approx(1.0));
  }
}

TEST_CASE("probability errors") {
  const DistanceMatrix zero{Matrix(3, 3, 0.0), "ssd", Stage::Raw, 0};
  CHECK(code_of([&] { probability_matrix(zero); }) == ErrorCode::AllZeroDistances);
  Rng rng(26);
  const DistanceMatrix d{fixtures::random_distance(rng, 4), "ssd", Stage::Raw, 0};
  CHECK(code_of([&] { probability_matrix(d, 0.0); }) == ErrorCode::NonPositiveSigmaMultiple);
  CHECK(code_of([&] { probability_matrix(d, -1.0); }) == ErrorCode::NonPositiveSigmaMultiple);
  Matrix bad = d.values;
  bad(0, 1) = std::nan("");
  CHECK(code_of([&] { probability_matrix({bad, "ssd", Stage::Raw, 0}); }) ==
        ErrorCode::NonFiniteEntry);
}

TEST_CASE("metric names round-trip") {
  for (auto m : {MetricKind::Ssd, MetricKind::Chebyshev, MetricKind::WaveletCluster}) {
    CHECK(parse_metric(metric_name(m)) == m);
  }
  CHECK_FALSE(parse_metric("l1").has_value());
}

TEST_CASE("published defaults") {
  CHECK(kDefaultSigmaMultiple == 0.05);
  const auto k4 = dynamics_kernel(4);
  CHECK(k4.weights == std::vector<double>{1.0 / 8, 3.0 / 8, 3.0 / 8, 1.0 / 8});
  CHECK(k4.offsets == std::vector<int>{-1, 0, 1, 2});
  const auto k2 = dynamics_kernel(2);
  CHECK(k2.weights == std::vector<double>{0.5, 0.5});
  CHECK(k2.offsets == std::vector<int>{0, 1});
  CHECK(kMinClusters == 1);
  CHECK(kMaxClusters == 10);
}
