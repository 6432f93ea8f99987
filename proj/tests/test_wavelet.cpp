#include <doctest.h>

#include <cmath>
#include <set>

#include "fixtures.hpp"
#include "vtex/error.hpp"
#include "vtex/wavelet.hpp"

using namespace vtex;

namespace {

double energy(const Matrix& m) {
  double e = 0;
  for (double v : m.values()) e += v * v;
  return e;
}

double pyramid_energy(const WaveletPyramid& p) {
  double e = energy(p.approximation);
  for (const auto& l : p.levels) e += energy(l.horizontal) + energy(l.vertical) + energy(l.diagonal);
  return e;
}

Matrix random_image(Rng& rng, std::size_t rows, std::size_t cols) {
  Matrix m(rows, cols, 0.0);
  for (auto& v : m.values()) v = static_cast<double>(rng.below(256));
  return m;
}

}  // namespace

TEST_CASE("one Haar level on a 2x2 block") {
  Matrix m(2, 2, std::vector<double>{1, 2, 3, 4});
  const auto p = dwt2(m, 1);
  CHECK(p.approximation(0, 0) == doctest::Approx(5.0));  // (1+2+3+4)/2
  CHECK(p.levels[0].horizontal(0, 0) == doctest::Approx(-2.0));
  CHECK(p.levels[0].vertical(0, 0) == doctest::Approx(-1.0));
  CHECK(p.levels[0].diagonal(0, 0) == doctest::Approx(0.0));
}

TEST_CASE("two-level Haar reconstructs and conserves energy") {
  Rng rng(31);
  for (int t = 0; t < 50; ++t) {
    const Matrix img = random_image(rng, 16, 16);
    const auto p = dwt2(img, 2);
    CHECK(p.levels.size() == 2);
    CHECK(p.approximation.rows() == 4);
    const Matrix back = idwt2(p);
    REQUIRE(back.rows() == 16);
    for (std::size_t i = 0; i < img.values().size(); ++i) {
      CHECK(std::abs(back.values()[i] - img.values()[i]) <= 1e-6);
    }
    CHECK(std::abs(pyramid_energy(p) - energy(img)) <= 1e-6 * energy(img));
  }
}

TEST_CASE("odd sizes reconstruct to the original shape") {
  Rng rng(32);
  const Matrix img = random_image(rng, 13, 7);
  const auto p = dwt2(img, 2);
  CHECK(p.approximation.rows() == 4);
  CHECK(p.approximation.cols() == 2);
  const Matrix back = idwt2(p);
  REQUIRE(back.rows() == 13);
  REQUIRE(back.cols() == 7);
  for (std::size_t i = 0; i < img.values().size(); ++i) {
    CHECK(back.values()[i] == doctest::Approx(img.values()[i]).epsilon(1e-9));
  }
}

TEST_CASE("frames that are too small are rejected") {
  CHECK_THROWS_AS(dwt2(Matrix(3, 8, 0.0), 2), Error);
  try {
    descriptor(Frame(3, 3, 1));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::FrameTooSmall);
  }
}

TEST_CASE("descriptor is the level-2 approximation") {
  const auto seq = fixtures::periodic(4, 2, 24, 16);
  const auto ds = descriptors(seq);
  REQUIRE(ds.size() == 4);
  CHECK(ds[0].rows == 4);
  CHECK(ds[0].cols == 6);
  CHECK(ds[0].coefficients.size() == 24);
  CHECK(ds[0].coefficients == ds[2].coefficients);
  CHECK(ds[3].frame_index == 3);
}

TEST_CASE("kmeans recovers separated blobs and never increases inertia") {
  Rng rng(33);
  std::vector<int> truth;
  const auto pts = fixtures::gaussian_blobs(rng, 16, 60, truth);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto c = kmeans(pts, 3, seed);
    for (std::size_t i = 1; i < c.inertia_history.size(); ++i) {
      CHECK(c.inertia_history[i] <= c.inertia_history[i - 1] + 1e-9);
    }
    // Same partition as the truth, up to relabelling.
    std::set<std::pair<int, int>> pairs;
    for (std::size_t i = 0; i < pts.size(); ++i) pairs.emplace(truth[i], c.assignments[i]);
    CHECK(pairs.size() == 3);
  }
}

TEST_CASE("kmeans is deterministic per seed") {
  Rng rng(34);
  std::vector<std::vector<double>> pts;
  for (int i = 0; i < 40; ++i) pts.push_back({rng.uniform(), rng.uniform()});
  const auto a = kmeans(pts, 4, 9);
  const auto b = kmeans(pts, 4, 9);
  CHECK(a.assignments == b.assignments);
  CHECK(a.inertia == b.inertia);
}

TEST_CASE("kmeans errors and edge cases") {
  std::vector<std::vector<double>> none;
  CHECK_THROWS_AS(kmeans(none, 1), Error);
  std::vector<std::vector<double>> two{{0.0}, {1.0}};
  CHECK_THROWS_AS(kmeans(two, 3), Error);
  CHECK_THROWS_AS(kmeans(two, 0), Error);
  const auto one = kmeans(two, 1);
  CHECK(one.centroids[0][0] == doctest::Approx(0.5));
  const auto each = kmeans(two, 2);
  CHECK(each.inertia == 0.0);
}

TEST_CASE("select_k finds three blobs") {
  Rng rng(35);
  std::vector<int> truth;
  const auto pts = fixtures::gaussian_blobs(rng, 16, 60, truth);
  const auto sel = select_k(pts, 1, 10, 0);
  CHECK(sel.chosen_k == 3);
  CHECK(sel.report.size() == 10);
  // Largest relative drop in intraclass score lands on k = 3.
  int best = 0;
  double best_drop = -1;
  for (std::size_t i = 1; i < sel.report.size(); ++i) {
    const double prev = sel.report[i - 1].intraclass;
    const double drop = prev > 0 ? (prev - sel.report[i].intraclass) / prev : 0.0;
    if (drop > best_drop) {
      best_drop = drop;
      best = sel.report[i].k;
    }
  }
  CHECK(best == 3);
}

TEST_CASE("select_k on one repeated point picks k = 1") {
  std::vector<std::vector<double>> pts(5, std::vector<double>{2.0, 3.0});
  const auto sel = select_k(pts, 1, 10, 0);
  CHECK(sel.chosen_k == 1);
  CHECK(sel.report.size() == 1);
}

TEST_CASE("select_k caps k at the number of distinct points") {
  std::vector<std::vector<double>> pts{{0.0}, {0.0}, {5.0}, {5.0}};
  const auto sel = select_k(pts, 1, 10, 0);
  CHECK(sel.report.size() == 2);
  CHECK(sel.chosen_k == 2);
}
