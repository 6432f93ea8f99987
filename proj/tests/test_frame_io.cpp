#include <doctest.h>

#include <fstream>
#include <set>

#include "fixtures.hpp"
#include "vtex/error.hpp"
#include "vtex/frame_io.hpp"

namespace fs = std::filesystem;
using namespace vtex;

namespace {

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Internal;
}

}  // namespace

TEST_CASE("png still round-trips exactly") {
  Rng rng(1);
  const auto dir = fixtures::scratch_dir("png");
  for (std::uint32_t ch : {1u, 3u}) {
    const Frame f = fixtures::random_frame(rng, 17, 9, ch);
    write_png(f, dir / "a.png");
    CHECK(read_png(dir / "a.png") == f);
  }
}

TEST_CASE("png directory loads sorted by name") {
  const auto seq = fixtures::periodic(6, 3);
  const auto dir = fixtures::scratch_dir("pngdir");
  fixtures::write_png_dir(seq, dir);
  std::ofstream(dir / "notes.txt") << "ignored";
  const auto loaded = load_frames(dir);
  REQUIRE(loaded.size() == 6);
  for (std::size_t i = 0; i < 6; ++i) CHECK(loaded[i] == seq[i]);
  CHECK(loaded.frame_delay_ms() == 40);
}

TEST_CASE("png directory errors") {
  const auto dir = fixtures::scratch_dir("pngdir-bad");
  CHECK(code_of([&] { load_frames(dir / "nope"); }) == ErrorCode::MissingInput);

  Rng rng(2);
  write_png(fixtures::random_frame(rng, 8, 8, 1), dir / "a.png");
  CHECK(code_of([&] { load_frames(dir); }) == ErrorCode::TooFewFrames);
  write_png(fixtures::random_frame(rng, 9, 8, 1), dir / "b.png");
  CHECK(code_of([&] { load_frames(dir); }) == ErrorCode::DimensionMismatch);

  std::ofstream(dir / "c.gif") << "GIF89a garbage";
  CHECK(code_of([&] { load_frames(dir / "c.gif"); }) == ErrorCode::DecodeFailure);
}

TEST_CASE("gif with at most 256 colours round-trips losslessly") {
  const auto dir = fixtures::scratch_dir("gif");
  SUBCASE("grey") {
    const auto seq = fixtures::pendulum(12, 12);
    write_animation(seq, dir / "p.gif", true);
    const auto back = load_frames(dir / "p.gif");
    REQUIRE(back.size() == seq.size());
    CHECK(back.channels() == 1);
    CHECK(back.frame_delay_ms() == 40);
    for (std::size_t i = 0; i < seq.size(); ++i) CHECK(back[i] == seq[i]);
  }
  SUBCASE("colour with few distinct values") {
    std::vector<Frame> frames;
    Rng rng(3);
    for (int t = 0; t < 4; ++t) {
      Frame f(20, 10, 3);
      for (auto& s : f.samples()) s = static_cast<std::uint8_t>(rng.below(5) * 60);
      frames.push_back(f);
    }
    const FrameSequence seq(frames, 70, "c");
    write_animation(seq, dir / "c.gif", false);
    const auto back = load_frames(dir / "c.gif");
    REQUIRE(back.size() == 4);
    CHECK(back.channels() == 3);
    CHECK(back.frame_delay_ms() == 70);
    for (std::size_t i = 0; i < 4; ++i) CHECK(back[i] == seq[i]);
    const auto info = probe_animation(dir / "c.gif");
    CHECK_FALSE(info.loop_forever);
  }
}

TEST_CASE("grey-looking colour clip keeps three channels") {
  std::vector<Frame> frames;
  for (int t = 0; t < 2; ++t) {
    Frame f(4, 4, 3);
    for (auto& s : f.samples()) s = static_cast<std::uint8_t>(t * 100);
    frames.push_back(f);
  }
  const auto bytes = encode_gif(FrameSequence(frames, 40), true);
  const auto dec = decode_gif(bytes);
  REQUIRE(dec.frames.size() == 2);
  CHECK(dec.frames[0].channels() == 3);
}

TEST_CASE("gif of a rich colour clip stays close and keeps its metadata") {
  const auto seq = fixtures::flag(5, 40, 24);
  const auto dir = fixtures::scratch_dir("gif-rich");
  write_animation(seq, dir / "f.gif", true);
  const auto info = probe_animation(dir / "f.gif");
  CHECK(info.frame_count == 5);
  CHECK(info.width == 40);
  CHECK(info.height == 24);
  CHECK(info.loop_forever);
  REQUIRE(info.loop_count.has_value());
  CHECK(*info.loop_count == 0);
  const auto back = load_frames(dir / "f.gif");
  for (std::size_t i = 0; i < seq.size(); ++i) {
    double err = 0;
    const auto a = seq[i].samples(), b = back[i].samples();
    for (std::size_t s = 0; s < a.size(); ++s) err += std::abs(int(a[s]) - int(b[s]));
    CHECK(err / a.size() < 8.0);
  }
}

TEST_CASE("median cut is exact for small palettes and bounded otherwise") {
  Rng rng(4);
  Frame few(16, 16, 3);
  for (auto& s : few.samples()) s = static_cast<std::uint8_t>(rng.below(3) * 100);
  const auto q = quantize_median_cut(few);
  CHECK(q.palette.size() <= 256 * 3);
  for (std::size_t p = 0; p < few.pixel_count(); ++p) {
    for (int c = 0; c < 3; ++c) {
      CHECK(q.palette[q.indices[p] * 3 + c] == few.samples()[p * 3 + c]);
    }
  }
  const Frame noisy = fixtures::random_frame(rng, 64, 64, 3);
  const auto q2 = quantize_median_cut(noisy);
  CHECK(q2.palette.size() / 3 <= 256);
  std::set<std::uint8_t> used(q2.indices.begin(), q2.indices.end());
  CHECK(used.size() > 128);
}

TEST_CASE("heatmap levels are min-max scaled") {
  Matrix m(2, 2, std::vector<double>{0.0, 1.0, 2.0, 4.0});
  const auto lv = heatmap_levels(m);
  CHECK(lv == std::vector<std::uint8_t>{0, 64, 128, 255});
  CHECK(heatmap_levels(Matrix(3, 3, 7.0)) == std::vector<std::uint8_t>(9, 0));
  Matrix bad(1, 2, std::vector<double>{0.0, std::nan("")});
  CHECK(code_of([&] { heatmap_levels(bad); }) == ErrorCode::NonFiniteEntry);
  CHECK(heatmap_color(0) != heatmap_color(255));

  const auto dir = fixtures::scratch_dir("heat");
  render_heatmap(m, dir / "h.png", 3);
  const Frame img = read_png(dir / "h.png");
  CHECK(img.width() == 6);
  CHECK(img.height() == 6);
  CHECK(img.at(5, 5, 0) == heatmap_color(255)[0]);
}

TEST_CASE("frame sequence validation") {
  CHECK(code_of([] { FrameSequence({}, 40); }) == ErrorCode::EmptyInput);
  CHECK(code_of([] { FrameSequence({Frame(2, 2, 1), Frame(2, 2, 3)}, 40); }) ==
        ErrorCode::DimensionMismatch);
  CHECK(code_of([] { require_analysable(FrameSequence({Frame(2, 2, 1)}, 40)); }) ==
        ErrorCode::TooFewFrames);
}
