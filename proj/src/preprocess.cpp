#include "vtex/preprocess.hpp"

#include <array>
#include <cmath>
#include <string>

#include "vtex/error.hpp"

namespace vtex {

namespace {

void check_percentiles(double low_pct, double high_pct) {
  if (!(low_pct >= 0.0 && low_pct < high_pct && high_pct <= 1.0)) {
    fail(ErrorCode::InvalidBounds,
         "percentiles must satisfy 0 <= low < high <= 1, got " +
             std::to_string(low_pct) + ", " + std::to_string(high_pct));
  }
}

}  // namespace

IntensityBounds::IntensityBounds(std::uint8_t v_min, std::uint8_t v_max,
                                 double low_pct, double high_pct)
    : v_min_(v_min), v_max_(v_max), low_pct_(low_pct), high_pct_(high_pct) {
  check_percentiles(low_pct, high_pct);
  if (v_min >= v_max) {
    fail(ErrorCode::InvalidBounds, "v_min must be below v_max, got " +
                                       std::to_string(v_min) + ", " +
                                       std::to_string(v_max));
  }
}

IntensityBounds compute_bounds(const FrameSequence& seq, double low_pct,
                               double high_pct) {
  check_percentiles(low_pct, high_pct);
  std::array<std::uint64_t, 256> histogram{};
  for (const Frame& f : seq) {
    for (std::uint8_t y : luma(f)) ++histogram[y];
  }
  std::uint64_t total = 0;
  for (auto c : histogram) total += c;

  // Sample at sorted position `rank`, read off the cumulative histogram.
  auto quantile = [&](double p) {
    const auto rank = static_cast<std::uint64_t>(
        std::floor(p * static_cast<double>(total - 1)));
    std::uint64_t seen = 0;
    for (int v = 0; v < 256; ++v) {
      seen += histogram[v];
      if (seen > rank) return static_cast<std::uint8_t>(v);
    }
    return std::uint8_t{255};
  };
  const std::uint8_t lo = quantile(low_pct);
  const std::uint8_t hi = quantile(high_pct);
  if (lo >= hi) {
    fail(ErrorCode::DegenerateHistogram,
         "intensity quantiles coincide at " + std::to_string(lo));
  }
  return IntensityBounds(lo, hi, low_pct, high_pct);
}

std::uint8_t stretch_sample(std::uint8_t x, const IntensityBounds& b) noexcept {
  if (x <= b.v_min()) return 0;
  if (x >= b.v_max()) return 255;
  // floor(255 * num / den + 1/2) in integers.
  const std::uint32_t num = x - b.v_min();
  const std::uint32_t den = b.v_max() - b.v_min();
  return static_cast<std::uint8_t>((510u * num + den) / (2u * den));
}

FrameSequence normalize_intensity(const FrameSequence& seq,
                                  const IntensityBounds& b) {
  std::array<std::uint8_t, 256> lut{};
  for (int v = 0; v < 256; ++v) lut[v] = stretch_sample(static_cast<std::uint8_t>(v), b);
  std::vector<Frame> out;
  out.reserve(seq.size());
  for (const Frame& f : seq) {
    Frame g = f;
    for (auto& s : g.samples()) s = lut[s];
    out.push_back(std::move(g));
  }
  return FrameSequence(std::move(out), seq.frame_delay_ms(), seq.source_label());
}

}  // namespace vtex
