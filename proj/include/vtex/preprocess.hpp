#pragma once

#include <cstdint>

#include "vtex/frame.hpp"

namespace vtex {

inline constexpr double kDefaultLowPercentile = 0.01;
inline constexpr double kDefaultHighPercentile = 0.99;

/// Contrast-stretch limits. Construction enforces v_min < v_max and
/// 0 <= low_pct < high_pct <= 1 (InvalidBounds otherwise).
class IntensityBounds {
 public:
  IntensityBounds(std::uint8_t v_min, std::uint8_t v_max,
                  double low_pct = kDefaultLowPercentile,
                  double high_pct = kDefaultHighPercentile);

  std::uint8_t v_min() const noexcept { return v_min_; }
  std::uint8_t v_max() const noexcept { return v_max_; }
  double low_pct() const noexcept { return low_pct_; }
  double high_pct() const noexcept { return high_pct_; }

 private:
  std::uint8_t v_min_;
  std::uint8_t v_max_;
  double low_pct_;
  double high_pct_;
};

/// Quantiles of the luma histogram pooled over every frame, taking the
/// sorted sample at index floor(p * (N - 1)). Throws DegenerateHistogram when
/// both quantiles coincide.
IntensityBounds compute_bounds(const FrameSequence& seq,
                               double low_pct = kDefaultLowPercentile,
                               double high_pct = kDefaultHighPercentile);

/// Stretch one sample: <= v_min -> 0, >= v_max -> 255, linear (rounded half
/// up) in between.
std::uint8_t stretch_sample(std::uint8_t x, const IntensityBounds& b) noexcept;

/// Applies stretch_sample to every channel of every frame.
FrameSequence normalize_intensity(const FrameSequence& seq,
                                  const IntensityBounds& b);

}  // namespace vtex
