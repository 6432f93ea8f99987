#include <algorithm>
#include <cmath>

#include "vtex/error.hpp"
#include "vtex/frame_io.hpp"

namespace vtex {

std::vector<std::uint8_t> heatmap_levels(const Matrix& matrix) {
  if (matrix.empty()) fail(ErrorCode::InvalidArgument, "empty matrix");
  const auto v = matrix.values();
  for (double x : v) {
    if (!std::isfinite(x)) fail(ErrorCode::NonFiniteEntry, "matrix has a non-finite entry");
  }
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  const double min = *lo;
  const double range = *hi - *lo;
  std::vector<std::uint8_t> levels(v.size(), 0);
  if (range <= 0.0) return levels;
  for (std::size_t i = 0; i < v.size(); ++i) {
    levels[i] = static_cast<std::uint8_t>(
        std::clamp(std::floor(255.0 * (v[i] - min) / range + 0.5), 0.0, 255.0));
  }
  return levels;
}

// Jet-style ramp: dark blue -> cyan -> yellow -> dark red.
std::array<std::uint8_t, 3> heatmap_color(std::uint8_t level) noexcept {
  const double t = level / 255.0;
  auto ramp = [t](double centre) {
    return std::clamp(1.5 - std::abs(4.0 * t - centre), 0.0, 1.0);
  };
  auto to8 = [](double x) { return static_cast<std::uint8_t>(std::lround(255.0 * x)); };
  return {to8(ramp(3.0)), to8(ramp(2.0)), to8(ramp(1.0))};
}

void render_heatmap(const Matrix& matrix, const std::filesystem::path& path,
                    std::uint32_t scale) {
  if (scale == 0) fail(ErrorCode::InvalidArgument, "heatmap scale must be >= 1");
  const auto levels = heatmap_levels(matrix);
  const auto width = static_cast<std::uint32_t>(matrix.cols() * scale);
  const auto height = static_cast<std::uint32_t>(matrix.rows() * scale);
  Frame image(width, height, 3);
  for (std::uint32_t y = 0; y < height; ++y) {
    for (std::uint32_t x = 0; x < width; ++x) {
      const auto rgb = heatmap_color(levels[(y / scale) * matrix.cols() + x / scale]);
      for (std::uint32_t ch = 0; ch < 3; ++ch) image.at(y, x, ch) = rgb[ch];
    }
  }
  write_png(image, path);
}

}  // namespace vtex
