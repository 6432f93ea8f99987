#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "vtex/frame.hpp"
#include "vtex/matrix.hpp"

namespace vtex {

enum class InputKind {
  Auto,          // directory -> PngDirectory, otherwise Gif
  PngDirectory,  // *.png files sorted lexicographically by name
  Gif,
};

/// Errors: MissingInput, DimensionMismatch, DecodeFailure, TooFewFrames.
FrameSequence load_frames(const std::filesystem::path& path,
                          InputKind kind = InputKind::Auto);

/// Encodes `seq` as a GIF. Delays are stored in centiseconds, so delays that
/// are multiples of 10 ms round-trip exactly.
void write_animation(const FrameSequence& seq,
                     const std::filesystem::path& path, bool loop_forever);

struct AnimationInfo {
  std::size_t frame_count = 0;
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  std::uint32_t channels = 0;
  std::uint32_t frame_delay_ms = 0;
  bool loop_forever = false;
  std::optional<std::uint16_t> loop_count;  // NETSCAPE2.0 value if present
};

AnimationInfo probe_animation(const std::filesystem::path& path);

// Single stills.
Frame read_png(const std::filesystem::path& path);
void write_png(const Frame& frame, const std::filesystem::path& path);

// GIF container, in memory.
struct DecodedGif {
  std::vector<Frame> frames;
  std::vector<std::uint32_t> delays_ms;
  std::optional<std::uint16_t> loop_count;
};
std::vector<std::uint8_t> encode_gif(const FrameSequence& seq,
                                     bool loop_forever);
DecodedGif decode_gif(std::span<const std::uint8_t> bytes);

/// Palette of at most 256 RGB entries plus one index per pixel. Exact when
/// the frame has <= 256 distinct colors, median cut otherwise.
struct IndexedImage {
  std::vector<std::uint8_t> palette;  // rgb triples
  std::vector<std::uint8_t> indices;
};
IndexedImage quantize_median_cut(const Frame& frame);

/// Colour-scale position (0 = coldest, 255 = hottest) of each entry, min-max
/// scaled. A constant matrix maps to 0 everywhere. Throws NonFiniteEntry.
std::vector<std::uint8_t> heatmap_levels(const Matrix& matrix);

/// RGB colour for a colour-scale position.
std::array<std::uint8_t, 3> heatmap_color(std::uint8_t level) noexcept;

/// Writes an RGB PNG with each matrix entry drawn as a scale x scale block.
void render_heatmap(const Matrix& matrix, const std::filesystem::path& path,
                    std::uint32_t scale = 1);

}  // namespace vtex
