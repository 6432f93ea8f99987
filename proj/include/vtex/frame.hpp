#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace vtex {

/// One decoded image: row-major interleaved 8-bit samples, 1 (luma) or 3
/// (RGB) channels.
class Frame {
 public:
  Frame() = default;
  /// Zero-filled frame.
  Frame(std::uint32_t width, std::uint32_t height, std::uint32_t channels);
  /// Takes ownership of `data`; its length must equal width*height*channels.
  Frame(std::uint32_t width, std::uint32_t height, std::uint32_t channels,
        std::vector<std::uint8_t> data);

  std::uint32_t width() const noexcept { return width_; }
  std::uint32_t height() const noexcept { return height_; }
  std::uint32_t channels() const noexcept { return channels_; }
  std::size_t pixel_count() const noexcept {
    return std::size_t{width_} * height_;
  }
  std::size_t sample_count() const noexcept { return data_.size(); }

  std::span<const std::uint8_t> samples() const noexcept { return data_; }
  std::span<std::uint8_t> samples() noexcept { return data_; }

  std::uint8_t at(std::uint32_t row, std::uint32_t col,
                  std::uint32_t channel = 0) const noexcept {
    return data_[(std::size_t{row} * width_ + col) * channels_ + channel];
  }
  std::uint8_t& at(std::uint32_t row, std::uint32_t col,
                   std::uint32_t channel = 0) noexcept {
    return data_[(std::size_t{row} * width_ + col) * channels_ + channel];
  }

  bool same_shape(const Frame& other) const noexcept {
    return width_ == other.width_ && height_ == other.height_ &&
           channels_ == other.channels_;
  }

  friend bool operator==(const Frame&, const Frame&) = default;

 private:
  std::uint32_t width_ = 0;
  std::uint32_t height_ = 0;
  std::uint32_t channels_ = 0;
  std::vector<std::uint8_t> data_;
};

/// Ordered, shape-homogeneous frames plus playback timing. Immutable once
/// built.
class FrameSequence {
 public:
  FrameSequence(std::vector<Frame> frames, std::uint32_t frame_delay_ms,
                std::string source_label = {});

  std::size_t size() const noexcept { return frames_.size(); }
  const Frame& operator[](std::size_t i) const noexcept { return frames_[i]; }
  const std::vector<Frame>& frames() const noexcept { return frames_; }
  std::uint32_t frame_delay_ms() const noexcept { return delay_ms_; }
  const std::string& source_label() const noexcept { return label_; }

  std::uint32_t width() const noexcept { return frames_.front().width(); }
  std::uint32_t height() const noexcept { return frames_.front().height(); }
  std::uint32_t channels() const noexcept {
    return frames_.front().channels();
  }

  auto begin() const noexcept { return frames_.begin(); }
  auto end() const noexcept { return frames_.end(); }

 private:
  std::vector<Frame> frames_;
  std::uint32_t delay_ms_;
  std::string label_;
};

/// Throws TooFewFrames unless the sequence holds at least two frames.
void require_analysable(const FrameSequence& seq);

/// Rec. 601 luma, rounded half-up. Single-channel frames pass through.
std::vector<std::uint8_t> luma(const Frame& frame);

inline std::uint8_t round_to_sample(double v) noexcept {
  const double r = std::floor(v + 0.5);
  if (r <= 0.0) return 0;
  if (r >= 255.0) return 255;
  return static_cast<std::uint8_t>(r);
}

}  // namespace vtex
