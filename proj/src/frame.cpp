#include "vtex/frame.hpp"

#include "vtex/error.hpp"

namespace vtex {

namespace {

void check_channels(std::uint32_t channels) {
  if (channels != 1 && channels != 3) {
    fail(ErrorCode::InvalidArgument,
         "frame channels must be 1 or 3, got " + std::to_string(channels));
  }
}

}  // namespace

Frame::Frame(std::uint32_t width, std::uint32_t height, std::uint32_t channels)
    : width_(width), height_(height), channels_(channels),
      data_(std::size_t{width} * height * channels, 0) {
  check_channels(channels);
}

Frame::Frame(std::uint32_t width, std::uint32_t height, std::uint32_t channels,
             std::vector<std::uint8_t> data)
    : width_(width), height_(height), channels_(channels),
      data_(std::move(data)) {
  check_channels(channels);
  if (data_.size() != std::size_t{width} * height * channels) {
    fail(ErrorCode::DimensionMismatch,
         "frame data length " + std::to_string(data_.size()) +
             " does not match " + std::to_string(width) + "x" +
             std::to_string(height) + "x" + std::to_string(channels));
  }
}

FrameSequence::FrameSequence(std::vector<Frame> frames,
                             std::uint32_t frame_delay_ms,
                             std::string source_label)
    : frames_(std::move(frames)), delay_ms_(frame_delay_ms),
      label_(std::move(source_label)) {
  if (frames_.empty()) {
    fail(ErrorCode::EmptyInput, "frame sequence is empty");
  }
  if (delay_ms_ == 0) {
    fail(ErrorCode::InvalidArgument, "frame delay must be positive");
  }
  const Frame& first = frames_.front();
  for (std::size_t i = 1; i < frames_.size(); ++i) {
    if (!frames_[i].same_shape(first)) {
      fail(ErrorCode::DimensionMismatch,
           "frame " + std::to_string(i) + " is " +
               std::to_string(frames_[i].width()) + "x" +
               std::to_string(frames_[i].height()) + "x" +
               std::to_string(frames_[i].channels()) + ", expected " +
               std::to_string(first.width()) + "x" +
               std::to_string(first.height()) + "x" +
               std::to_string(first.channels()));
    }
  }
}

void require_analysable(const FrameSequence& seq) {
  if (seq.size() < 2) {
    fail(ErrorCode::TooFewFrames,
         "at least 2 frames required, got " + std::to_string(seq.size()));
  }
}

std::vector<std::uint8_t> luma(const Frame& frame) {
  const auto s = frame.samples();
  if (frame.channels() == 1) return {s.begin(), s.end()};
  std::vector<std::uint8_t> out(frame.pixel_count());
  for (std::size_t p = 0; p < out.size(); ++p) {
    const std::uint32_t y = 299u * s[3 * p] + 587u * s[3 * p + 1] +
                            114u * s[3 * p + 2] + 500u;
    out[p] = static_cast<std::uint8_t>(y / 1000u);
  }
  return out;
}

}  // namespace vtex
