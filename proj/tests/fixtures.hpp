#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "vtex/frame.hpp"
#include "vtex/matrix.hpp"
#include "vtex/random.hpp"

namespace fixtures {

// Disc swinging left and right; bob x = cx + amp * sin(2 pi t / period).
// Every interior position is visited twice per period, once each way.
vtex::FrameSequence pendulum(std::size_t frames = 40, std::size_t period = 20,
                             std::uint32_t width = 64, std::uint32_t height = 32);
std::vector<double> pendulum_positions(std::size_t frames = 40, std::size_t period = 20);

// Exact repetition: frame t depends only on t % period.
vtex::FrameSequence periodic(std::size_t frames = 36, std::size_t period = 12,
                             std::uint32_t width = 24, std::uint32_t height = 16);

// Travelling sine stripes with some vertical ripple; successive frames
// differ smoothly, distant frames do not.
vtex::FrameSequence flag(std::size_t frames = 30, std::uint32_t width = 48,
                         std::uint32_t height = 32);

// 160x120 RGB clip, 100 frames: drifting blobs over a gradient with a
// 25-frame cycle plus a little per-frame noise.
vtex::FrameSequence demo_clip(std::size_t frames = 100, std::uint32_t width = 160,
                              std::uint32_t height = 120);

vtex::Frame random_frame(vtex::Rng& rng, std::uint32_t width, std::uint32_t height,
                         std::uint32_t channels);

// Symmetric, zero diagonal, positive off-diagonal.
vtex::Matrix random_distance(vtex::Rng& rng, std::size_t n);
// Arbitrary non-negative entries.
vtex::Matrix random_matrix(vtex::Rng& rng, std::size_t rows, std::size_t cols);

// frame_00000.png ... into `dir` (created, emptied first).
void write_png_dir(const vtex::FrameSequence& seq, const std::filesystem::path& dir);

// Fresh directory under the system temp dir.
std::filesystem::path scratch_dir(const std::string& name);

}  // namespace fixtures

namespace fixtures {

// Three unit-variance Gaussian blobs 50 apart, `per` points each in `dim`
// dimensions. truth receives the blob of every point.
std::vector<std::vector<double>> gaussian_blobs(vtex::Rng& rng, std::size_t dim, std::size_t per,
                                                std::vector<int>& truth);

}  // namespace fixtures
