#include "fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "vtex/frame_io.hpp"

namespace fs = std::filesystem;

namespace fixtures {

namespace {

std::uint8_t clamp8(double v) { return vtex::round_to_sample(v); }

}  // namespace

std::vector<double> pendulum_positions(std::size_t frames, std::size_t period) {
  std::vector<double> x(frames);
  for (std::size_t t = 0; t < frames; ++t) {
    x[t] = std::sin(2.0 * std::numbers::pi * static_cast<double>(t) / static_cast<double>(period));
  }
  return x;
}

vtex::FrameSequence pendulum(std::size_t frames, std::size_t period, std::uint32_t width,
                             std::uint32_t height) {
  const auto pos = pendulum_positions(frames, period);
  const double cx = width / 2.0, cy = height / 2.0;
  const double amp = width / 2.0 - 8.0, radius = 5.0;
  std::vector<vtex::Frame> out;
  for (std::size_t t = 0; t < frames; ++t) {
    vtex::Frame f(width, height, 1);
    const double bx = cx + amp * pos[t];
    for (std::uint32_t r = 0; r < height; ++r) {
      for (std::uint32_t c = 0; c < width; ++c) {
        const double dx = c + 0.5 - bx, dy = r + 0.5 - cy;
        // Soft edge so distances vary smoothly with position.
        const double edge = std::clamp(radius + 0.5 - std::sqrt(dx * dx + dy * dy), 0.0, 1.0);
        f.at(r, c) = clamp8(30.0 + 200.0 * edge);
      }
    }
    out.push_back(std::move(f));
  }
  return vtex::FrameSequence(std::move(out), 40, "pendulum");
}

vtex::FrameSequence periodic(std::size_t frames, std::size_t period, std::uint32_t width,
                             std::uint32_t height) {
  std::vector<vtex::Frame> out;
  for (std::size_t t = 0; t < frames; ++t) {
    const double phase = 2.0 * std::numbers::pi * static_cast<double>(t % period) /
                         static_cast<double>(period);
    vtex::Frame f(width, height, 1);
    for (std::uint32_t r = 0; r < height; ++r) {
      for (std::uint32_t c = 0; c < width; ++c) {
        f.at(r, c) = clamp8(128.0 + 90.0 * std::sin(phase + 0.4 * c) * std::cos(0.3 * r));
      }
    }
    out.push_back(std::move(f));
  }
  return vtex::FrameSequence(std::move(out), 50, "periodic");
}

vtex::FrameSequence flag(std::size_t frames, std::uint32_t width, std::uint32_t height) {
  std::vector<vtex::Frame> out;
  for (std::size_t t = 0; t < frames; ++t) {
    vtex::Frame f(width, height, 3);
    const double tt = static_cast<double>(t);
    for (std::uint32_t r = 0; r < height; ++r) {
      for (std::uint32_t c = 0; c < width; ++c) {
        const double wave = std::sin(0.35 * c - 0.23 * tt + 0.5 * std::sin(0.2 * r + 0.05 * tt));
        f.at(r, c, 0) = clamp8(140.0 + 100.0 * wave);
        f.at(r, c, 1) = clamp8(60.0 + 40.0 * wave);
        f.at(r, c, 2) = clamp8(90.0 - 70.0 * wave);
      }
    }
    out.push_back(std::move(f));
  }
  return vtex::FrameSequence(std::move(out), 40, "flag");
}

vtex::FrameSequence demo_clip(std::size_t frames, std::uint32_t width, std::uint32_t height) {
  vtex::Rng rng(2024);
  std::vector<vtex::Frame> out;
  for (std::size_t t = 0; t < frames; ++t) {
    const double ph = 2.0 * std::numbers::pi * static_cast<double>(t) / 25.0;
    const double bx[2] = {width * (0.5 + 0.3 * std::cos(ph)), width * (0.5 - 0.25 * std::sin(ph))};
    const double by[2] = {height * (0.5 + 0.3 * std::sin(ph)), height * (0.4 + 0.2 * std::cos(2 * ph))};
    vtex::Frame f(width, height, 3);
    for (std::uint32_t r = 0; r < height; ++r) {
      for (std::uint32_t c = 0; c < width; ++c) {
        double v[3] = {40.0 + 80.0 * c / width, 60.0 + 60.0 * r / height, 90.0};
        for (int b = 0; b < 2; ++b) {
          const double dx = c - bx[b], dy = r - by[b];
          const double g = std::exp(-(dx * dx + dy * dy) / (2.0 * 14.0 * 14.0));
          v[b] += 150.0 * g;
          v[2] += 60.0 * g;
        }
        const double noise = static_cast<double>(rng.below(5)) - 2.0;
        for (int ch = 0; ch < 3; ++ch) f.at(r, c, ch) = clamp8(v[ch] + noise);
      }
    }
    out.push_back(std::move(f));
  }
  return vtex::FrameSequence(std::move(out), 40, "demo");
}

vtex::Frame random_frame(vtex::Rng& rng, std::uint32_t width, std::uint32_t height,
                         std::uint32_t channels) {
  vtex::Frame f(width, height, channels);
  for (auto& s : f.samples()) s = static_cast<std::uint8_t>(rng.below(256));
  return f;
}

vtex::Matrix random_distance(vtex::Rng& rng, std::size_t n) {
  vtex::Matrix m(n, n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = 1.0 + 1000.0 * rng.uniform();
      m(i, j) = v;
      m(j, i) = v;
    }
  }
  return m;
}

vtex::Matrix random_matrix(vtex::Rng& rng, std::size_t rows, std::size_t cols) {
  vtex::Matrix m(rows, cols, 0.0);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = 100.0 * rng.uniform();
  }
  return m;
}

void write_png_dir(const vtex::FrameSequence& seq, const fs::path& dir) {
  fs::remove_all(dir);
  fs::create_directories(dir);
  for (std::size_t i = 0; i < seq.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "frame_%05zu.png", i);
    vtex::write_png(seq[i], dir / name);
  }
}

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("vtex-test-" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace fixtures

namespace fixtures {

std::vector<std::vector<double>> gaussian_blobs(vtex::Rng& rng, std::size_t dim, std::size_t per,
                                                std::vector<int>& truth) {
  auto gauss = [&] {
    const double u = 1.0 - rng.uniform(), v = rng.uniform();
    return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * std::numbers::pi * v);
  };
  std::vector<std::vector<double>> pts;
  truth.clear();
  for (int b = 0; b < 3; ++b) {
    for (std::size_t i = 0; i < per; ++i) {
      std::vector<double> p(dim);
      for (std::size_t d = 0; d < dim; ++d) p[d] = (d % 3 == static_cast<std::size_t>(b) ? 50.0 : 0.0) + gauss();
      pts.push_back(std::move(p));
      truth.push_back(b);
    }
  }
  return pts;
}

}  // namespace fixtures
