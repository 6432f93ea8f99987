#include <algorithm>
#include <cctype>
#include <fstream>
#include <iterator>

#include "vtex/error.hpp"
#include "vtex/frame_io.hpp"

namespace fs = std::filesystem;

namespace vtex {

namespace {

std::vector<std::uint8_t> read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::IoFailure, "cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

bool has_png_extension(const fs::path& p) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext == ".png";
}

FrameSequence load_png_directory(const fs::path& dir) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && has_png_extension(entry.path())) {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end(), [](const fs::path& a, const fs::path& b) {
    return a.filename().string() < b.filename().string();
  });
  if (files.size() < 2) {
    fail(ErrorCode::TooFewFrames, "found " + std::to_string(files.size()) +
                                      " png frame(s) in " + dir.string());
  }
  std::vector<Frame> frames;
  frames.reserve(files.size());
  for (const auto& f : files) {
    frames.push_back(read_png(f));
    if (!frames.back().same_shape(frames.front())) {
      fail(ErrorCode::DimensionMismatch,
           f.filename().string() + " differs in size from " +
               files.front().filename().string());
    }
  }
  // Stills carry no timing; 40 ms is 25 fps.
  return FrameSequence(std::move(frames), 40, dir.string());
}

FrameSequence load_gif(const fs::path& path) {
  const auto bytes = read_file(path);
  DecodedGif gif = decode_gif(bytes);
  if (gif.frames.size() < 2) {
    fail(ErrorCode::TooFewFrames, path.string() + " holds " +
                                      std::to_string(gif.frames.size()) +
                                      " frame(s)");
  }
  std::uint32_t delay = gif.delays_ms.front();
  if (delay == 0) delay = 100;
  return FrameSequence(std::move(gif.frames), delay, path.string());
}

}  // namespace

FrameSequence load_frames(const fs::path& path, InputKind kind) {
  if (!fs::exists(path)) {
    fail(ErrorCode::MissingInput, "input not found: " + path.string());
  }
  if (kind == InputKind::Auto) {
    kind = fs::is_directory(path) ? InputKind::PngDirectory : InputKind::Gif;
  }
  if (kind == InputKind::PngDirectory) {
    if (!fs::is_directory(path)) {
      fail(ErrorCode::MissingInput, "not a directory: " + path.string());
    }
    return load_png_directory(path);
  }
  return load_gif(path);
}

void write_animation(const FrameSequence& seq, const fs::path& path,
                     bool loop_forever) {
  const auto bytes = encode_gif(seq, loop_forever);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::IoFailure, "cannot create " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) fail(ErrorCode::IoFailure, "write failed: " + path.string());
}

AnimationInfo probe_animation(const fs::path& path) {
  if (!fs::exists(path)) {
    fail(ErrorCode::MissingInput, "input not found: " + path.string());
  }
  const auto bytes = read_file(path);
  const DecodedGif gif = decode_gif(bytes);
  AnimationInfo info;
  info.frame_count = gif.frames.size();
  info.width = gif.frames.front().width();
  info.height = gif.frames.front().height();
  info.channels = gif.frames.front().channels();
  info.frame_delay_ms = gif.delays_ms.front();
  info.loop_count = gif.loop_count;
  info.loop_forever = gif.loop_count.has_value() && *gif.loop_count == 0;
  return info;
}

}  // namespace vtex
