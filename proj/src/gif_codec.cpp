#include <algorithm>
#include <array>
#include <cmath>
#include <unordered_map>

#include "vtex/error.hpp"
#include "vtex/frame_io.hpp"

namespace vtex {

namespace {

constexpr int kMinCodeSize = 8;  // palettes are always padded to 256 entries
constexpr int kMaxCode = 4095;

std::uint32_t pack_rgb(std::uint8_t r, std::uint8_t g, std::uint8_t b) {
  return (std::uint32_t{r} << 16) | (std::uint32_t{g} << 8) | b;
}

std::vector<std::uint32_t> packed_pixels(const Frame& frame) {
  std::vector<std::uint32_t> px(frame.pixel_count());
  const auto s = frame.samples();
  if (frame.channels() == 1) {
    for (std::size_t i = 0; i < px.size(); ++i) px[i] = pack_rgb(s[i], s[i], s[i]);
  } else {
    for (std::size_t i = 0; i < px.size(); ++i)
      px[i] = pack_rgb(s[3 * i], s[3 * i + 1], s[3 * i + 2]);
  }
  return px;
}

int channel_of(std::uint32_t rgb, int ch) {
  return static_cast<int>((rgb >> (16 - 8 * ch)) & 0xFF);
}

struct ColorCount {
  std::uint32_t rgb;
  std::uint64_t count;
};

struct Box {
  std::size_t begin;
  std::size_t end;
};

// Widest channel of a box and its extent.
std::pair<int, int> widest_channel(const std::vector<ColorCount>& colors,
                                   const Box& box) {
  std::array<int, 3> lo{255, 255, 255};
  std::array<int, 3> hi{0, 0, 0};
  for (std::size_t i = box.begin; i < box.end; ++i) {
    for (int ch = 0; ch < 3; ++ch) {
      const int v = channel_of(colors[i].rgb, ch);
      lo[ch] = std::min(lo[ch], v);
      hi[ch] = std::max(hi[ch], v);
    }
  }
  int best = 0;
  for (int ch = 1; ch < 3; ++ch) {
    if (hi[ch] - lo[ch] > hi[best] - lo[best]) best = ch;
  }
  return {best, hi[best] - lo[best]};
}

}  // namespace

IndexedImage quantize_median_cut(const Frame& frame) {
  const auto px = packed_pixels(frame);
  std::unordered_map<std::uint32_t, std::uint64_t> histogram;
  for (auto c : px) ++histogram[c];

  std::vector<ColorCount> colors;
  colors.reserve(histogram.size());
  for (const auto& [rgb, n] : histogram) colors.push_back({rgb, n});
  std::sort(colors.begin(), colors.end(),
            [](const ColorCount& a, const ColorCount& b) { return a.rgb < b.rgb; });

  std::vector<Box> boxes{{0, colors.size()}};
  while (boxes.size() < 256) {
    int best_box = -1;
    int best_extent = 0;
    int best_channel = 0;
    for (std::size_t b = 0; b < boxes.size(); ++b) {
      if (boxes[b].end - boxes[b].begin < 2) continue;
      const auto [ch, extent] = widest_channel(colors, boxes[b]);
      if (extent > best_extent) {
        best_box = static_cast<int>(b);
        best_extent = extent;
        best_channel = ch;
      }
    }
    if (best_box < 0) break;

    Box box = boxes[best_box];
    const int ch = best_channel;
    std::sort(colors.begin() + box.begin, colors.begin() + box.end,
              [ch](const ColorCount& a, const ColorCount& b) {
                const int va = channel_of(a.rgb, ch);
                const int vb = channel_of(b.rgb, ch);
                return va != vb ? va < vb : a.rgb < b.rgb;
              });
    std::uint64_t total = 0;
    for (std::size_t i = box.begin; i < box.end; ++i) total += colors[i].count;
    std::uint64_t acc = 0;
    std::size_t split = box.begin + 1;
    for (std::size_t i = box.begin; i + 1 < box.end; ++i) {
      acc += colors[i].count;
      split = i + 1;
      if (2 * acc >= total) break;
    }
    boxes[best_box] = {box.begin, split};
    boxes.push_back({split, box.end});
  }

  IndexedImage out;
  out.palette.reserve(boxes.size() * 3);
  std::unordered_map<std::uint32_t, std::uint8_t> lookup;
  lookup.reserve(colors.size());
  for (std::size_t b = 0; b < boxes.size(); ++b) {
    std::array<std::uint64_t, 3> sum{0, 0, 0};
    std::uint64_t weight = 0;
    for (std::size_t i = boxes[b].begin; i < boxes[b].end; ++i) {
      for (int ch = 0; ch < 3; ++ch)
        sum[ch] += static_cast<std::uint64_t>(channel_of(colors[i].rgb, ch)) *
                   colors[i].count;
      weight += colors[i].count;
      lookup[colors[i].rgb] = static_cast<std::uint8_t>(b);
    }
    for (int ch = 0; ch < 3; ++ch)
      out.palette.push_back(
          static_cast<std::uint8_t>((sum[ch] + weight / 2) / weight));
  }
  out.indices.resize(px.size());
  for (std::size_t i = 0; i < px.size(); ++i) out.indices[i] = lookup[px[i]];
  return out;
}

namespace {

class ByteWriter {
 public:
  void u8(std::uint8_t v) { bytes_.push_back(v); }
  void u16(std::uint16_t v) {
    u8(static_cast<std::uint8_t>(v & 0xFF));
    u8(static_cast<std::uint8_t>(v >> 8));
  }
  void str(std::string_view s) { bytes_.insert(bytes_.end(), s.begin(), s.end()); }
  void raw(std::span<const std::uint8_t> s) {
    bytes_.insert(bytes_.end(), s.begin(), s.end());
  }
  std::vector<std::uint8_t> take() { return std::move(bytes_); }

 private:
  std::vector<std::uint8_t> bytes_;
};

class BitPacker {
 public:
  void write(int code, int size) {
    acc_ |= static_cast<std::uint32_t>(code) << nbits_;
    nbits_ += size;
    while (nbits_ >= 8) {
      out_.push_back(static_cast<std::uint8_t>(acc_ & 0xFF));
      acc_ >>= 8;
      nbits_ -= 8;
    }
  }
  std::vector<std::uint8_t> finish() {
    if (nbits_ > 0) out_.push_back(static_cast<std::uint8_t>(acc_ & 0xFF));
    acc_ = 0;
    nbits_ = 0;
    return std::move(out_);
  }

 private:
  std::uint32_t acc_ = 0;
  int nbits_ = 0;
  std::vector<std::uint8_t> out_;
};

std::vector<std::uint8_t> lzw_encode(std::span<const std::uint8_t> indices) {
  const int clear = 1 << kMinCodeSize;
  const int eoi = clear + 1;
  // child[code * 256 + byte] -> code extending `code` by `byte`, or -1.
  std::vector<std::int16_t> child(std::size_t{kMaxCode + 1} * 256, -1);
  BitPacker bits;
  int code_size = kMinCodeSize + 1;
  int max_code = eoi;
  bits.write(clear, code_size);
  if (indices.empty()) {
    bits.write(eoi, code_size);
    return bits.finish();
  }
  int current = indices[0];
  for (std::size_t i = 1; i < indices.size(); ++i) {
    const int next = indices[i];
    const auto slot = static_cast<std::size_t>(current) * 256 + next;
    if (child[slot] >= 0) {
      current = child[slot];
      continue;
    }
    bits.write(current, code_size);
    child[slot] = static_cast<std::int16_t>(++max_code);
    if (max_code >= (1 << code_size) && code_size < 12) ++code_size;
    if (max_code == kMaxCode) {
      bits.write(clear, code_size);
      std::fill(child.begin(), child.end(), std::int16_t{-1});
      code_size = kMinCodeSize + 1;
      max_code = eoi;
    }
    current = next;
  }
  bits.write(current, code_size);
  // The decoder adds one more table entry on reading the final code; mirror
  // its code-size bump before writing EOI.
  if (max_code + 1 >= (1 << code_size) && code_size < 12) ++code_size;
  bits.write(eoi, code_size);
  return bits.finish();
}

}  // namespace

std::vector<std::uint8_t> encode_gif(const FrameSequence& seq,
                                     bool loop_forever) {
  if (seq.width() > 0xFFFF || seq.height() > 0xFFFF) {
    fail(ErrorCode::EncodeFailure, "frame too large for GIF");
  }
  ByteWriter w;
  w.str("GIF89a");
  w.u16(static_cast<std::uint16_t>(seq.width()));
  w.u16(static_cast<std::uint16_t>(seq.height()));
  w.u8(0x70);  // no global table, 8-bit colour resolution
  w.u8(0);
  w.u8(0);
  if (loop_forever) {
    w.u8(0x21);
    w.u8(0xFF);
    w.u8(11);
    w.str("NETSCAPE2.0");
    w.u8(3);
    w.u8(1);
    w.u16(0);
    w.u8(0);
  }
  // Private extension recording the channel count, so a colour clip whose
  // palette happens to be all grey still decodes as RGB.
  w.u8(0x21);
  w.u8(0xFF);
  w.u8(11);
  w.str("VTEXCHAN1.0");
  w.u8(1);
  w.u8(static_cast<std::uint8_t>(seq.channels()));
  w.u8(0);
  const auto delay_cs = static_cast<std::uint16_t>(
      std::clamp<std::uint32_t>((seq.frame_delay_ms() + 5) / 10, 1, 0xFFFF));
  for (const Frame& frame : seq) {
    const IndexedImage img = quantize_median_cut(frame);
    // Graphic control: dispose = 1 (leave in place), no transparency.
    w.u8(0x21);
    w.u8(0xF9);
    w.u8(4);
    w.u8(0x04);
    w.u16(delay_cs);
    w.u8(0);
    w.u8(0);
    // Image descriptor with a full 256-entry local table.
    w.u8(0x2C);
    w.u16(0);
    w.u16(0);
    w.u16(static_cast<std::uint16_t>(frame.width()));
    w.u16(static_cast<std::uint16_t>(frame.height()));
    w.u8(0x87);
    std::vector<std::uint8_t> table(768, 0);
    std::copy(img.palette.begin(), img.palette.end(), table.begin());
    w.raw(table);
    w.u8(kMinCodeSize);
    const auto data = lzw_encode(img.indices);
    for (std::size_t off = 0; off < data.size(); off += 255) {
      const std::size_t n = std::min<std::size_t>(255, data.size() - off);
      w.u8(static_cast<std::uint8_t>(n));
      w.raw(std::span(data).subspan(off, n));
    }
    w.u8(0);
  }
  w.u8(0x3B);
  return w.take();
}

namespace {

class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::uint8_t u8() {
    if (pos_ >= bytes_.size()) fail(ErrorCode::DecodeFailure, "truncated GIF");
    return bytes_[pos_++];
  }
  std::uint16_t u16() {
    const std::uint16_t lo = u8();
    return static_cast<std::uint16_t>(lo | (std::uint16_t{u8()} << 8));
  }
  std::span<const std::uint8_t> take(std::size_t n) {
    if (bytes_.size() - pos_ < n) fail(ErrorCode::DecodeFailure, "truncated GIF");
    auto s = bytes_.subspan(pos_, n);
    pos_ += n;
    return s;
  }
  std::vector<std::uint8_t> sub_blocks() {
    std::vector<std::uint8_t> out;
    for (std::uint8_t n = u8(); n != 0; n = u8()) {
      const auto s = take(n);
      out.insert(out.end(), s.begin(), s.end());
    }
    return out;
  }
  void skip_sub_blocks() {
    for (std::uint8_t n = u8(); n != 0; n = u8()) take(n);
  }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

std::vector<std::uint8_t> lzw_decode(std::span<const std::uint8_t> data,
                                     int min_code_size, std::size_t expected) {
  if (min_code_size < 2 || min_code_size > 11) {
    fail(ErrorCode::DecodeFailure, "bad LZW minimum code size");
  }
  const int clear = 1 << min_code_size;
  const int eoi = clear + 1;
  std::vector<int> prefix(kMaxCode + 1, -1);
  std::vector<std::uint8_t> suffix(kMaxCode + 1, 0);
  std::vector<std::uint8_t> first(kMaxCode + 1, 0);
  for (int c = 0; c < clear; ++c) {
    suffix[c] = static_cast<std::uint8_t>(c);
    first[c] = static_cast<std::uint8_t>(c);
  }
  std::vector<std::uint8_t> out;
  out.reserve(expected);
  std::vector<std::uint8_t> stack;

  int code_size = min_code_size + 1;
  int next = eoi + 1;
  int prev = -1;
  std::uint32_t acc = 0;
  int nbits = 0;
  std::size_t pos = 0;

  auto emit = [&](int code) {
    stack.clear();
    for (int c = code; c >= 0; c = prefix[c]) stack.push_back(suffix[c]);
    out.insert(out.end(), stack.rbegin(), stack.rend());
  };

  while (out.size() < expected) {
    while (nbits < code_size && pos < data.size()) {
      acc |= std::uint32_t{data[pos++]} << nbits;
      nbits += 8;
    }
    if (nbits < code_size) break;
    const int code = static_cast<int>(acc & ((1u << code_size) - 1));
    acc >>= code_size;
    nbits -= code_size;

    if (code == clear) {
      code_size = min_code_size + 1;
      next = eoi + 1;
      prev = -1;
      continue;
    }
    if (code == eoi) break;
    if (prev < 0) {
      if (code >= clear) fail(ErrorCode::DecodeFailure, "bad LZW code");
      emit(code);
      prev = code;
      continue;
    }
    if (code < next) {
      emit(code);
      if (next <= kMaxCode) {
        prefix[next] = prev;
        suffix[next] = first[code];
        first[next] = first[prev];
        ++next;
      }
    } else if (code == next && next <= kMaxCode) {
      prefix[next] = prev;
      suffix[next] = first[prev];
      first[next] = first[prev];
      ++next;
      emit(code);
    } else {
      fail(ErrorCode::DecodeFailure, "bad LZW code");
    }
    if (next == (1 << code_size) && code_size < 12) ++code_size;
    prev = code;
  }
  if (out.size() < expected) {
    // Tolerate short streams the way common decoders do: pad with index 0.
    out.resize(expected, 0);
  }
  out.resize(expected);
  return out;
}

std::vector<std::uint8_t> read_color_table(ByteReader& r, int size_bits) {
  const std::size_t entries = std::size_t{1} << (size_bits + 1);
  const auto s = r.take(entries * 3);
  return {s.begin(), s.end()};
}

bool table_is_gray(const std::vector<std::uint8_t>& table) {
  for (std::size_t i = 0; i + 2 < table.size(); i += 3) {
    if (table[i] != table[i + 1] || table[i] != table[i + 2]) return false;
  }
  return true;
}

}  // namespace

DecodedGif decode_gif(std::span<const std::uint8_t> bytes) {
  ByteReader r(bytes);
  const auto sig = r.take(6);
  const std::string_view magic(reinterpret_cast<const char*>(sig.data()), 6);
  if (magic != "GIF87a" && magic != "GIF89a") {
    fail(ErrorCode::DecodeFailure, "not a GIF file");
  }
  const std::uint32_t width = r.u16();
  const std::uint32_t height = r.u16();
  const std::uint8_t flags = r.u8();
  const std::uint8_t background_index = r.u8();
  r.u8();
  if (width == 0 || height == 0) fail(ErrorCode::DecodeFailure, "empty GIF canvas");

  std::vector<std::uint8_t> global_table;
  if (flags & 0x80) global_table = read_color_table(r, flags & 0x07);
  bool all_gray = global_table.empty() || table_is_gray(global_table);

  std::vector<std::uint8_t> canvas(std::size_t{width} * height * 3, 0);
  if (!global_table.empty() && std::size_t{background_index} * 3 + 2 < global_table.size()) {
    for (std::size_t p = 0; p < std::size_t{width} * height; ++p)
      for (int ch = 0; ch < 3; ++ch)
        canvas[3 * p + ch] = global_table[3 * background_index + ch];
  }
  const std::vector<std::uint8_t> background = canvas;

  DecodedGif out;
  std::vector<std::vector<std::uint8_t>> rgb_frames;
  int declared_channels = 0;
  int disposal = 0;
  int transparent = -1;
  std::uint32_t delay_ms = 0;

  for (;;) {
    const std::uint8_t block = r.u8();
    if (block == 0x3B) break;
    if (block == 0x21) {
      const std::uint8_t label = r.u8();
      if (label == 0xF9) {
        const auto body = r.sub_blocks();
        if (body.size() >= 4) {
          disposal = (body[0] >> 2) & 0x07;
          transparent = (body[0] & 0x01) ? body[3] : -1;
          delay_ms = 10u * (std::uint32_t{body[1]} | (std::uint32_t{body[2]} << 8));
        }
      } else if (label == 0xFF) {
        const std::uint8_t n = r.u8();
        const auto ident = r.take(n);
        const auto body = r.sub_blocks();
        const std::string_view id(reinterpret_cast<const char*>(ident.data()), ident.size());
        if ((id == "NETSCAPE2.0" || id == "ANIMEXTS1.0") && body.size() >= 3 && body[0] == 1) {
          out.loop_count = static_cast<std::uint16_t>(body[1] | (body[2] << 8));
        } else if (id == "VTEXCHAN1.0" && body.size() == 1 &&
                   (body[0] == 1 || body[0] == 3)) {
          declared_channels = body[0];
        }
      } else {
        r.skip_sub_blocks();
      }
      continue;
    }
    if (block != 0x2C) fail(ErrorCode::DecodeFailure, "unknown GIF block");

    const std::uint32_t left = r.u16();
    const std::uint32_t top = r.u16();
    const std::uint32_t fw = r.u16();
    const std::uint32_t fh = r.u16();
    const std::uint8_t iflags = r.u8();
    std::vector<std::uint8_t> local_table;
    if (iflags & 0x80) {
      local_table = read_color_table(r, iflags & 0x07);
      all_gray = all_gray && table_is_gray(local_table);
    }
    const auto& table = local_table.empty() ? global_table : local_table;
    if (table.empty()) fail(ErrorCode::DecodeFailure, "frame without colour table");
    const int min_code = r.u8();
    const auto data = r.sub_blocks();
    auto indices = lzw_decode(data, min_code, std::size_t{fw} * fh);

    if (iflags & 0x40) {
      std::vector<std::uint8_t> rows(indices.size());
      std::uint32_t src = 0;
      constexpr std::array<std::uint32_t, 4> start{0, 4, 2, 1};
      constexpr std::array<std::uint32_t, 4> step{8, 8, 4, 2};
      for (int pass = 0; pass < 4; ++pass) {
        for (std::uint32_t y = start[pass]; y < fh; y += step[pass], ++src) {
          std::copy_n(indices.begin() + std::size_t{src} * fw, fw,
                      rows.begin() + std::size_t{y} * fw);
        }
      }
      indices = std::move(rows);
    }

    const std::vector<std::uint8_t> before = canvas;
    for (std::uint32_t y = 0; y < fh; ++y) {
      const std::uint32_t cy = top + y;
      if (cy >= height) break;
      for (std::uint32_t x = 0; x < fw; ++x) {
        const std::uint32_t cx = left + x;
        if (cx >= width) break;
        const int idx = indices[std::size_t{y} * fw + x];
        if (idx == transparent) continue;
        if (std::size_t(idx) * 3 + 2 >= table.size()) continue;
        const std::size_t p = (std::size_t{cy} * width + cx) * 3;
        canvas[p] = table[3 * idx];
        canvas[p + 1] = table[3 * idx + 1];
        canvas[p + 2] = table[3 * idx + 2];
      }
    }
    rgb_frames.push_back(canvas);
    out.delays_ms.push_back(delay_ms);

    if (disposal == 2) {
      for (std::uint32_t y = top; y < std::min(height, top + fh); ++y)
        for (std::uint32_t x = left; x < std::min(width, left + fw); ++x)
          for (int ch = 0; ch < 3; ++ch) {
            const std::size_t p = (std::size_t{y} * width + x) * 3 + ch;
            canvas[p] = background[p];
          }
    } else if (disposal == 3) {
      canvas = before;
    }
    disposal = 0;
    transparent = -1;
    delay_ms = 0;
  }

  if (rgb_frames.empty()) fail(ErrorCode::DecodeFailure, "GIF has no frames");
  if (declared_channels != 0) all_gray = declared_channels == 1;
  out.frames.reserve(rgb_frames.size());
  for (auto& rgb : rgb_frames) {
    if (all_gray) {
      std::vector<std::uint8_t> gray(rgb.size() / 3);
      for (std::size_t p = 0; p < gray.size(); ++p) gray[p] = rgb[3 * p];
      out.frames.emplace_back(width, height, 1, std::move(gray));
    } else {
      out.frames.emplace_back(width, height, 3, std::move(rgb));
    }
  }
  return out;
}

}  // namespace vtex
