#include <algorithm>
#include <bit>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iterator>

#include "vtex/error.hpp"
#include "vtex/pipeline.hpp"

namespace fs = std::filesystem;

namespace vtex {

namespace {

constexpr char kMatrixMagic[4] = {'V', 'T', 'X', 'M'};
constexpr std::uint32_t kMatrixVersion = 1;

static_assert(std::endian::native == std::endian::little,
              "matrix files are written in host byte order");

template <typename T>
void put(std::ofstream& out, const T& v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <typename T>
T get(std::ifstream& in, const fs::path& path) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof v);
  if (!in) fail(ErrorCode::DecodeFailure, "truncated matrix file " + path.string());
  return v;
}

class Fnv1a {
 public:
  void bytes(const void* data, std::size_t n) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
      h_ ^= p[i];
      h_ *= 0x100000001b3ull;
    }
  }
  void text(std::string_view s) {
    bytes(s.data(), s.size());
    const char sep = '\0';
    bytes(&sep, 1);
  }
  void file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCode::IoFailure, "cannot read " + path.string());
    std::vector<char> buf(1 << 16);
    while (in) {
      in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
      bytes(buf.data(), static_cast<std::size_t>(in.gcount()));
    }
  }
  std::uint64_t value() const { return h_; }

 private:
  std::uint64_t h_ = 0xcbf29ce484222325ull;
};

}  // namespace

void save_matrix(const DistanceMatrix& m, const fs::path& path) {
  const fs::path tmp = fs::path(path).concat(".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorCode::IoFailure, "cannot write " + tmp.string());
    out.write(kMatrixMagic, 4);
    put(out, kMatrixVersion);
    put(out, static_cast<std::uint64_t>(m.values.rows()));
    put(out, static_cast<std::uint64_t>(m.values.cols()));
    put(out, static_cast<std::uint64_t>(m.crop_offset));
    put(out, static_cast<std::uint8_t>(m.stage));
    put(out, static_cast<std::uint32_t>(m.metric_label.size()));
    out.write(m.metric_label.data(), static_cast<std::streamsize>(m.metric_label.size()));
    const auto v = m.values.values();
    out.write(reinterpret_cast<const char*>(v.data()),
              static_cast<std::streamsize>(v.size() * sizeof(double)));
    if (!out) fail(ErrorCode::IoFailure, "write failed: " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) fail(ErrorCode::IoFailure, "cannot move " + tmp.string() + " into place");
}

DistanceMatrix load_matrix(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::MissingInput, "matrix file not found: " + path.string());
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kMatrixMagic, 4) != 0) {
    fail(ErrorCode::DecodeFailure, path.string() + " is not a matrix file");
  }
  if (get<std::uint32_t>(in, path) != kMatrixVersion) {
    fail(ErrorCode::DecodeFailure, path.string() + ": unsupported matrix version");
  }
  const auto rows = get<std::uint64_t>(in, path);
  const auto cols = get<std::uint64_t>(in, path);
  const auto crop = get<std::uint64_t>(in, path);
  const auto stage = get<std::uint8_t>(in, path);
  const auto label_len = get<std::uint32_t>(in, path);
  if (stage > static_cast<std::uint8_t>(Stage::Shifted) || label_len > 256 ||
      rows > (1u << 20) || cols > (1u << 20)) {
    fail(ErrorCode::DecodeFailure, path.string() + ": corrupt header");
  }
  std::string label(label_len, '\0');
  in.read(label.data(), label_len);
  std::vector<double> values(rows * cols);
  in.read(reinterpret_cast<char*>(values.data()),
          static_cast<std::streamsize>(values.size() * sizeof(double)));
  if (!in) fail(ErrorCode::DecodeFailure, "truncated matrix file " + path.string());
  return {Matrix(rows, cols, std::move(values)), std::move(label), static_cast<Stage>(stage),
          static_cast<std::size_t>(crop)};
}

fs::path cache_root(const PipelineConfig& cfg) {
  if (!cfg.cache_dir.empty()) return cfg.cache_dir;
  if (const char* env = std::getenv("VTEX_CACHE_DIR"); env && *env) return env;
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg) return fs::path(xdg) / "vtex";
  if (const char* home = std::getenv("HOME"); home && *home) {
    return fs::path(home) / ".cache" / "vtex";
  }
  return ".vtex-cache";
}

std::string analysis_cache_key(const PipelineConfig& cfg) {
  const fs::path input = cfg.input;
  if (!fs::exists(input)) fail(ErrorCode::MissingInput, "input not found: " + input.string());
  Fnv1a h;
  h.text("vtex-analysis-v1");
  if (fs::is_directory(input)) {
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(input)) {
      if (e.is_regular_file()) files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
      h.text(f.filename().string());
      h.file(f);
    }
  } else {
    h.file(input);
  }
  h.text(cfg.get("metric"));
  h.text(cfg.get("normalize"));
  if (cfg.normalize) {
    h.text(cfg.get("pct_low"));
    h.text(cfg.get("pct_high"));
  }
  if (cfg.metric == MetricKind::WaveletCluster) {
    // The wavelet metric depends on the clustering.
    h.text(cfg.get("k"));
    h.text(cfg.get("seed"));
    h.text(cfg.get("mode"));
  }
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(h.value()));
  return hex;
}

}  // namespace vtex
