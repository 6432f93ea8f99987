#include "vtex/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "vtex/error.hpp"

namespace vtex {

std::string_view synthesis_mode_name(SynthesisMode m) noexcept {
  switch (m) {
    case SynthesisMode::Loop: return "loop";
    case SynthesisMode::Random: return "random";
    case SynthesisMode::Cluster: return "cluster";
  }
  return "unknown";
}

namespace {

[[noreturn]] void bad_value(std::string_view key, std::string_view value) {
  fail(ErrorCode::InvalidArgument,
       "invalid value '" + std::string(value) + "' for " + std::string(key));
}

template <typename T>
T parse_number(std::string_view key, std::string_view text) {
  T v{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) bad_value(key, text);
  return v;
}

bool parse_bool(std::string_view key, std::string_view text) {
  if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
  if (text == "false" || text == "0" || text == "no" || text == "off") return false;
  bad_value(key, text);
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return {buf, ptr};
}

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

struct KeyDoc {
  const char* key;
  const char* help;
};

constexpr KeyDoc kKeyDocs[] = {
    {"input", "directory of PNG frames or a GIF file"},
    {"output", "analyze: output directory; synthesize: GIF path"},
    {"metric", "frame distance: ssd | chebyshev | wavelet"},
    {"taps", "dynamics filter length: 0 (off) | 2 | 4"},
    {"sigma_multiple", "sigma = mean positive distance * this"},
    {"normalize", "stretch intensities between pooled luma percentiles"},
    {"pct_low", "lower luma percentile for normalization"},
    {"pct_high", "upper luma percentile for normalization"},
    {"mode", "synthesis mode: loop | random | cluster"},
    {"length", "frames to emit in random and cluster modes"},
    {"start", "first frame for random and cluster modes (auto = first analysable)"},
    {"transition", "cut smoothing: cut | crossfade | interpolate"},
    {"steps", "blend frames inserted per cut"},
    {"seed", "random seed for sampling and k-means"},
    {"prune", "fraction of frames dropped at each end before loop search"},
    {"min_loop", "minimum loop length in frames (auto = max(8, n/10))"},
    {"k", "cluster count 1..10 or auto"},
    {"loop_forever", "mark the GIF to repeat forever"},
    {"cache_dir", "analysis cache directory (empty = $VTEX_CACHE_DIR or ~/.cache/vtex)"},
};

}  // namespace

const std::vector<std::string>& PipelineConfig::keys() {
  static const std::vector<std::string> all = [] {
    std::vector<std::string> v;
    for (const auto& d : kKeyDocs) v.emplace_back(d.key);
    return v;
  }();
  return all;
}

std::string_view PipelineConfig::describe(std::string_view key) {
  for (const auto& d : kKeyDocs) {
    if (key == d.key) return d.help;
  }
  return {};
}

void PipelineConfig::set(std::string_view key, std::string_view raw) {
  const std::string_view value = trim(raw);
  if (key == "input") {
    input = value;
  } else if (key == "output") {
    output = value;
  } else if (key == "metric") {
    const auto m = parse_metric(value);
    if (!m) bad_value(key, value);
    metric = *m;
  } else if (key == "taps") {
    taps = parse_number<int>(key, value);
  } else if (key == "sigma_multiple") {
    sigma_multiple = parse_number<double>(key, value);
  } else if (key == "normalize") {
    normalize = parse_bool(key, value);
  } else if (key == "pct_low") {
    pct_low = parse_number<double>(key, value);
  } else if (key == "pct_high") {
    pct_high = parse_number<double>(key, value);
  } else if (key == "mode") {
    if (value == "loop") mode = SynthesisMode::Loop;
    else if (value == "random") mode = SynthesisMode::Random;
    else if (value == "cluster") mode = SynthesisMode::Cluster;
    else bad_value(key, value);
  } else if (key == "length") {
    length = parse_number<std::int64_t>(key, value);
  } else if (key == "start") {
    start = value == "auto" ? -1 : parse_number<std::int64_t>(key, value);
  } else if (key == "transition") {
    const auto t = parse_transition_mode(value);
    if (!t) bad_value(key, value);
    transition = *t;
  } else if (key == "steps") {
    steps = parse_number<int>(key, value);
  } else if (key == "seed") {
    seed = parse_number<std::uint64_t>(key, value);
  } else if (key == "prune") {
    prune = parse_number<double>(key, value);
  } else if (key == "min_loop") {
    min_loop = value == "auto" ? 0 : parse_number<std::int64_t>(key, value);
  } else if (key == "k") {
    k = value == "auto" ? 0 : parse_number<int>(key, value);
  } else if (key == "loop_forever") {
    loop_forever = parse_bool(key, value);
  } else if (key == "cache_dir") {
    cache_dir = value;
  } else {
    fail(ErrorCode::InvalidArgument, "unknown config key '" + std::string(key) + "'");
  }
}

std::string PipelineConfig::get(std::string_view key) const {
  if (key == "input") return input;
  if (key == "output") return output;
  if (key == "metric") return std::string(metric_name(metric));
  if (key == "taps") return std::to_string(taps);
  if (key == "sigma_multiple") return format_double(sigma_multiple);
  if (key == "normalize") return normalize ? "true" : "false";
  if (key == "pct_low") return format_double(pct_low);
  if (key == "pct_high") return format_double(pct_high);
  if (key == "mode") return std::string(synthesis_mode_name(mode));
  if (key == "length") return std::to_string(length);
  if (key == "start") return start < 0 ? "auto" : std::to_string(start);
  if (key == "transition") return std::string(transition_mode_name(transition));
  if (key == "steps") return std::to_string(steps);
  if (key == "seed") return std::to_string(seed);
  if (key == "prune") return format_double(prune);
  if (key == "min_loop") return min_loop == 0 ? "auto" : std::to_string(min_loop);
  if (key == "k") return k == 0 ? "auto" : std::to_string(k);
  if (key == "loop_forever") return loop_forever ? "true" : "false";
  if (key == "cache_dir") return cache_dir;
  fail(ErrorCode::InvalidArgument, "unknown config key '" + std::string(key) + "'");
}

void PipelineConfig::validate() const {
  auto check = [](bool ok, const std::string& what) {
    if (!ok) fail(ErrorCode::InvalidArgument, what);
  };
  check(taps == 0 || taps == 2 || taps == 4, "taps must be 0, 2 or 4");
  check(sigma_multiple > 0.0 && std::isfinite(sigma_multiple),
        "sigma_multiple must be positive");
  check(pct_low >= 0.0 && pct_low < pct_high && pct_high <= 1.0,
        "percentiles must satisfy 0 <= pct_low < pct_high <= 1");
  check(length >= 1, "length must be >= 1");
  check(start >= -1, "start must be a frame number or auto");
  check(transition == TransitionMode::Cut || steps >= 1,
        "steps must be >= 1 unless transition is cut");
  check(steps >= 0, "steps must be >= 0");
  check(prune >= 0.0 && prune < 0.5, "prune must lie in [0, 0.5)");
  check(min_loop >= 0, "min_loop must be >= 0");
  check(k >= 0 && k <= kMaxClusters, "k must be auto or 1..10");
}

std::string PipelineConfig::to_text() const {
  std::string out;
  for (const auto& key : keys()) {
    out += key;
    out += " = ";
    out += get(key);
    out += '\n';
  }
  return out;
}

namespace {

void apply_text(PipelineConfig& cfg, std::string_view text, const std::string& origin) {
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string_view l = trim(line);
    if (l.empty() || l.front() == '#') continue;
    const auto eq = l.find('=');
    if (eq == std::string_view::npos) {
      fail(ErrorCode::InvalidArgument,
           origin + ":" + std::to_string(lineno) + ": expected key = value");
    }
    cfg.set(trim(l.substr(0, eq)), l.substr(eq + 1));
  }
}

}  // namespace

PipelineConfig PipelineConfig::from_text(std::string_view text) {
  PipelineConfig cfg;
  apply_text(cfg, text, "config");
  return cfg;
}

void PipelineConfig::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::trunc);
  if (!out) fail(ErrorCode::IoFailure, "cannot write " + path.string());
  out << to_text();
}

void PipelineConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::MissingInput, "config file not found: " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  apply_text(*this, ss.str(), path.string());
}

}  // namespace vtex
