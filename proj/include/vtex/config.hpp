#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "vtex/analysis.hpp"
#include "vtex/preprocess.hpp"
#include "vtex/synthesis.hpp"
#include "vtex/transitions.hpp"

namespace vtex {

enum class SynthesisMode { Loop, Random, Cluster };

std::string_view synthesis_mode_name(SynthesisMode m) noexcept;

/// Every tunable of an analyze/synthesize run. Serialises to a `key = value`
/// document; set() and load() accept the same keys.
struct PipelineConfig {
  std::string input;
  std::string output;
  MetricKind metric = MetricKind::Ssd;
  int taps = 4;  // 0 disables the dynamics filter
  double sigma_multiple = kDefaultSigmaMultiple;
  bool normalize = false;
  double pct_low = kDefaultLowPercentile;
  double pct_high = kDefaultHighPercentile;
  SynthesisMode mode = SynthesisMode::Loop;
  std::int64_t length = 100;
  std::int64_t start = -1;  // original frame number; -1 = first analysable
  TransitionMode transition = TransitionMode::Crossfade;
  int steps = kDefaultBlendSteps;
  std::uint64_t seed = 0;
  double prune = kDefaultPruneFraction;
  std::int64_t min_loop = 0;  // 0 = max(8, n / 10)
  int k = 0;                  // 0 = automatic selection
  bool loop_forever = true;
  std::string cache_dir;      // empty = $VTEX_CACHE_DIR or the user cache

  /// Parses and stores one field. Errors: InvalidArgument (unknown key or
  /// malformed value).
  void set(std::string_view key, std::string_view value);
  std::string get(std::string_view key) const;

  /// Range checks across all fields. Errors: InvalidArgument.
  void validate() const;

  std::string to_text() const;
  static PipelineConfig from_text(std::string_view text);

  void save(const std::filesystem::path& path) const;
  /// Applies every key in the file on top of the current values.
  void load(const std::filesystem::path& path);

  static const std::vector<std::string>& keys();
  static std::string_view describe(std::string_view key);

  friend bool operator==(const PipelineConfig&, const PipelineConfig&) = default;
};

}  // namespace vtex
