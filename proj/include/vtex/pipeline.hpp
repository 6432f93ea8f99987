#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "vtex/analysis.hpp"
#include "vtex/config.hpp"
#include "vtex/frame.hpp"
#include "vtex/preprocess.hpp"
#include "vtex/wavelet.hpp"

namespace vtex {

// Binary matrix files used by the analysis cache.
void save_matrix(const DistanceMatrix& m, const std::filesystem::path& path);
DistanceMatrix load_matrix(const std::filesystem::path& path);

/// Cache directory: config value, else $VTEX_CACHE_DIR, else
/// $XDG_CACHE_HOME/vtex or ~/.cache/vtex.
std::filesystem::path cache_root(const PipelineConfig& cfg);

/// FNV-1a over the input bytes plus every analysis-relevant config field,
/// rendered as 16 hex digits.
std::string analysis_cache_key(const PipelineConfig& cfg);

struct AnalysisResult {
  FrameSequence frames;  // after optional normalisation
  std::optional<IntensityBounds> bounds;
  std::optional<KSelection> clusters;
  DistanceMatrix raw;
  DistanceMatrix filtered;  // == raw when taps == 0
  DistanceMatrix shifted;
  TransitionModel model;
  std::string cache_key;
  bool from_cache = false;
};

/// load -> normalise -> (cluster) -> distances -> filter -> shift -> P.
/// Raw distances are read from / written to the cache.
AnalysisResult analyze(const PipelineConfig& cfg);

/// Writes D_raw.png, D_filtered.png, P.png, summary.json and, when a
/// clustering was computed, clusters.json into cfg.output (a directory).
void run_analyze(const PipelineConfig& cfg);

/// Writes the GIF at cfg.output and the index sequence as JSON next to it
/// (same stem, .json extension).
void run_synthesize(const PipelineConfig& cfg);

/// Re-renders the heatmaps into cfg.output from cached matrices only.
/// Errors: CacheMiss.
void run_visualize(const PipelineConfig& cfg);

std::filesystem::path sequence_json_path(const std::filesystem::path& gif_path);

}  // namespace vtex
