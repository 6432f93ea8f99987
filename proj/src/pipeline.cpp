#include "vtex/pipeline.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>

#include "vtex/error.hpp"
#include "vtex/frame_io.hpp"
#include "vtex/synthesis.hpp"
#include "vtex/transitions.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace vtex {

namespace {

// Prefixes any module error with the pipeline stage it came from.
template <typename F>
auto stage(std::string_view name, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    throw Error(e.code(), std::string(name) + ": " + e.what());
  }
}

void require_input(const PipelineConfig& cfg) {
  if (cfg.input.empty()) fail(ErrorCode::InvalidArgument, "no input given");
  if (cfg.output.empty()) fail(ErrorCode::InvalidArgument, "no output given");
}

KSelection cluster_frames(const FrameSequence& frames, const PipelineConfig& cfg) {
  const auto descs = descriptors(frames);
  const int n = static_cast<int>(descs.size());
  if (cfg.k > 0) {
    KSelection sel;
    sel.clustering = kmeans(std::span<const WaveletDescriptor>(descs), cfg.k, cfg.seed);
    sel.chosen_k = cfg.k;
    KScore s;
    s.k = cfg.k;
    s.intraclass = sel.clustering.inertia;
    s.interclass = 0.0;
    const auto& cs = sel.clustering.centroids;
    std::size_t pairs = 0;
    for (std::size_t a = 0; a < cs.size(); ++a)
      for (std::size_t b = a + 1; b < cs.size(); ++b, ++pairs)
        s.interclass += std::sqrt(squared_distance(cs[a], cs[b]));
    if (pairs) s.interclass /= static_cast<double>(pairs);
    s.score = s.interclass / (s.intraclass + kSelectEpsilon);
    sel.report.push_back(s);
    return sel;
  }
  // Cluster sequencing excludes two clusters per step, so it needs k >= 3.
  const int k_min = cfg.mode == SynthesisMode::Cluster ? 3 : kMinClusters;
  const int k_max = std::min(kMaxClusters, n);
  return select_k(std::span<const WaveletDescriptor>(descs), k_min, k_max, cfg.seed);
}

std::uint32_t heatmap_scale(const Matrix& m) {
  const auto side = std::max<std::size_t>(1, std::max(m.rows(), m.cols()));
  return static_cast<std::uint32_t>(std::max<std::size_t>(1, 256 / side));
}

void write_json(const json& doc, const fs::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) fail(ErrorCode::IoFailure, "cannot write " + path.string());
  out << doc.dump(2) << '\n';
  if (!out) fail(ErrorCode::IoFailure, "write failed: " + path.string());
}

void ensure_directory(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    fail(ErrorCode::IoFailure, "cannot create directory " + dir.string());
  }
}

struct Derived {
  DistanceMatrix filtered;
  DistanceMatrix shifted;
  TransitionModel model;
};

Derived derive(const DistanceMatrix& raw, const PipelineConfig& cfg) {
  Derived d;
  d.filtered = cfg.taps == 0 ? raw : stage("filter", [&] { return preserve_dynamics(raw, cfg.taps); });
  d.shifted = stage("shift", [&] { return future_shift(d.filtered); });
  d.model = stage("probability", [&] { return probability_matrix(d.shifted, cfg.sigma_multiple); });
  return d;
}

void write_heatmaps(const DistanceMatrix& raw, const Derived& d, const fs::path& dir) {
  stage("heatmap", [&] {
    render_heatmap(raw.values, dir / "D_raw.png", heatmap_scale(raw.values));
    render_heatmap(d.filtered.values, dir / "D_filtered.png", heatmap_scale(d.filtered.values));
    render_heatmap(d.model.probabilities, dir / "P.png", heatmap_scale(d.model.probabilities));
  });
}

json clusters_json(const KSelection& sel) {
  json report = json::array();
  for (const auto& s : sel.report) {
    report.push_back({{"k", s.k},
                      {"intraclass", s.intraclass},
                      {"interclass", s.interclass},
                      {"score", s.score}});
  }
  return {{"seed", sel.clustering.seed},
          {"chosen_k", sel.chosen_k},
          {"inertia", sel.clustering.inertia},
          {"iterations", sel.clustering.iterations},
          {"assignments", sel.clustering.assignments},
          {"report", report}};
}

}  // namespace

AnalysisResult analyze(const PipelineConfig& cfg) {
  stage("config", [&] { cfg.validate(); });
  require_input(cfg);

  FrameSequence frames = stage("load", [&] { return load_frames(cfg.input); });
  std::optional<IntensityBounds> bounds;
  if (cfg.normalize) {
    bounds = stage("normalize", [&] { return compute_bounds(frames, cfg.pct_low, cfg.pct_high); });
    frames = normalize_intensity(frames, *bounds);
  }

  std::optional<KSelection> clusters;
  if (cfg.metric == MetricKind::WaveletCluster || cfg.mode == SynthesisMode::Cluster || cfg.k > 0) {
    clusters = stage("cluster", [&] { return cluster_frames(frames, cfg); });
  }

  const std::string key = stage("cache", [&] { return analysis_cache_key(cfg); });
  const fs::path cached = cache_root(cfg) / key / "raw.bin";

  std::optional<DistanceMatrix> raw;
  bool from_cache = false;
  if (fs::exists(cached)) {
    try {
      DistanceMatrix m = load_matrix(cached);
      if (m.values.rows() == frames.size() && m.values.cols() == frames.size()) {
        raw = std::move(m);
        from_cache = true;
      }
    } catch (const Error&) {
      // Unreadable entry: recompute and overwrite.
    }
  }
  if (!raw) {
    raw = stage("distance", [&] {
      return distance_matrix(frames, cfg.metric, clusters ? &clusters->clustering : nullptr);
    });
    try {
      ensure_directory(cached.parent_path());
      save_matrix(*raw, cached);
    } catch (const Error&) {
      // The cache is an optimisation; a read-only location is not fatal.
    }
  }

  Derived d = derive(*raw, cfg);
  return AnalysisResult{std::move(frames), bounds, std::move(clusters), std::move(*raw),
                        std::move(d.filtered), std::move(d.shifted), std::move(d.model),
                        key, from_cache};
}

void run_analyze(const PipelineConfig& cfg) {
  const AnalysisResult r = analyze(cfg);
  const fs::path dir = cfg.output;
  stage("output", [&] { ensure_directory(dir); });
  write_heatmaps(r.raw, Derived{r.filtered, r.shifted, r.model}, dir);

  json summary = {
      {"input", cfg.input},
      {"frames", r.frames.size()},
      {"width", r.frames.width()},
      {"height", r.frames.height()},
      {"channels", r.frames.channels()},
      {"frame_delay_ms", r.frames.frame_delay_ms()},
      {"metric", std::string(metric_name(cfg.metric))},
      {"taps", cfg.taps},
      {"sigma_multiple", r.model.sigma_multiple},
      {"sigma", r.model.sigma},
      {"crop_offset", r.filtered.crop_offset},
      {"analysis_frames", r.filtered.values.rows()},
      {"chosen_k", r.clusters ? json(r.clusters->chosen_k) : json(nullptr)},
      {"cache_key", r.cache_key},
  };
  if (r.bounds) {
    summary["normalization"] = {{"v_min", r.bounds->v_min()},
                                {"v_max", r.bounds->v_max()},
                                {"pct_low", r.bounds->low_pct()},
                                {"pct_high", r.bounds->high_pct()}};
  } else {
    summary["normalization"] = nullptr;
  }
  stage("output", [&] {
    write_json(summary, dir / "summary.json");
    if (r.clusters) write_json(clusters_json(*r.clusters), dir / "clusters.json");
  });
}

fs::path sequence_json_path(const fs::path& gif_path) {
  return fs::path(gif_path).replace_extension(".json");
}

void run_synthesize(const PipelineConfig& cfg) {
  const AnalysisResult r = analyze(cfg);
  const std::size_t crop = r.shifted.crop_offset;
  const std::size_t analysis_frames = r.shifted.values.cols();

  FrameIndexSequence seq;
  std::size_t offset = crop;
  bool wrap = false;
  std::optional<Loop> loop;
  switch (cfg.mode) {
    case SynthesisMode::Loop: {
      const std::size_t min_len = cfg.min_loop > 0 ? static_cast<std::size_t>(cfg.min_loop)
                                                   : default_min_loop_length(analysis_frames);
      loop = stage("loop", [&] { return find_loop(r.shifted, min_len, cfg.prune); });
      seq = loop_sequence(*loop);
      wrap = true;
      break;
    }
    case SynthesisMode::Random: {
      std::size_t start = 0;
      if (cfg.start >= 0) {
        if (static_cast<std::size_t>(cfg.start) < crop) {
          fail(ErrorCode::IndexOutOfRange,
               "random: start frame " + std::to_string(cfg.start) + " was cropped by the dynamics filter");
        }
        start = static_cast<std::size_t>(cfg.start) - crop;
      }
      Rng rng(cfg.seed);
      seq = stage("random", [&] {
        return random_playback(r.model, start, static_cast<std::size_t>(cfg.length), rng);
      });
      break;
    }
    case SynthesisMode::Cluster: {
      if (!r.clusters) fail(ErrorCode::MissingClustering, "cluster: no clustering available");
      const std::size_t start = cfg.start >= 0 ? static_cast<std::size_t>(cfg.start) : 0;
      seq = stage("cluster", [&] {
        return cluster_sequence(r.clusters->clustering, r.raw, start,
                                static_cast<std::size_t>(cfg.length));
      });
      offset = 0;
      break;
    }
  }

  std::vector<std::size_t> original(seq.indices.size());
  std::transform(seq.indices.begin(), seq.indices.end(), original.begin(),
                 [offset](std::size_t i) { return i + offset; });
  const FrameIndexSequence played = annotate(std::move(original));

  const TransitionPlan plan = cfg.transition == TransitionMode::Cut
                                  ? TransitionPlan::cut()
                                  : TransitionPlan(cfg.transition, cfg.steps);
  const FrameSequence rendered = stage("render", [&] { return render(played, r.frames, plan, wrap); });

  const fs::path gif = cfg.output;
  if (gif.has_parent_path()) stage("output", [&] { ensure_directory(gif.parent_path()); });
  stage("encode", [&] { write_animation(rendered, gif, cfg.loop_forever); });

  json transitions = json::array();
  for (const auto& t : played.transitions) {
    transitions.push_back(
        {{"position", t.position}, {"kind", t.kind == TransitionKind::Cut ? "cut" : "consecutive"}});
  }
  json doc = {
      {"mode", std::string(synthesis_mode_name(cfg.mode))},
      {"seed", cfg.seed},
      {"metric", std::string(metric_name(cfg.metric))},
      {"taps", cfg.taps},
      {"sigma", r.model.sigma},
      {"crop_offset", crop},
      {"index_offset", offset},
      {"indices", played.indices},
      {"transitions", transitions},
      {"cuts", played.cut_count()},
      {"transition", {{"mode", std::string(transition_mode_name(plan.mode()))}, {"steps", plan.steps()}}},
      {"rendered_frames", rendered.size()},
      {"frame_delay_ms", rendered.frame_delay_ms()},
  };
  if (loop) {
    doc["loop"] = {{"start", loop->start + offset},
                   {"end", loop->end + offset},
                   {"length", loop->length()},
                   {"cut_cost", loop->cut_cost}};
  } else {
    doc["loop"] = nullptr;
  }
  if (r.clusters) doc["chosen_k"] = r.clusters->chosen_k;
  stage("output", [&] { write_json(doc, sequence_json_path(gif)); });
}

void run_visualize(const PipelineConfig& cfg) {
  stage("config", [&] { cfg.validate(); });
  require_input(cfg);
  const std::string key = stage("cache", [&] { return analysis_cache_key(cfg); });
  const fs::path cached = cache_root(cfg) / key / "raw.bin";
  if (!fs::exists(cached)) {
    fail(ErrorCode::CacheMiss, "visualize: no cached analysis for " + cfg.input +
                                   " (run analyze first; looked in " + cached.string() + ")");
  }
  const DistanceMatrix raw = stage("cache", [&] { return load_matrix(cached); });
  const Derived d = derive(raw, cfg);
  const fs::path dir = cfg.output;
  stage("output", [&] { ensure_directory(dir); });
  write_heatmaps(raw, d, dir);
}

}  // namespace vtex
