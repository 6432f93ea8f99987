#include "vtex/vtex.h"

#include <cstring>
#include <exception>
#include <new>
#include <string>
#include <utility>

#include "vtex/analysis.hpp"
#include "vtex/config.hpp"
#include "vtex/error.hpp"
#include "vtex/frame_io.hpp"
#include "vtex/pipeline.hpp"
#include "vtex/preprocess.hpp"
#include "vtex/synthesis.hpp"

struct vtex_sequence {
  vtex::FrameSequence seq;
};

struct vtex_matrix {
  vtex::DistanceMatrix d;
  bool probability = false;
};

struct vtex_config {
  vtex::PipelineConfig cfg;
};

namespace {

thread_local std::string g_last_error;

vtex_status record(vtex_status s, std::string msg) {
  g_last_error = std::move(msg);
  return s;
}

// Runs f, mapping exceptions onto status codes.
template <typename F>
vtex_status guarded(F&& f) noexcept {
  try {
    f();
    return VTEX_OK;
  } catch (const vtex::Error& e) {
    return record(static_cast<vtex_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return record(VTEX_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return record(VTEX_ERR_INTERNAL, e.what());
  } catch (...) {
    return record(VTEX_ERR_INTERNAL, "unknown exception");
  }
}

void need(const void* p, const char* what) {
  if (!p) vtex::fail(vtex::ErrorCode::InvalidArgument, std::string(what) + " is null");
}

}  // namespace

extern "C" {

const char* vtex_version(void) { return "0.1.0"; }

const char* vtex_last_error(void) { return g_last_error.c_str(); }

const char* vtex_status_name(vtex_status status) {
  if (status == VTEX_OK) return "ok";
  if (status < VTEX_ERR_INVALID_ARGUMENT || status > VTEX_ERR_INTERNAL) return "unknown";
  return vtex::error_name(static_cast<vtex::ErrorCode>(status)).data();
}

vtex_status vtex_sequence_load(const char* path, vtex_sequence** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    *out = new vtex_sequence{vtex::load_frames(path)};
  });
}

vtex_status vtex_sequence_from_pixels(const uint8_t* samples, size_t frame_count,
                                      uint32_t width, uint32_t height, uint32_t channels,
                                      uint32_t frame_delay_ms, vtex_sequence** out) {
  return guarded([&] {
    need(samples, "samples");
    need(out, "out");
    if (channels != 1 && channels != 3) {
      vtex::fail(vtex::ErrorCode::InvalidArgument, "channels must be 1 or 3");
    }
    const std::size_t per = std::size_t{width} * height * channels;
    std::vector<vtex::Frame> frames;
    frames.reserve(frame_count);
    for (std::size_t i = 0; i < frame_count; ++i) {
      const uint8_t* p = samples + i * per;
      frames.emplace_back(width, height, channels, std::vector<std::uint8_t>(p, p + per));
    }
    *out = new vtex_sequence{vtex::FrameSequence(std::move(frames), frame_delay_ms, "memory")};
  });
}

vtex_status vtex_sequence_info_get(const vtex_sequence* seq, vtex_sequence_info* out) {
  return guarded([&] {
    need(seq, "seq");
    need(out, "out");
    out->frame_count = seq->seq.size();
    out->width = seq->seq.width();
    out->height = seq->seq.height();
    out->channels = seq->seq.channels();
    out->frame_delay_ms = seq->seq.frame_delay_ms();
  });
}

vtex_status vtex_sequence_copy_frame(const vtex_sequence* seq, size_t index, uint8_t* buffer,
                                     size_t capacity) {
  return guarded([&] {
    need(seq, "seq");
    need(buffer, "buffer");
    if (index >= seq->seq.size()) {
      vtex::fail(vtex::ErrorCode::IndexOutOfRange, "frame index out of range");
    }
    const auto s = seq->seq[index].samples();
    if (capacity < s.size()) vtex::fail(vtex::ErrorCode::InvalidArgument, "buffer too small");
    std::memcpy(buffer, s.data(), s.size());
  });
}

vtex_status vtex_sequence_write_gif(const vtex_sequence* seq, const char* path,
                                    int loop_forever) {
  return guarded([&] {
    need(seq, "seq");
    need(path, "path");
    vtex::write_animation(seq->seq, path, loop_forever != 0);
  });
}

vtex_status vtex_sequence_normalize(const vtex_sequence* seq, double low_pct, double high_pct,
                                    vtex_sequence** out) {
  return guarded([&] {
    need(seq, "seq");
    need(out, "out");
    const auto b = vtex::compute_bounds(seq->seq, low_pct, high_pct);
    *out = new vtex_sequence{vtex::normalize_intensity(seq->seq, b)};
  });
}

void vtex_sequence_free(vtex_sequence* seq) { delete seq; }

vtex_status vtex_animation_probe(const char* path, vtex_animation_info* out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    const auto info = vtex::probe_animation(path);
    out->frame_count = info.frame_count;
    out->width = info.width;
    out->height = info.height;
    out->channels = info.channels;
    out->frame_delay_ms = info.frame_delay_ms;
    out->loop_forever = info.loop_forever ? 1 : 0;
  });
}

vtex_status vtex_matrix_create(size_t rows, size_t cols, const double* values,
                               vtex_matrix** out) {
  return guarded([&] {
    need(values, "values");
    need(out, "out");
    if (rows == 0 || cols == 0) vtex::fail(vtex::ErrorCode::InvalidArgument, "empty matrix");
    if (rows != cols && rows + 1 != cols) {
      vtex::fail(vtex::ErrorCode::DimensionMismatch, "matrix must be n x n or (n-1) x n");
    }
    const auto stage = rows == cols ? vtex::Stage::Raw : vtex::Stage::Shifted;
    *out = new vtex_matrix{
        {vtex::Matrix(rows, cols, std::vector<double>(values, values + rows * cols)), "user",
         stage, 0},
        false};
  });
}

vtex_status vtex_matrix_shape(const vtex_matrix* m, size_t* rows, size_t* cols) {
  return guarded([&] {
    need(m, "matrix");
    if (rows) *rows = m->d.values.rows();
    if (cols) *cols = m->d.values.cols();
  });
}

vtex_status vtex_matrix_copy_values(const vtex_matrix* m, double* buffer, size_t capacity) {
  return guarded([&] {
    need(m, "matrix");
    need(buffer, "buffer");
    const auto v = m->d.values.values();
    if (capacity < v.size()) vtex::fail(vtex::ErrorCode::InvalidArgument, "buffer too small");
    std::memcpy(buffer, v.data(), v.size() * sizeof(double));
  });
}

vtex_status vtex_matrix_crop_offset(const vtex_matrix* m, size_t* out) {
  return guarded([&] {
    need(m, "matrix");
    need(out, "out");
    *out = m->d.crop_offset;
  });
}

vtex_status vtex_matrix_render_heatmap(const vtex_matrix* m, const char* path) {
  return guarded([&] {
    need(m, "matrix");
    need(path, "path");
    vtex::render_heatmap(m->d.values, path);
  });
}

void vtex_matrix_free(vtex_matrix* m) { delete m; }

vtex_status vtex_distance_matrix(const vtex_sequence* seq, vtex_metric metric,
                                 vtex_matrix** out) {
  return guarded([&] {
    need(seq, "seq");
    need(out, "out");
    vtex::MetricKind kind;
    switch (metric) {
      case VTEX_METRIC_SSD: kind = vtex::MetricKind::Ssd; break;
      case VTEX_METRIC_CHEBYSHEV: kind = vtex::MetricKind::Chebyshev; break;
      default: vtex::fail(vtex::ErrorCode::InvalidArgument, "unknown metric");
    }
    *out = new vtex_matrix{vtex::distance_matrix(seq->seq, kind), false};
  });
}

vtex_status vtex_preserve_dynamics(const vtex_matrix* raw, int taps, vtex_matrix** out) {
  return guarded([&] {
    need(raw, "matrix");
    need(out, "out");
    *out = new vtex_matrix{vtex::preserve_dynamics(raw->d, taps), false};
  });
}

vtex_status vtex_future_shift(const vtex_matrix* d, vtex_matrix** out) {
  return guarded([&] {
    need(d, "matrix");
    need(out, "out");
    *out = new vtex_matrix{vtex::future_shift(d->d), false};
  });
}

vtex_status vtex_probability_matrix(const vtex_matrix* d, double sigma_multiple,
                                    vtex_matrix** out, double* sigma_out) {
  return guarded([&] {
    need(d, "matrix");
    need(out, "out");
    auto model = vtex::probability_matrix(d->d, sigma_multiple);
    if (sigma_out) *sigma_out = model.sigma;
    *out = new vtex_matrix{
        {std::move(model.probabilities), "probability", d->d.stage, d->d.crop_offset}, true};
  });
}

vtex_status vtex_find_loop(const vtex_matrix* shifted, size_t min_length, double prune_frac,
                           vtex_loop* out) {
  return guarded([&] {
    need(shifted, "matrix");
    need(out, "out");
    const auto loop = vtex::find_loop(shifted->d, min_length, prune_frac);
    out->start = loop.start;
    out->end = loop.end;
    out->length = loop.length();
    out->cut_cost = loop.cut_cost;
  });
}

vtex_status vtex_config_create(vtex_config** out) {
  return guarded([&] {
    need(out, "out");
    *out = new vtex_config{};
  });
}

void vtex_config_free(vtex_config* cfg) { delete cfg; }

vtex_status vtex_config_set(vtex_config* cfg, const char* key, const char* value) {
  return guarded([&] {
    need(cfg, "config");
    need(key, "key");
    need(value, "value");
    cfg->cfg.set(key, value);
  });
}

vtex_status vtex_config_get(const vtex_config* cfg, const char* key, char* buffer,
                            size_t capacity, size_t* required) {
  return guarded([&] {
    need(cfg, "config");
    need(key, "key");
    const std::string v = cfg->cfg.get(key);
    if (required) *required = v.size() + 1;
    if (!buffer) return;
    if (capacity < v.size() + 1) vtex::fail(vtex::ErrorCode::InvalidArgument, "buffer too small");
    std::memcpy(buffer, v.c_str(), v.size() + 1);
  });
}

vtex_status vtex_config_load_file(vtex_config* cfg, const char* path) {
  return guarded([&] {
    need(cfg, "config");
    need(path, "path");
    cfg->cfg.load(path);
  });
}

vtex_status vtex_config_save_file(const vtex_config* cfg, const char* path) {
  return guarded([&] {
    need(cfg, "config");
    need(path, "path");
    cfg->cfg.save(path);
  });
}

size_t vtex_config_key_count(void) { return vtex::PipelineConfig::keys().size(); }

const char* vtex_config_key_name(size_t index) {
  const auto& keys = vtex::PipelineConfig::keys();
  return index < keys.size() ? keys[index].c_str() : nullptr;
}

const char* vtex_config_key_help(size_t index) {
  const auto& keys = vtex::PipelineConfig::keys();
  if (index >= keys.size()) return nullptr;
  // describe() returns views into static string literals.
  return vtex::PipelineConfig::describe(keys[index]).data();
}

vtex_status vtex_run_analyze(const vtex_config* cfg) {
  return guarded([&] {
    need(cfg, "config");
    vtex::run_analyze(cfg->cfg);
  });
}

vtex_status vtex_run_synthesize(const vtex_config* cfg) {
  return guarded([&] {
    need(cfg, "config");
    vtex::run_synthesize(cfg->cfg);
  });
}

vtex_status vtex_run_visualize(const vtex_config* cfg) {
  return guarded([&] {
    need(cfg, "config");
    vtex::run_visualize(cfg->cfg);
  });
}

}  // extern "C"
