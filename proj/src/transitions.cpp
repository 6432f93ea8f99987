#include "vtex/transitions.hpp"

#include <string>

#include "vtex/error.hpp"

namespace vtex {

std::string_view transition_mode_name(TransitionMode m) noexcept {
  switch (m) {
    case TransitionMode::Cut: return "cut";
    case TransitionMode::Crossfade: return "crossfade";
    case TransitionMode::Interpolate: return "interpolate";
  }
  return "unknown";
}

std::optional<TransitionMode> parse_transition_mode(std::string_view name) noexcept {
  if (name == "cut") return TransitionMode::Cut;
  if (name == "crossfade") return TransitionMode::Crossfade;
  if (name == "interpolate") return TransitionMode::Interpolate;
  return std::nullopt;
}

TransitionPlan::TransitionPlan(TransitionMode mode, int steps) : mode_(mode), steps_(steps) {
  if (mode == TransitionMode::Cut) {
    steps_ = 0;
  } else if (steps < 1) {
    fail(ErrorCode::InvalidArgument, std::string(transition_mode_name(mode)) +
                                         " needs at least one step");
  }
}

namespace {

void check_pair(const Frame& a, const Frame& b) {
  if (!a.same_shape(b)) fail(ErrorCode::DimensionMismatch, "blend frames differ in shape");
}

}  // namespace

Frame blend(const Frame& a, const Frame& b, double alpha) {
  check_pair(a, b);
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    fail(ErrorCode::InvalidArgument, "alpha must lie in [0, 1]");
  }
  Frame out = a;
  auto dst = out.samples();
  const auto sb = b.samples();
  for (std::size_t i = 0; i < dst.size(); ++i) {
    dst[i] = round_to_sample((1.0 - alpha) * dst[i] + alpha * sb[i]);
  }
  return out;
}

std::vector<Frame> intermediate_frames(const Frame& a, const Frame& b, int n) {
  check_pair(a, b);
  if (n < 1) fail(ErrorCode::InvalidN, "intermediate frame count must be >= 1");
  const auto q = a.samples();
  const auto p = b.samples();
  std::vector<Frame> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) {
    const double w = 1.0 - static_cast<double>(i) / n;
    Frame f = b;
    auto dst = f.samples();
    for (std::size_t s = 0; s < dst.size(); ++s) {
      dst[s] = round_to_sample(p[s] + w * (static_cast<double>(q[s]) - p[s]));
    }
    out.push_back(std::move(f));
  }
  return out;
}

namespace {

void append_transition(std::vector<Frame>& out, const Frame& from, const Frame& to,
                       const TransitionPlan& plan) {
  const int steps = plan.steps();
  if (plan.mode() == TransitionMode::Crossfade) {
    for (int k = 1; k <= steps; ++k) out.push_back(blend(from, to, double(k) / (steps + 1)));
  } else if (plan.mode() == TransitionMode::Interpolate) {
    for (auto& f : intermediate_frames(from, to, steps)) out.push_back(std::move(f));
  }
}

}  // namespace

FrameSequence render(const FrameIndexSequence& seq, const FrameSequence& frames,
                     const TransitionPlan& plan, bool wrap) {
  if (seq.indices.empty()) fail(ErrorCode::EmptyInput, "nothing to render");
  for (std::size_t idx : seq.indices) {
    if (idx >= frames.size()) {
      fail(ErrorCode::IndexOutOfRange, "frame index " + std::to_string(idx) +
                                           " >= " + std::to_string(frames.size()));
    }
  }
  std::vector<Frame> out;
  out.reserve(seq.indices.size() + static_cast<std::size_t>(plan.steps()) * (seq.cut_count() + 1));
  for (std::size_t t = 0; t < seq.indices.size(); ++t) {
    out.push_back(frames[seq.indices[t]]);
    if (t + 1 < seq.indices.size() && seq.indices[t + 1] != seq.indices[t] + 1) {
      append_transition(out, frames[seq.indices[t]], frames[seq.indices[t + 1]], plan);
    }
  }
  if (wrap && seq.indices.front() != seq.indices.back() + 1) {
    append_transition(out, frames[seq.indices.back()], frames[seq.indices.front()], plan);
  }
  return FrameSequence(std::move(out), frames.frame_delay_ms(), frames.source_label());
}

}  // namespace vtex
