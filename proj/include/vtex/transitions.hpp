#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "vtex/frame.hpp"
#include "vtex/synthesis.hpp"

namespace vtex {

enum class TransitionMode { Cut, Crossfade, Interpolate };

std::string_view transition_mode_name(TransitionMode m) noexcept;
std::optional<TransitionMode> parse_transition_mode(std::string_view name) noexcept;

inline constexpr int kDefaultBlendSteps = 4;

/// How cuts are smoothed. Cut forces zero steps; the other modes need at
/// least one (InvalidArgument otherwise).
class TransitionPlan {
 public:
  TransitionPlan(TransitionMode mode, int steps);
  static TransitionPlan cut() { return {TransitionMode::Cut, 0}; }

  TransitionMode mode() const noexcept { return mode_; }
  int steps() const noexcept { return steps_; }

 private:
  TransitionMode mode_;
  int steps_;
};

/// round((1 - alpha) * a + alpha * b) per sample. Errors: DimensionMismatch.
Frame blend(const Frame& a, const Frame& b, double alpha);

/// Frames i = 1..n with value p + (1 - i/n)(q - p), q from `a` and p from
/// `b`; frame n equals `b`. Errors: DimensionMismatch, InvalidN.
std::vector<Frame> intermediate_frames(const Frame& a, const Frame& b, int n);

/// Expands an index sequence into pixels, inserting plan.steps() blended
/// frames at every cut. With `wrap`, the jump from the last index back to
/// the first is treated as one more cut and its blend frames are appended.
FrameSequence render(const FrameIndexSequence& seq, const FrameSequence& frames,
                     const TransitionPlan& plan, bool wrap = false);

}  // namespace vtex
