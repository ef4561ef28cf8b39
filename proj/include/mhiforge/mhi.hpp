#pragma once

#include "mhiforge/buffers.hpp"
#include "mhiforge/frame_stream.hpp"
#include "mhiforge/image.hpp"

namespace mhiforge {

// Recency weights each consecutive-frame difference by t/N (t = 1-based
// index of the later frame). Uniform (W = 1) exists for the symmetry tests
// where exact reversal identities only hold without the recency ramp.
enum class WeightMode { Recency, Uniform };

struct MotionHistoryImage {
  int width = 0;
  int height = 0;
  int source_frame_count = 0;
  AccumBuffer accum;  // row-major, width*height, non-negative

  double max_value() const;
};

// Single streaming pass: holds the previous frame, the current frame and
// one accumulation grid, independent of stream length.
//
// The weighted sum is evaluated as (sum of |diff| * t) / N. The per-step
// terms are integer-valued in double and sum exactly, so the only rounding
// is the final division; the per-pixel step order is pinned ascending in t
// and the pixel loop may be split across threads without changing a single
// bit of the result.
MotionHistoryImage compute_mhi(FrameStream& stream,
                               WeightMode mode = WeightMode::Recency);

// Max-normalizes to 8-bit: round(255 * accum / max(accum)), all zeros when
// there is no motion.
Frame quantize_mhi(const MotionHistoryImage& mhi);

}  // namespace mhiforge
