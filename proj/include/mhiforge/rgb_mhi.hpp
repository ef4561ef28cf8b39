#pragma once

#include <array>

#include "mhiforge/mhi.hpp"

namespace mhiforge {

// 1-based inclusive range of frame indices.
struct FrameRange {
  int first = 0;
  int last = 0;

  int length() const noexcept { return last - first + 1; }
  bool operator==(const FrameRange&) const = default;
};

// Contiguous thirds of [1..n], remainder frames assigned to the earliest
// parts first. Each part needs >= 2 frames, so n >= 6.
std::array<FrameRange, 3> split_thirds(int frame_count);

// Tri-temporal motion history: channel_accums[0] (blue) holds the first
// third's history, [1] (green) the middle, [2] (red) the last. Each channel
// is exactly compute_mhi of its sub-stream with local frame re-indexing.
struct RgbMhiImage {
  int width = 0;
  int height = 0;
  int source_frame_count = 0;
  std::array<FrameRange, 3> part_bounds;
  std::array<AccumBuffer, 3> channel_accums;

  double max_value() const;  // over all three channels
  double total_mass() const;
};

RgbMhiImage compute_rgb_mhi(FrameStream& stream,
                            WeightMode mode = WeightMode::Recency);

// Joint normalization: every channel is scaled by 255 / max over all
// channels, preserving relative motion magnitude across thirds.
Frame quantize_rgb_mhi(const RgbMhiImage& img);

}  // namespace mhiforge
