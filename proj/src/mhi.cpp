#include "mhiforge/mhi.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "mhiforge/error.hpp"

namespace mhiforge {

double MotionHistoryImage::max_value() const {
  double m = 0.0;
  for (double v : accum) m = std::max(m, v);
  return m;
}

MotionHistoryImage compute_mhi(FrameStream& stream, WeightMode mode) {
  const int n = stream.frame_count();
  if (n < 2) {
    fail(Errc::InsufficientFrames,
         "need at least 2 frames, got " + std::to_string(n));
  }

  MotionHistoryImage mhi;
  mhi.width = stream.width();
  mhi.height = stream.height();
  mhi.source_frame_count = n;
  const long long npx = static_cast<long long>(mhi.width) * mhi.height;
  mhi.accum.assign(static_cast<std::size_t>(npx), 0.0);

  Frame prev, cur;
  if (!stream.next_gray(prev)) {
    fail(Errc::EmptyStream, "stream yielded no frames");
  }
  double* acc = mhi.accum.data();
  for (int t = 2; t <= n; ++t) {
    if (!stream.next_gray(cur)) {
      fail(Errc::InsufficientFrames,
           "stream ended early at frame " + std::to_string(t));
    }
    const std::uint8_t* a = prev.pixels.data();
    const std::uint8_t* b = cur.pixels.data();
    const double tw = mode == WeightMode::Recency ? static_cast<double>(t) : 1.0;
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < npx; ++i) {
      acc[i] += std::abs(static_cast<int>(a[i]) - static_cast<int>(b[i])) * tw;
    }
    std::swap(prev, cur);
  }

  if (mode == WeightMode::Recency) {
    const double nn = static_cast<double>(n);
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < npx; ++i) {
      acc[i] /= nn;
    }
  }
  return mhi;
}

Frame quantize_mhi(const MotionHistoryImage& mhi) {
  Frame out = make_frame(mhi.width, mhi.height, ColorMode::Gray8, 0);
  const double maxv = mhi.max_value();
  if (maxv <= 0.0) return out;
  const long long npx = static_cast<long long>(mhi.width) * mhi.height;
  const double* acc = mhi.accum.data();
  std::uint8_t* dst = out.pixels.data();
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < npx; ++i) {
    long v = std::lround(255.0 * acc[i] / maxv);
    dst[i] = static_cast<std::uint8_t>(std::clamp(v, 0L, 255L));
  }
  return out;
}

}  // namespace mhiforge
