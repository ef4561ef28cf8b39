#include "mhiforge/rgb_mhi.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "mhiforge/error.hpp"

namespace mhiforge {

std::array<FrameRange, 3> split_thirds(int frame_count) {
  if (frame_count < 6) {
    fail(Errc::InsufficientFrames,
         "tri-temporal split needs >= 6 frames, got " +
             std::to_string(frame_count));
  }
  const int base = frame_count / 3;
  const int rem = frame_count % 3;
  std::array<FrameRange, 3> parts;
  int start = 1;
  for (int p = 0; p < 3; ++p) {
    int len = base + (p < rem ? 1 : 0);
    parts[static_cast<std::size_t>(p)] = FrameRange{start, start + len - 1};
    start += len;
  }
  return parts;
}

double RgbMhiImage::max_value() const {
  double m = 0.0;
  for (const auto& ch : channel_accums) {
    for (double v : ch) m = std::max(m, v);
  }
  return m;
}

double RgbMhiImage::total_mass() const {
  double s = 0.0;
  for (const auto& ch : channel_accums) {
    for (double v : ch) s += v;
  }
  return s;
}

RgbMhiImage compute_rgb_mhi(FrameStream& stream, WeightMode mode) {
  const int n = stream.frame_count();
  RgbMhiImage img;
  img.part_bounds = split_thirds(n);
  img.width = stream.width();
  img.height = stream.height();
  img.source_frame_count = n;
  const long long npx = static_cast<long long>(img.width) * img.height;
  for (auto& ch : img.channel_accums) {
    ch.assign(static_cast<std::size_t>(npx), 0.0);
  }

  // One pass over the whole stream; the previous-frame buffer resets at
  // each part boundary so every channel matches compute_mhi of its
  // sub-stream bit for bit.
  Frame prev, cur;
  for (int p = 0; p < 3; ++p) {
    const FrameRange part = img.part_bounds[static_cast<std::size_t>(p)];
    const int local_n = part.length();
    double* acc = img.channel_accums[static_cast<std::size_t>(p)].data();
    if (!stream.next_gray(prev)) {
      fail(Errc::InsufficientFrames, "stream ended early");
    }
    for (int local_t = 2; local_t <= local_n; ++local_t) {
      if (!stream.next_gray(cur)) {
        fail(Errc::InsufficientFrames, "stream ended early");
      }
      const std::uint8_t* a = prev.pixels.data();
      const std::uint8_t* b = cur.pixels.data();
      const double tw =
          mode == WeightMode::Recency ? static_cast<double>(local_t) : 1.0;
#pragma omp parallel for schedule(static)
      for (long long i = 0; i < npx; ++i) {
        acc[i] +=
            std::abs(static_cast<int>(a[i]) - static_cast<int>(b[i])) * tw;
      }
      std::swap(prev, cur);
    }
    if (mode == WeightMode::Recency) {
      const double nn = static_cast<double>(local_n);
#pragma omp parallel for schedule(static)
      for (long long i = 0; i < npx; ++i) {
        acc[i] /= nn;
      }
    }
  }
  return img;
}

Frame quantize_rgb_mhi(const RgbMhiImage& img) {
  Frame out = make_frame(img.width, img.height, ColorMode::Rgb8, 0);
  const double maxv = img.max_value();
  if (maxv <= 0.0) return out;
  const long long npx = static_cast<long long>(img.width) * img.height;
  const double* blue = img.channel_accums[0].data();
  const double* green = img.channel_accums[1].data();
  const double* red = img.channel_accums[2].data();
  std::uint8_t* dst = out.pixels.data();
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < npx; ++i) {
    auto q = [maxv](double v) {
      long r = std::lround(255.0 * v / maxv);
      return static_cast<std::uint8_t>(std::clamp(r, 0L, 255L));
    };
    dst[3 * i + 0] = q(red[i]);
    dst[3 * i + 1] = q(green[i]);
    dst[3 * i + 2] = q(blue[i]);
  }
  return out;
}

}  // namespace mhiforge
