#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "mhiforge/buffers.hpp"

namespace mhiforge {

enum class ColorMode { Gray8, Rgb8 };

constexpr int channel_count(ColorMode mode) noexcept {
  return mode == ColorMode::Gray8 ? 1 : 3;
}

// Axis-aligned pixel rectangle, top-left origin.
struct BoundingBox {
  int x = 0;
  int y = 0;
  int w = 0;
  int h = 0;

  bool operator==(const BoundingBox&) const = default;
};

// 8-bit raster, row-major, interleaved channels for Rgb8.
struct Frame {
  int width = 0;
  int height = 0;
  ColorMode mode = ColorMode::Gray8;
  PixelBuffer pixels;

  int channels() const noexcept { return channel_count(mode); }
  std::size_t pixel_bytes() const noexcept {
    return static_cast<std::size_t>(width) * height * channels();
  }
  std::uint8_t at(int row, int col, int ch = 0) const {
    return pixels[(static_cast<std::size_t>(row) * width + col) * channels() +
                  ch];
  }
  std::uint8_t& at(int row, int col, int ch = 0) {
    return pixels[(static_cast<std::size_t>(row) * width + col) * channels() +
                  ch];
  }

  bool operator==(const Frame& o) const {
    return width == o.width && height == o.height && mode == o.mode &&
           pixels == o.pixels;
  }
};

Frame make_frame(int width, int height, ColorMode mode, std::uint8_t fill = 0);

// BT.601 luma, rounded half-up. Gray input is returned unchanged.
Frame to_grayscale(const Frame& frame);
std::uint8_t bt601_luma(std::uint8_t r, std::uint8_t g, std::uint8_t b);

Frame hflip(const Frame& frame);
Frame crop(const Frame& frame, const BoundingBox& box);

// ---- binary PGM (P5) / PPM (P6), maxval 255 only ----

struct NetpbmHeader {
  ColorMode mode = ColorMode::Gray8;
  int width = 0;
  int height = 0;
};

NetpbmHeader read_netpbm_header(std::istream& in, const std::string& context);

// Reads header + pixels. With force_gray, PPM scanlines are converted to
// luma on the fly so no full color buffer is ever materialized.
void read_netpbm(std::istream& in, Frame& out, bool force_gray,
                 const std::string& context);
Frame read_netpbm_file(const std::filesystem::path& path,
                       bool force_gray = false);
NetpbmHeader read_netpbm_header_file(const std::filesystem::path& path);

void write_netpbm(std::ostream& out, const Frame& frame);
void write_netpbm_file(const std::filesystem::path& path, const Frame& frame);
std::vector<std::uint8_t> encode_netpbm(const Frame& frame);
Frame decode_netpbm(std::span<const std::uint8_t> bytes);

}  // namespace mhiforge
