#include "mhiforge/image.hpp"

#include <cctype>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

#include "mhiforge/error.hpp"

namespace mhiforge {

BufferStats& frame_buffer_stats() {
  static BufferStats stats;
  return stats;
}

BufferStats& accum_buffer_stats() {
  static BufferStats stats;
  return stats;
}

Frame make_frame(int width, int height, ColorMode mode, std::uint8_t fill) {
  Frame f;
  f.width = width;
  f.height = height;
  f.mode = mode;
  f.pixels.assign(f.pixel_bytes(), fill);
  return f;
}

std::uint8_t bt601_luma(std::uint8_t r, std::uint8_t g, std::uint8_t b) {
  // integer form of round(0.299 R + 0.587 G + 0.114 B), half-up
  int y = (299 * r + 587 * g + 114 * b + 500) / 1000;
  return static_cast<std::uint8_t>(y);
}

Frame to_grayscale(const Frame& frame) {
  if (frame.mode == ColorMode::Gray8) return frame;
  Frame out;
  out.width = frame.width;
  out.height = frame.height;
  out.mode = ColorMode::Gray8;
  out.pixels.resize(out.pixel_bytes());
  const std::uint8_t* src = frame.pixels.data();
  std::uint8_t* dst = out.pixels.data();
  std::size_t n = static_cast<std::size_t>(frame.width) * frame.height;
  for (std::size_t i = 0; i < n; ++i) {
    dst[i] = bt601_luma(src[3 * i], src[3 * i + 1], src[3 * i + 2]);
  }
  return out;
}

Frame hflip(const Frame& frame) {
  Frame out;
  out.width = frame.width;
  out.height = frame.height;
  out.mode = frame.mode;
  out.pixels.resize(frame.pixel_bytes());
  const int ch = frame.channels();
  for (int row = 0; row < frame.height; ++row) {
    for (int col = 0; col < frame.width; ++col) {
      int mirrored = frame.width - 1 - col;
      for (int c = 0; c < ch; ++c) {
        out.at(row, col, c) = frame.at(row, mirrored, c);
      }
    }
  }
  return out;
}

Frame crop(const Frame& frame, const BoundingBox& box) {
  if (box.w <= 0 || box.h <= 0 || box.x < 0 || box.y < 0 ||
      box.x + box.w > frame.width || box.y + box.h > frame.height) {
    fail(Errc::DimensionMismatch,
         "crop box outside frame bounds (" + std::to_string(box.x) + "," +
             std::to_string(box.y) + "," + std::to_string(box.w) + "," +
             std::to_string(box.h) + ")");
  }
  Frame out;
  out.width = box.w;
  out.height = box.h;
  out.mode = frame.mode;
  out.pixels.resize(out.pixel_bytes());
  const int ch = frame.channels();
  const std::size_t row_bytes = static_cast<std::size_t>(box.w) * ch;
  for (int row = 0; row < box.h; ++row) {
    const std::uint8_t* src =
        frame.pixels.data() +
        (static_cast<std::size_t>(box.y + row) * frame.width + box.x) * ch;
    std::uint8_t* dst = out.pixels.data() + static_cast<std::size_t>(row) * row_bytes;
    std::copy(src, src + row_bytes, dst);
  }
  return out;
}

namespace {

// Reads the next header token, skipping whitespace and '#' comments.
int read_header_int(std::istream& in, const std::string& context) {
  int c = in.get();
  while (c != EOF) {
    if (c == '#') {
      while (c != EOF && c != '\n') c = in.get();
    } else if (std::isspace(c)) {
      c = in.get();
    } else {
      break;
    }
  }
  if (c == EOF || !std::isdigit(c)) {
    fail(Errc::UnsupportedFormat, "malformed netpbm header in " + context);
  }
  long value = 0;
  while (c != EOF && std::isdigit(c)) {
    value = value * 10 + (c - '0');
    if (value > std::numeric_limits<int>::max()) {
      fail(Errc::UnsupportedFormat, "netpbm header value overflow in " + context);
    }
    c = in.get();
  }
  if (c != EOF) in.unget();
  return static_cast<int>(value);
}

NetpbmHeader parse_header(std::istream& in, const std::string& context) {
  char magic[2] = {0, 0};
  in.read(magic, 2);
  if (in.gcount() != 2 || magic[0] != 'P' ||
      (magic[1] != '5' && magic[1] != '6')) {
    fail(Errc::UnsupportedFormat,
         "not a binary PGM/PPM (P5/P6) file: " + context);
  }
  NetpbmHeader hdr;
  hdr.mode = magic[1] == '5' ? ColorMode::Gray8 : ColorMode::Rgb8;
  hdr.width = read_header_int(in, context);
  hdr.height = read_header_int(in, context);
  int maxval = read_header_int(in, context);
  if (hdr.width <= 0 || hdr.height <= 0) {
    fail(Errc::UnsupportedFormat, "non-positive dimensions in " + context);
  }
  if (static_cast<long long>(hdr.width) * hdr.height > 100'000'000LL) {
    fail(Errc::UnsupportedFormat, "implausibly large frame in " + context);
  }
  if (maxval != 255) {
    fail(Errc::UnsupportedFormat,
         "maxval must be 255, got " + std::to_string(maxval) + " in " + context);
  }
  int sep = in.get();
  if (sep == EOF || !std::isspace(sep)) {
    fail(Errc::UnsupportedFormat, "missing pixel data separator in " + context);
  }
  return hdr;
}

}  // namespace

NetpbmHeader read_netpbm_header(std::istream& in, const std::string& context) {
  return parse_header(in, context);
}

NetpbmHeader read_netpbm_header_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::FileNotFound, "cannot open " + path.string());
  return parse_header(in, path.string());
}

void read_netpbm(std::istream& in, Frame& out, bool force_gray,
                 const std::string& context) {
  NetpbmHeader hdr = parse_header(in, context);
  out.width = hdr.width;
  out.height = hdr.height;
  if (hdr.mode == ColorMode::Rgb8 && force_gray) {
    out.mode = ColorMode::Gray8;
    out.pixels.resize(out.pixel_bytes());
    // convert scanline by scanline; never hold a full color buffer
    std::vector<std::uint8_t> scanline(static_cast<std::size_t>(hdr.width) * 3);
    for (int row = 0; row < hdr.height; ++row) {
      in.read(reinterpret_cast<char*>(scanline.data()),
              static_cast<std::streamsize>(scanline.size()));
      if (static_cast<std::size_t>(in.gcount()) != scanline.size()) {
        fail(Errc::UnsupportedFormat, "truncated pixel data in " + context);
      }
      std::uint8_t* dst =
          out.pixels.data() + static_cast<std::size_t>(row) * hdr.width;
      for (int col = 0; col < hdr.width; ++col) {
        dst[col] = bt601_luma(scanline[3 * col], scanline[3 * col + 1],
                              scanline[3 * col + 2]);
      }
    }
  } else {
    out.mode = hdr.mode;
    out.pixels.resize(out.pixel_bytes());
    in.read(reinterpret_cast<char*>(out.pixels.data()),
            static_cast<std::streamsize>(out.pixel_bytes()));
    if (static_cast<std::size_t>(in.gcount()) != out.pixel_bytes()) {
      fail(Errc::UnsupportedFormat, "truncated pixel data in " + context);
    }
  }
}

Frame read_netpbm_file(const std::filesystem::path& path, bool force_gray) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::FileNotFound, "cannot open " + path.string());
  Frame f;
  read_netpbm(in, f, force_gray, path.string());
  return f;
}

void write_netpbm(std::ostream& out, const Frame& frame) {
  out << (frame.mode == ColorMode::Gray8 ? "P5" : "P6") << "\n"
      << frame.width << " " << frame.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(frame.pixels.data()),
            static_cast<std::streamsize>(frame.pixel_bytes()));
}

void write_netpbm_file(const std::filesystem::path& path, const Frame& frame) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::FileNotFound, "cannot write " + path.string());
  write_netpbm(out, frame);
  out.flush();
  if (!out) fail(Errc::FileNotFound, "failed writing " + path.string());
}

std::vector<std::uint8_t> encode_netpbm(const Frame& frame) {
  std::ostringstream out(std::ios::binary);
  write_netpbm(out, frame);
  std::string s = out.str();
  return std::vector<std::uint8_t>(s.begin(), s.end());
}

Frame decode_netpbm(std::span<const std::uint8_t> bytes) {
  std::istringstream in(
      std::string(reinterpret_cast<const char*>(bytes.data()), bytes.size()),
      std::ios::binary);
  Frame f;
  read_netpbm(in, f, false, "<memory>");
  return f;
}

}  // namespace mhiforge
