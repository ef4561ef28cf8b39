#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <vector>

#include "mhiforge/image.hpp"

namespace mhiforge {

struct StreamInfo {
  int width = 0;
  int height = 0;
  int frame_count = 0;
  ColorMode mode = ColorMode::Gray8;
  std::optional<BoundingBox> bbox;  // from a manifest's trailing bbox line
};

// Random-access provider behind a FrameStream. Implementations decode (or
// render) one frame at a time; they must not cache decoded frames.
class FrameSource {
 public:
  virtual ~FrameSource() = default;
  virtual const StreamInfo& info() const = 0;
  // index is 0-based; out's pixel buffer is reused when already sized
  virtual void read(int index, Frame& out, bool force_gray) const = 0;
};

// Single-consumer sequential view over a FrameSource. Frames are yielded in
// source order exactly once per pass; at most one frame is decoded per call.
class FrameStream {
 public:
  FrameStream() = default;
  explicit FrameStream(std::shared_ptr<const FrameSource> source);

  // Manifest: UTF-8 text, one relative frame path per line, optional
  // trailing line "bbox x y w h".
  static FrameStream open_manifest(const std::filesystem::path& path);
  // Frames ordered by byte-wise lexicographic filename comparison.
  static FrameStream open_directory(const std::filesystem::path& path);
  static FrameStream from_frames(std::vector<Frame> frames);

  int width() const;
  int height() const;
  int frame_count() const;
  ColorMode color_mode() const;
  std::optional<BoundingBox> bounding_box() const;

  bool next(Frame& out);       // native color mode
  bool next_gray(Frame& out);  // decoded straight to gray8
  void rewind() { cursor_ = 0; }
  int position() const { return cursor_; }

  // Fresh stream over frames [first..last], 1-based inclusive.
  FrameStream slice(int first, int last) const;
  // Fresh stream over the same frames in reverse order.
  FrameStream reversed() const;

  std::shared_ptr<const FrameSource> source() const { return source_; }

 private:
  std::shared_ptr<const FrameSource> source_;
  int cursor_ = 0;
};

}  // namespace mhiforge
