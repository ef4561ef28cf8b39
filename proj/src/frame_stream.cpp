#include "mhiforge/frame_stream.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <string>

#include "mhiforge/error.hpp"

namespace mhiforge {

namespace {

class FileSource : public FrameSource {
 public:
  FileSource(std::vector<std::filesystem::path> paths,
             std::optional<BoundingBox> bbox) {
    if (paths.empty()) fail(Errc::EmptyStream, "no frames listed");
    paths_ = std::move(paths);
    bool first = true;
    for (const auto& p : paths_) {
      NetpbmHeader hdr = read_netpbm_header_file(p);
      if (first) {
        info_.width = hdr.width;
        info_.height = hdr.height;
        info_.mode = hdr.mode;
        first = false;
      } else if (hdr.width != info_.width || hdr.height != info_.height ||
                 hdr.mode != info_.mode) {
        fail(Errc::DimensionMismatch,
             p.string() + " (" + std::to_string(hdr.width) + "x" +
                 std::to_string(hdr.height) + ") does not match first frame (" +
                 std::to_string(info_.width) + "x" +
                 std::to_string(info_.height) + ")");
      }
    }
    info_.frame_count = static_cast<int>(paths_.size());
    info_.bbox = bbox;
  }

  const StreamInfo& info() const override { return info_; }

  void read(int index, Frame& out, bool force_gray) const override {
    const auto& p = paths_[static_cast<std::size_t>(index)];
    std::ifstream in(p, std::ios::binary);
    if (!in) fail(Errc::FileNotFound, "cannot open " + p.string());
    read_netpbm(in, out, force_gray, p.string());
  }

 private:
  std::vector<std::filesystem::path> paths_;
  StreamInfo info_;
};

class MemorySource : public FrameSource {
 public:
  explicit MemorySource(std::vector<Frame> frames)
      : frames_(std::move(frames)) {
    if (frames_.empty()) fail(Errc::EmptyStream, "no frames given");
    info_.width = frames_[0].width;
    info_.height = frames_[0].height;
    info_.mode = frames_[0].mode;
    for (const auto& f : frames_) {
      if (f.width != info_.width || f.height != info_.height ||
          f.mode != info_.mode) {
        fail(Errc::DimensionMismatch, "frames differ in size or color mode");
      }
    }
    info_.frame_count = static_cast<int>(frames_.size());
  }

  const StreamInfo& info() const override { return info_; }

  void read(int index, Frame& out, bool force_gray) const override {
    const Frame& src = frames_[static_cast<std::size_t>(index)];
    if (force_gray && src.mode == ColorMode::Rgb8) {
      out = to_grayscale(src);
    } else {
      out = src;
    }
  }

 private:
  std::vector<Frame> frames_;
  StreamInfo info_;
};

// View over a window (and optionally reversed order) of another source.
class WindowSource : public FrameSource {
 public:
  WindowSource(std::shared_ptr<const FrameSource> base, int first0, int count,
               bool reverse)
      : base_(std::move(base)), first_(first0), reverse_(reverse) {
    info_ = base_->info();
    info_.frame_count = count;
  }

  const StreamInfo& info() const override { return info_; }

  void read(int index, Frame& out, bool force_gray) const override {
    int i = reverse_ ? info_.frame_count - 1 - index : index;
    base_->read(first_ + i, out, force_gray);
  }

 private:
  std::shared_ptr<const FrameSource> base_;
  StreamInfo info_;
  int first_ = 0;
  bool reverse_ = false;
};

bool parse_bbox_line(const std::string& line, BoundingBox& box) {
  std::istringstream iss(line);
  std::string tag;
  if (!(iss >> tag) || tag != "bbox") return false;
  long x, y, w, h;
  if (!(iss >> x >> y >> w >> h)) {
    fail(Errc::UnsupportedFormat, "malformed bbox line: " + line);
  }
  box = BoundingBox{static_cast<int>(x), static_cast<int>(y),
                    static_cast<int>(w), static_cast<int>(h)};
  return true;
}

}  // namespace

FrameStream::FrameStream(std::shared_ptr<const FrameSource> source)
    : source_(std::move(source)) {}

FrameStream FrameStream::open_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::FileNotFound, "cannot open manifest " + path.string());
  std::filesystem::path base = path.parent_path();
  std::vector<std::filesystem::path> paths;
  std::optional<BoundingBox> bbox;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    BoundingBox box;
    if (parse_bbox_line(line, box)) {
      bbox = box;
      continue;
    }
    paths.push_back(base / line);
  }
  if (paths.empty()) {
    fail(Errc::EmptyStream, "manifest lists no frames: " + path.string());
  }
  for (const auto& p : paths) {
    if (!std::filesystem::exists(p)) {
      fail(Errc::FileNotFound, p.string() + " (listed in manifest)");
    }
  }
  return FrameStream(std::make_shared<FileSource>(std::move(paths), bbox));
}

FrameStream FrameStream::open_directory(const std::filesystem::path& path) {
  if (!std::filesystem::is_directory(path)) {
    fail(Errc::FileNotFound, "not a directory: " + path.string());
  }
  std::vector<std::filesystem::path> paths;
  for (const auto& entry : std::filesystem::directory_iterator(path)) {
    if (!entry.is_regular_file()) continue;
    auto ext = entry.path().extension().string();
    if (ext == ".pgm" || ext == ".ppm") paths.push_back(entry.path());
  }
  if (paths.empty()) {
    fail(Errc::EmptyStream, "no .pgm/.ppm frames in " + path.string());
  }
  std::sort(paths.begin(), paths.end(),
            [](const std::filesystem::path& a, const std::filesystem::path& b) {
              return a.filename().string() < b.filename().string();
            });
  return FrameStream(
      std::make_shared<FileSource>(std::move(paths), std::nullopt));
}

FrameStream FrameStream::from_frames(std::vector<Frame> frames) {
  return FrameStream(std::make_shared<MemorySource>(std::move(frames)));
}

int FrameStream::width() const { return source_->info().width; }
int FrameStream::height() const { return source_->info().height; }
int FrameStream::frame_count() const { return source_->info().frame_count; }
ColorMode FrameStream::color_mode() const { return source_->info().mode; }
std::optional<BoundingBox> FrameStream::bounding_box() const {
  return source_->info().bbox;
}

bool FrameStream::next(Frame& out) {
  if (cursor_ >= frame_count()) return false;
  source_->read(cursor_++, out, false);
  return true;
}

bool FrameStream::next_gray(Frame& out) {
  if (cursor_ >= frame_count()) return false;
  source_->read(cursor_++, out, true);
  return true;
}

FrameStream FrameStream::slice(int first, int last) const {
  if (first < 1 || last > frame_count() || first > last) {
    fail(Errc::DimensionMismatch,
         "slice [" + std::to_string(first) + ".." + std::to_string(last) +
             "] outside [1.." + std::to_string(frame_count()) + "]");
  }
  return FrameStream(std::make_shared<WindowSource>(source_, first - 1,
                                                    last - first + 1, false));
}

FrameStream FrameStream::reversed() const {
  return FrameStream(
      std::make_shared<WindowSource>(source_, 0, frame_count(), true));
}

}  // namespace mhiforge
