#include "mhiforge/tensor.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <string>

#include "mhiforge/error.hpp"

namespace mhiforge {

namespace {

constexpr std::uint32_t kMaxRank = 8;
constexpr std::uint64_t kMaxElements = 1ull << 30;

std::size_t checked_element_count(const std::vector<std::uint32_t>& dims,
                                  const std::string& context) {
  if (dims.empty() || dims.size() > kMaxRank) {
    fail(Errc::UnsupportedFormat,
         "tensor rank " + std::to_string(dims.size()) + " out of range in " +
             context);
  }
  std::uint64_t count = 1;
  for (std::uint32_t d : dims) {
    if (d == 0) {
      fail(Errc::UnsupportedFormat, "zero-sized dimension in " + context);
    }
    count *= d;
    if (count > kMaxElements) {
      fail(Errc::UnsupportedFormat, "tensor too large in " + context);
    }
  }
  return static_cast<std::size_t>(count);
}

std::uint32_t read_u32_le(std::istream& in, const std::string& context) {
  unsigned char b[4];
  in.read(reinterpret_cast<char*>(b), 4);
  if (in.gcount() != 4) {
    fail(Errc::UnsupportedFormat, "truncated tensor header in " + context);
  }
  return static_cast<std::uint32_t>(b[0]) |
         (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) |
         (static_cast<std::uint32_t>(b[3]) << 24);
}

void write_u32_le(std::ostream& out, std::uint32_t v) {
  unsigned char b[4] = {static_cast<unsigned char>(v & 0xff),
                        static_cast<unsigned char>((v >> 8) & 0xff),
                        static_cast<unsigned char>((v >> 16) & 0xff),
                        static_cast<unsigned char>((v >> 24) & 0xff)};
  out.write(reinterpret_cast<const char*>(b), 4);
}

static_assert(sizeof(float) == 4);

}  // namespace

FeatureVolume::FeatureVolume(std::vector<std::uint32_t> dims)
    : dims_(std::move(dims)) {
  values_.resize(checked_element_count(dims_, "<ctor>"), 0.0f);
}

FeatureVolume::FeatureVolume(std::vector<std::uint32_t> dims,
                             std::vector<float> values)
    : dims_(std::move(dims)), values_(std::move(values)) {
  std::size_t expect = checked_element_count(dims_, "<ctor>");
  if (values_.size() != expect) {
    fail(Errc::DimensionMismatch,
         "value count " + std::to_string(values_.size()) +
             " does not match dims product " + std::to_string(expect));
  }
}

bool FeatureVolume::all_finite() const {
  for (float v : values_) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

FeatureVolume read_mht(std::istream& in, const std::string& context) {
  char magic[4];
  in.read(magic, 4);
  if (in.gcount() != 4 || std::memcmp(magic, "MHT1", 4) != 0) {
    fail(Errc::UnsupportedFormat, "bad MHT1 magic in " + context);
  }
  std::uint32_t rank = read_u32_le(in, context);
  if (rank == 0 || rank > kMaxRank) {
    fail(Errc::UnsupportedFormat,
         "tensor rank " + std::to_string(rank) + " out of range in " + context);
  }
  std::vector<std::uint32_t> dims(rank);
  for (auto& d : dims) d = read_u32_le(in, context);
  std::size_t count = checked_element_count(dims, context);

  std::vector<float> values(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::uint32_t bits = read_u32_le(in, context);
    values[i] = std::bit_cast<float>(bits);
  }
  return FeatureVolume(std::move(dims), std::move(values));
}

void write_mht(std::ostream& out, const FeatureVolume& tensor) {
  out.write("MHT1", 4);
  write_u32_le(out, static_cast<std::uint32_t>(tensor.rank()));
  for (std::uint32_t d : tensor.dims()) write_u32_le(out, d);
  for (float v : tensor.values()) {
    write_u32_le(out, std::bit_cast<std::uint32_t>(v));
  }
}

FeatureVolume load_mht(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::FileNotFound, "cannot open " + path.string());
  return read_mht(in, path.string());
}

void save_mht(const std::filesystem::path& path, const FeatureVolume& tensor) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::FileNotFound, "cannot write " + path.string());
  write_mht(out, tensor);
  out.flush();
  if (!out) fail(Errc::FileNotFound, "failed writing " + path.string());
}

}  // namespace mhiforge
