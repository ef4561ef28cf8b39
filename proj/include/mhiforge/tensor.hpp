#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

namespace mhiforge {

// Dense row-major float tensor. Values are 32-bit in memory and on disk;
// kernels accumulate in 64-bit.
class FeatureVolume {
 public:
  FeatureVolume() = default;
  explicit FeatureVolume(std::vector<std::uint32_t> dims);
  FeatureVolume(std::vector<std::uint32_t> dims, std::vector<float> values);

  std::size_t rank() const noexcept { return dims_.size(); }
  const std::vector<std::uint32_t>& dims() const noexcept { return dims_; }
  std::uint32_t dim(std::size_t axis) const { return dims_[axis]; }
  std::size_t size() const noexcept { return values_.size(); }

  std::span<const float> values() const noexcept { return values_; }
  std::span<float> values() noexcept { return values_; }
  float operator[](std::size_t i) const { return values_[i]; }
  float& operator[](std::size_t i) { return values_[i]; }

  // (C,H,W) indexing
  std::size_t index3(std::size_t c, std::size_t i, std::size_t j) const {
    return (c * dims_[1] + i) * dims_[2] + j;
  }
  // (C,T,H,W) indexing
  std::size_t index4(std::size_t c, std::size_t t, std::size_t i,
                     std::size_t j) const {
    return ((c * dims_[1] + t) * dims_[2] + i) * dims_[3] + j;
  }

  bool all_finite() const;

  bool operator==(const FeatureVolume&) const = default;

 private:
  std::vector<std::uint32_t> dims_;
  std::vector<float> values_;
};

// MHT1 container: magic "MHT1", little-endian u32 rank, rank little-endian
// u32 dims, then row-major little-endian 32-bit floats.
FeatureVolume read_mht(std::istream& in, const std::string& context);
void write_mht(std::ostream& out, const FeatureVolume& tensor);
FeatureVolume load_mht(const std::filesystem::path& path);
void save_mht(const std::filesystem::path& path, const FeatureVolume& tensor);

}  // namespace mhiforge
