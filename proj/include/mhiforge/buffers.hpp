#pragma once

#include <atomic>
#include <cstddef>
#include <utility>
#include <vector>

namespace mhiforge {

// Live/peak counters for the large per-video allocations (decoded frame
// pixel buffers, MHI accumulation grids). The streaming contracts promise
// constant memory; tests verify it against these counters.
class BufferStats {
 public:
  void acquire() noexcept {
    int now = live_.fetch_add(1, std::memory_order_relaxed) + 1;
    int prev = peak_.load(std::memory_order_relaxed);
    while (now > prev &&
           !peak_.compare_exchange_weak(prev, now, std::memory_order_relaxed)) {
    }
  }
  void release() noexcept { live_.fetch_sub(1, std::memory_order_relaxed); }

  int live() const noexcept { return live_.load(std::memory_order_relaxed); }
  int peak() const noexcept { return peak_.load(std::memory_order_relaxed); }
  void reset_peak() noexcept {
    peak_.store(live_.load(std::memory_order_relaxed),
                std::memory_order_relaxed);
  }

 private:
  std::atomic<int> live_{0};
  std::atomic<int> peak_{0};
};

BufferStats& frame_buffer_stats();  // decoded frame pixel buffers
BufferStats& accum_buffer_stats();  // MHI accumulation grids

// vector wrapper that counts one buffer while non-empty; moves transfer
// the counted state, copies count a new buffer.
template <class T, BufferStats& (*Stats)()>
class CountedBuffer {
 public:
  CountedBuffer() = default;
  explicit CountedBuffer(std::size_t n) { resize(n); }

  CountedBuffer(const CountedBuffer& other) : data_(other.data_) {
    if (!data_.empty()) {
      Stats().acquire();
      counted_ = true;
    }
  }
  CountedBuffer& operator=(const CountedBuffer& other) {
    if (this != &other) {
      CountedBuffer tmp(other);
      swap(tmp);
    }
    return *this;
  }

  CountedBuffer(CountedBuffer&& other) noexcept
      : data_(std::move(other.data_)),
        counted_(std::exchange(other.counted_, false)) {}
  CountedBuffer& operator=(CountedBuffer&& other) noexcept {
    if (this != &other) {
      release();
      data_ = std::move(other.data_);
      counted_ = std::exchange(other.counted_, false);
    }
    return *this;
  }

  ~CountedBuffer() { release(); }

  void resize(std::size_t n) {
    if (n == 0) {
      release();
      data_.clear();
      data_.shrink_to_fit();
      return;
    }
    data_.resize(n);
    if (!counted_) {
      Stats().acquire();
      counted_ = true;
    }
  }
  void assign(std::size_t n, T value) {
    resize(n);
    std::fill(data_.begin(), data_.end(), value);
  }

  void swap(CountedBuffer& other) noexcept {
    data_.swap(other.data_);
    std::swap(counted_, other.counted_);
  }

  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }
  T* data() noexcept { return data_.data(); }
  const T* data() const noexcept { return data_.data(); }
  T& operator[](std::size_t i) noexcept { return data_[i]; }
  const T& operator[](std::size_t i) const noexcept { return data_[i]; }

  auto begin() noexcept { return data_.begin(); }
  auto end() noexcept { return data_.end(); }
  auto begin() const noexcept { return data_.begin(); }
  auto end() const noexcept { return data_.end(); }

  bool operator==(const CountedBuffer& other) const {
    return data_ == other.data_;
  }

 private:
  void release() noexcept {
    if (counted_) {
      Stats().release();
      counted_ = false;
    }
  }

  std::vector<T> data_;
  bool counted_ = false;
};

using PixelBuffer = CountedBuffer<unsigned char, frame_buffer_stats>;
using AccumBuffer = CountedBuffer<double, accum_buffer_stats>;

}  // namespace mhiforge
