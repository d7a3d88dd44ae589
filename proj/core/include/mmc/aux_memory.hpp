#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <type_traits>
#include <vector>

namespace mmc {

// Counts live auxiliary entries (elements, not bytes) and the high-water mark.
class AuxMeter {
 public:
  void charge(std::size_t entries) noexcept {
    current_ += entries;
    peak_ = std::max(peak_, current_);
  }
  void release(std::size_t entries) noexcept { current_ -= entries; }

  std::size_t current() const noexcept { return current_; }
  std::size_t peak() const noexcept { return peak_; }
  void reset_peak() noexcept { peak_ = current_; }

 private:
  std::size_t current_ = 0;
  std::size_t peak_ = 0;
};

// std::allocator that reports every allocation to an optional meter.
template <class T>
class MeteredAllocator {
 public:
  using value_type = T;
  // Containers keep reporting to the meter they were moved or copied from.
  using propagate_on_container_copy_assignment = std::true_type;
  using propagate_on_container_move_assignment = std::true_type;
  using propagate_on_container_swap = std::true_type;

  MeteredAllocator() noexcept = default;
  explicit MeteredAllocator(AuxMeter* meter) noexcept : meter_(meter) {}
  template <class U>
  MeteredAllocator(const MeteredAllocator<U>& other) noexcept  // NOLINT
      : meter_(other.meter()) {}

  T* allocate(std::size_t n) {
    T* p = std::allocator<T>{}.allocate(n);
    if (meter_ != nullptr) meter_->charge(n);
    return p;
  }
  void deallocate(T* p, std::size_t n) noexcept {
    if (meter_ != nullptr) meter_->release(n);
    std::allocator<T>{}.deallocate(p, n);
  }

  AuxMeter* meter() const noexcept { return meter_; }

  template <class U>
  friend bool operator==(const MeteredAllocator& a,
                         const MeteredAllocator<U>& b) noexcept {
    return a.meter() == b.meter();
  }

 private:
  AuxMeter* meter_ = nullptr;
};

template <class T>
using AuxVector = std::vector<T, MeteredAllocator<T>>;

template <class K, class V>
using AuxMap =
    std::map<K, V, std::less<K>, MeteredAllocator<std::pair<const K, V>>>;

template <class T>
AuxVector<T> make_aux_vector(AuxMeter* meter, std::size_t n, const T& value) {
  return AuxVector<T>(n, value, MeteredAllocator<T>(meter));
}

}  // namespace mmc
