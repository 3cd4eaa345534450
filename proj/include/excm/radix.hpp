#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace excm {

using Value = long;

// Mixed-radix index over an ordered list of finite ranges. The first range is
// the most significant digit, so walking indices 0..size()-1 yields tuples in
// lexicographic order.
class RadixSpace {
 public:
  RadixSpace() = default;
  explicit RadixSpace(std::vector<std::vector<Value>> ranges);

  [[nodiscard]] std::size_t dimensions() const { return ranges_.size(); }
  [[nodiscard]] const std::vector<Value>& range(std::size_t k) const { return ranges_[k]; }

  // Product of range sizes, saturating at overflow_limit.
  [[nodiscard]] unsigned long long size() const { return size_; }
  [[nodiscard]] bool overflowed() const { return overflowed_; }

  [[nodiscard]] std::vector<Value> decode(std::size_t index) const;
  void decode_into(std::size_t index, std::vector<Value>& out) const;
  // Values must be members of their ranges.
  [[nodiscard]] std::size_t encode(const std::vector<Value>& values) const;

  static constexpr unsigned long long overflow_limit = 1ull << 62;

 private:
  std::vector<std::vector<Value>> ranges_;
  unsigned long long size_ = 1;
  bool overflowed_ = false;
};

// Index of v in range, or -1.
[[nodiscard]] int range_index(const std::vector<Value>& range, Value v);

}  // namespace excm
