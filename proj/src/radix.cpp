#include "excm/radix.hpp"

#include <cassert>
#include <stdexcept>

namespace excm {

RadixSpace::RadixSpace(std::vector<std::vector<Value>> ranges)
    : ranges_(std::move(ranges)) {
  for (const auto& r : ranges_) {
    assert(!r.empty());
    if (overflowed_ || size_ > overflow_limit / r.size()) {
      overflowed_ = true;
      size_ = overflow_limit;
    } else {
      size_ *= r.size();
    }
  }
}

void RadixSpace::decode_into(std::size_t index, std::vector<Value>& out) const {
  out.resize(ranges_.size());
  for (std::size_t k = ranges_.size(); k-- > 0;) {
    const auto& r = ranges_[k];
    out[k] = r[index % r.size()];
    index /= r.size();
  }
}

std::vector<Value> RadixSpace::decode(std::size_t index) const {
  std::vector<Value> out;
  decode_into(index, out);
  return out;
}

std::size_t RadixSpace::encode(const std::vector<Value>& values) const {
  assert(values.size() == ranges_.size());
  std::size_t index = 0;
  for (std::size_t k = 0; k < ranges_.size(); ++k) {
    int pos = range_index(ranges_[k], values[k]);
    if (pos < 0) throw std::out_of_range("value not in range");
    index = index * ranges_[k].size() + static_cast<std::size_t>(pos);
  }
  return index;
}

int range_index(const std::vector<Value>& range, Value v) {
  for (std::size_t i = 0; i < range.size(); ++i)
    if (range[i] == v) return static_cast<int>(i);
  return -1;
}

}  // namespace excm
