#pragma once

// Brute-force reference models used as test oracles.

#include <algorithm>
#include <cstdint>
#include <vector>

namespace doef::oracle {

/// Naive LRU: a vector ordered oldest first, scanned linearly.
class NaiveLru {
 public:
  explicit NaiveLru(std::size_t capacity) : capacity_(capacity) {}

  /// Returns true on a miss.
  bool access(std::uint32_t page) {
    const auto it = std::find(pages_.begin(), pages_.end(), page);
    if (it != pages_.end()) {
      pages_.erase(it);
      pages_.push_back(page);
      return false;
    }
    if (pages_.size() == capacity_) pages_.erase(pages_.begin());
    pages_.push_back(page);
    return true;
  }

  const std::vector<std::uint32_t>& pages() const { return pages_; }

 private:
  std::size_t capacity_;
  std::vector<std::uint32_t> pages_;
};

/// Textbook second-chance CLOCK over a frame array.
class NaiveClock {
 public:
  explicit NaiveClock(std::size_t capacity) : capacity_(capacity) {}

  bool access(std::uint32_t page) {
    for (auto& f : frames_) {
      if (f.page == page) {
        f.ref = true;
        return false;
      }
    }
    if (frames_.size() < capacity_) {
      frames_.push_back({page, true});
      return true;
    }
    for (;;) {
      auto& f = frames_[hand_];
      if (!f.ref) {
        f = {page, true};
        hand_ = (hand_ + 1) % frames_.size();
        return true;
      }
      f.ref = false;
      hand_ = (hand_ + 1) % frames_.size();
    }
  }

 private:
  struct Frame {
    std::uint32_t page;
    bool ref;
  };
  std::size_t capacity_;
  std::vector<Frame> frames_;
  std::size_t hand_ = 0;
};

template <typename Model>
std::uint64_t count_misses(const std::vector<std::uint32_t>& trace, std::size_t capacity) {
  Model m(capacity);
  std::uint64_t misses = 0;
  for (auto p : trace) misses += m.access(p);
  return misses;
}

}  // namespace doef::oracle
