#include "doef/sim/buffer.hpp"

#include <algorithm>
#include <string>
#include <utility>

namespace doef::sim {

std::string_view to_string(Replacement r) { return r == Replacement::lru ? "lru" : "clock"; }

Replacement parse_replacement(std::string_view s) {
  if (s == "lru" || s == "LRU" || s == "LRU-1") return Replacement::lru;
  if (s == "clock" || s == "CLOCK") return Replacement::clock;
  throw ParameterError("unknown replacement policy '" + std::string(s) + "'");
}

BufferPool::BufferPool(std::size_t capacity, Replacement policy) : capacity_(capacity), policy_(policy) {
  if (capacity == 0) throw ParameterError("buffer needs at least one page");
  if (policy == Replacement::clock) ring_.reserve(capacity);
}

ProbeResult BufferPool::probe(PageId page, bool write) {
  return policy_ == Replacement::lru ? probe_lru(page, write) : probe_clock(page, write);
}

ProbeResult BufferPool::probe_lru(PageId page, bool write) {
  ProbeResult res;
  if (auto it = lru_index_.find(page); it != lru_index_.end()) {
    lru_.splice(lru_.begin(), lru_, it->second);
    auto& f = lru_.front();
    f.dirty |= write;
    if (write) f.cluster_dirty = false;
    res.hit = true;
    return res;
  }
  if (lru_.size() == capacity_) {
    const Frame victim = lru_.back();
    lru_.pop_back();
    lru_index_.erase(victim.page);
    index_.erase(victim.page);
    res.evicted = victim.page;
    res.evicted_dirty = victim.dirty;
    res.evicted_cluster_dirty = victim.cluster_dirty;
  }
  lru_.push_front({page, write, true, false});
  lru_index_[page] = lru_.begin();
  index_[page] = 0;
  return res;
}

ProbeResult BufferPool::probe_clock(PageId page, bool write) {
  ProbeResult res;
  if (auto it = index_.find(page); it != index_.end()) {
    auto& f = ring_[it->second];
    f.referenced = true;
    f.dirty |= write;
    if (write) f.cluster_dirty = false;
    res.hit = true;
    return res;
  }
  if (ring_.size() < capacity_) {
    index_[page] = ring_.size();
    ring_.push_back({page, write, true, false});
    return res;
  }
  while (ring_[hand_].referenced) {
    ring_[hand_].referenced = false;
    hand_ = (hand_ + 1) % ring_.size();
  }
  auto& f = ring_[hand_];
  res.evicted = f.page;
  res.evicted_dirty = f.dirty;
  res.evicted_cluster_dirty = f.cluster_dirty;
  index_.erase(f.page);
  f = {page, write, true, false};
  index_[page] = hand_;
  hand_ = (hand_ + 1) % ring_.size();
  return res;
}

BufferPool::Frame* BufferPool::frame(PageId page) {
  return const_cast<Frame*>(std::as_const(*this).frame(page));
}

const BufferPool::Frame* BufferPool::frame(PageId page) const {
  if (policy_ == Replacement::lru) {
    const auto it = lru_index_.find(page);
    return it == lru_index_.end() ? nullptr : &*it->second;
  }
  const auto it = index_.find(page);
  return it == index_.end() ? nullptr : &ring_[it->second];
}

bool BufferPool::is_dirty(PageId page) const {
  const auto* f = frame(page);
  return f && f->dirty;
}

void BufferPool::set_dirty(PageId page, bool dirty) {
  if (auto* f = frame(page)) f->dirty = dirty;
}

bool BufferPool::absorb_cluster_write(PageId page) {
  auto* f = frame(page);
  if (!f) return false;
  if (!f->dirty) f->cluster_dirty = true;
  return true;
}

bool BufferPool::is_cluster_dirty(PageId page) const {
  const auto* f = frame(page);
  return f && f->cluster_dirty;
}

std::size_t BufferPool::flush_cluster_dirty() {
  std::size_t n = 0;
  auto clean = [&](Frame& f) {
    if (f.cluster_dirty) {
      f.cluster_dirty = false;
      ++n;
    }
  };
  for (auto& f : lru_) clean(f);
  for (auto& f : ring_) clean(f);
  return n;
}

std::vector<PageId> BufferPool::resident() const {
  std::vector<PageId> out;
  out.reserve(index_.size());
  for (const auto& [p, _] : index_) out.push_back(p);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace doef::sim
