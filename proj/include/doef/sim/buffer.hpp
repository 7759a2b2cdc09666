#pragma once

#include <list>
#include <optional>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "doef/types.hpp"

namespace doef::sim {

enum class Replacement { lru, clock };

std::string_view to_string(Replacement r);
Replacement parse_replacement(std::string_view s);

struct ProbeResult {
  bool hit = false;
  std::optional<PageId> evicted;
  bool evicted_dirty = false;          ///< dirtied by a transaction
  bool evicted_cluster_dirty = false;  ///< dirtied only by re-clustering
};

/// Page buffer with LRU (LRU-1) or CLOCK (second chance) replacement.
class BufferPool {
 public:
  BufferPool(std::size_t capacity, Replacement policy);

  /// Accesses `page`, loading it on a miss. `write` marks it dirty.
  ProbeResult probe(PageId page, bool write = false);

  bool contains(PageId page) const { return index_.count(page) != 0; }
  bool is_dirty(PageId page) const;
  void set_dirty(PageId page, bool dirty);

  /// A re-clustering rewrite of `page`. Returns false when the page is not
  /// resident (the caller writes it through). A resident page absorbs the write:
  /// it becomes cluster-dirty unless a transaction already dirtied it.
  bool absorb_cluster_write(PageId page);
  bool is_cluster_dirty(PageId page) const;
  /// Resident cluster-dirty pages, which are cleaned.
  std::size_t flush_cluster_dirty();

  std::size_t size() const { return index_.size(); }
  std::size_t capacity() const { return capacity_; }
  Replacement policy() const { return policy_; }
  std::vector<PageId> resident() const;

 private:
  struct Frame {
    PageId page = 0;
    bool dirty = false;
    bool referenced = false;
    bool cluster_dirty = false;
  };

  Frame* frame(PageId page);
  const Frame* frame(PageId page) const;

  ProbeResult probe_lru(PageId page, bool write);
  ProbeResult probe_clock(PageId page, bool write);

  std::size_t capacity_;
  Replacement policy_;
  // LRU: most recent at the front.
  std::list<Frame> lru_;
  std::unordered_map<PageId, std::list<Frame>::iterator> lru_index_;
  // CLOCK: fixed frame ring.
  std::vector<Frame> ring_;
  std::size_t hand_ = 0;
  std::unordered_map<PageId, std::size_t> index_;
};

}  // namespace doef::sim
