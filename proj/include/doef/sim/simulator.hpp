#pragma once

#include <span>
#include <string_view>

#include "doef/cluster/clusterers.hpp"
#include "doef/sim/buffer.hpp"
#include "doef/sim/pagemap.hpp"

namespace doef::sim {

enum class PlacementPolicy { sequential };

struct SimConfig {
  std::uint32_t page_size = 4096;
  std::size_t buffer_pages = 1024;
  Replacement replacement = Replacement::lru;
  std::uint32_t multiprogramming = 1;
  PlacementPolicy placement = PlacementPolicy::sequential;

  void validate() const;
};

/// Pages of `page_size` bytes in `megabytes` MB.
std::size_t pages_for_megabytes(double megabytes, std::uint32_t page_size);

struct SimMetrics {
  std::uint64_t txn_read_io = 0;
  std::uint64_t clust_read_io = 0;
  std::uint64_t clust_write_io = 0;
  std::uint64_t total_io = 0;
  std::uint64_t buffer_hits = 0;
  /// Dirty transaction pages flushed on eviction. Kept apart, not part of total_io.
  std::uint64_t txn_write_io = 0;
  std::uint64_t transactions = 0;

  friend bool operator==(const SimMetrics&, const SimMetrics&) = default;
};

/// Replays access records against a page map and buffer, letting a clusterer
/// reorganize the map between transactions.
class Simulator {
 public:
  /// `db` (optional) supplies sizes of objects created by evolution records.
  Simulator(PageMap pages, const SimConfig& cfg, cluster::Clusterer* clusterer = nullptr,
            const ocb::Database* db = nullptr);

  void process(const workload::AccessRecord& rec);
  /// Writes back pages dirtied only by re-clustering, charging clustering write I/O.
  void finish();

  const SimMetrics& metrics() const { return metrics_; }
  const PageMap& pages() const { return pages_; }
  const BufferPool& buffer() const { return buffer_; }

 private:
  PageId resolve(Oid oid);

  PageMap pages_;
  SimConfig cfg_;
  BufferPool buffer_;
  cluster::Clusterer* clusterer_;
  const ocb::Database* db_;
  SimMetrics metrics_;
};

SimMetrics run_trace(std::span<const workload::AccessRecord> trace, PageMap pages, const SimConfig& cfg,
                     cluster::Clusterer* clusterer = nullptr, const ocb::Database* db = nullptr);

}  // namespace doef::sim
