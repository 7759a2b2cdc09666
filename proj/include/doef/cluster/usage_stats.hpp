#pragma once

#include <map>
#include <unordered_map>
#include <utility>

#include "doef/sim/pagemap.hpp"
#include "doef/workload/workload.hpp"

namespace doef::cluster {

using Transition = std::pair<Oid, Oid>;

/// Access statistics over an observation window.
class UsageStats {
 public:
  /// Counts every access of `rec`; objects without a page are ignored for page counts.
  void observe(const workload::AccessRecord& rec, const sim::PageMap& pages);
  void reset();

  std::size_t records() const { return records_; }
  std::uint32_t frequency(Oid oid) const;
  const std::unordered_map<Oid, std::uint32_t>& frequencies() const { return freq_; }

  std::uint32_t page_accesses(PageId page) const;
  const std::map<PageId, std::uint32_t>& page_access_counts() const { return page_hits_; }

  /// Fraction of the objects now on `page` that were accessed in the window.
  double usage_rate(PageId page, const sim::PageMap& pages) const;

  /// (1 - usage rate) x page accesses.
  double badness(PageId page, const sim::PageMap& pages) const;

  /// Counts of consecutive accesses (a then b, a != b) within a transaction.
  std::uint32_t transition(Oid a, Oid b) const;
  const std::map<Transition, std::uint32_t>& transitions() const { return trans_; }

 private:
  std::size_t records_ = 0;
  std::unordered_map<Oid, std::uint32_t> freq_;
  std::map<PageId, std::uint32_t> page_hits_;
  std::map<Transition, std::uint32_t> trans_;
};

}  // namespace doef::cluster
