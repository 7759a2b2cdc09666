#include "doef/cluster/usage_stats.hpp"

namespace doef::cluster {

void UsageStats::observe(const workload::AccessRecord& rec, const sim::PageMap& pages) {
  ++records_;
  const Oid* prev = nullptr;
  for (const auto& a : rec.accessed) {
    ++freq_[a.oid];
    if (pages.contains(a.oid)) ++page_hits_[pages.page_of(a.oid)];
    if (prev && *prev != a.oid) ++trans_[{*prev, a.oid}];
    prev = &a.oid;
  }
}

void UsageStats::reset() {
  records_ = 0;
  freq_.clear();
  page_hits_.clear();
  trans_.clear();
}

std::uint32_t UsageStats::frequency(Oid oid) const {
  const auto it = freq_.find(oid);
  return it == freq_.end() ? 0 : it->second;
}

std::uint32_t UsageStats::page_accesses(PageId page) const {
  const auto it = page_hits_.find(page);
  return it == page_hits_.end() ? 0 : it->second;
}

double UsageStats::usage_rate(PageId page, const sim::PageMap& pages) const {
  const auto& objs = pages.objects_on(page);
  if (objs.empty()) return 0.0;
  std::size_t used = 0;
  for (Oid oid : objs) used += freq_.count(oid);
  return static_cast<double>(used) / static_cast<double>(objs.size());
}

double UsageStats::badness(PageId page, const sim::PageMap& pages) const {
  return (1.0 - usage_rate(page, pages)) * page_accesses(page);
}

std::uint32_t UsageStats::transition(Oid a, Oid b) const {
  const auto it = trans_.find({a, b});
  return it == trans_.end() ? 0 : it->second;
}

}  // namespace doef::cluster
