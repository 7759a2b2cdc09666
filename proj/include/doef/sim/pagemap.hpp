#pragma once

#include <span>
#include <vector>

#include "doef/ocb/database.hpp"

namespace doef::sim {

struct Placement {
  PageId page = 0;
  std::uint32_t slot = 0;
};

/// Object-to-page assignment. Slots are byte-granular; a page holds any objects
/// whose sizes sum to at most the page size.
class PageMap {
 public:
  explicit PageMap(std::uint32_t page_size);

  std::uint32_t page_size() const { return page_size_; }
  bool contains(Oid oid) const;
  Placement location(Oid oid) const;
  PageId page_of(Oid oid) const { return location(oid).page; }
  std::uint32_t object_size(Oid oid) const;

  std::size_t page_count() const { return pages_.size(); }
  std::size_t object_count() const { return objects_; }
  const std::vector<Oid>& objects_on(PageId page) const { return pages_.at(page); }
  std::uint32_t fill(PageId page) const { return fill_.at(page); }

  /// Places `oid` on the last page if it fits, else on a new page.
  PageId append(Oid oid, std::uint32_t size);
  PageId new_page();

  /// Lays out `ordered` (exactly the objects currently on `pages`) into `pages`
  /// first-fit in the given order. Returns false and leaves the map untouched when
  /// they do not fit.
  bool repack(std::span<const PageId> pages, std::span<const Oid> ordered);

  /// Lays out `groups` (together exactly the objects on `pages`) first-fit, keeping
  /// each group on one page when it fits in a page. What does not fit spills onto
  /// new pages, which are returned.
  std::vector<PageId> repack_groups(std::span<const PageId> pages, std::span<const std::vector<Oid>> groups);

  /// Moves `objects` (in order) off their current pages onto fresh pages.
  std::vector<PageId> relocate(std::span<const Oid> objects);

  /// Bijection and capacity check.
  bool consistent() const;

 private:
  void detach(Oid oid);
  void attach(Oid oid, PageId page);
  void renumber(PageId page);

  std::uint32_t page_size_;
  std::vector<Placement> where_;
  std::vector<std::uint32_t> size_;
  std::vector<bool> present_;
  std::vector<std::vector<Oid>> pages_;
  std::vector<std::uint32_t> fill_;
  std::size_t objects_ = 0;
};

/// Live objects in ascending OID order, each page filled before the next is opened.
PageMap place_sequential(const ocb::Database& db, std::uint32_t page_size);

}  // namespace doef::sim
