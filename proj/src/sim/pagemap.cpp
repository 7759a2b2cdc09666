#include "doef/sim/pagemap.hpp"

#include <algorithm>
#include <string>
#include <unordered_set>

namespace doef::sim {

PageMap::PageMap(std::uint32_t page_size) : page_size_(page_size) {
  if (page_size == 0) throw ParameterError("page size must be positive");
}

bool PageMap::contains(Oid oid) const { return oid < present_.size() && present_[oid]; }

Placement PageMap::location(Oid oid) const {
  if (!contains(oid)) throw TraceError("object " + std::to_string(oid) + " has no page");
  return where_[oid];
}

std::uint32_t PageMap::object_size(Oid oid) const {
  if (!contains(oid)) throw TraceError("object " + std::to_string(oid) + " has no page");
  return size_[oid];
}

PageId PageMap::new_page() {
  pages_.emplace_back();
  fill_.push_back(0);
  return static_cast<PageId>(pages_.size() - 1);
}

void PageMap::attach(Oid oid, PageId page) {
  where_[oid] = {page, static_cast<std::uint32_t>(pages_[page].size())};
  pages_[page].push_back(oid);
  fill_[page] += size_[oid];
}

void PageMap::detach(Oid oid) {
  const auto page = where_[oid].page;
  auto& list = pages_[page];
  list.erase(std::find(list.begin(), list.end(), oid));
  fill_[page] -= size_[oid];
  renumber(page);
}

void PageMap::renumber(PageId page) {
  const auto& list = pages_[page];
  for (std::uint32_t s = 0; s < list.size(); ++s) where_[list[s]].slot = s;
}

PageId PageMap::append(Oid oid, std::uint32_t size) {
  if (size > page_size_) {
    throw PlacementError("object " + std::to_string(oid) + " (" + std::to_string(size) +
                         " B) exceeds the page size");
  }
  if (contains(oid)) throw PlacementError("object " + std::to_string(oid) + " already placed");
  if (oid >= present_.size()) {
    where_.resize(oid + 1);
    size_.resize(oid + 1, 0);
    present_.resize(oid + 1, false);
  }
  size_[oid] = size;
  present_[oid] = true;
  ++objects_;
  if (pages_.empty() || fill_.back() + size > page_size_) new_page();
  const auto page = static_cast<PageId>(pages_.size() - 1);
  attach(oid, page);
  return page;
}

bool PageMap::repack(std::span<const PageId> pages, std::span<const Oid> ordered) {
  std::vector<std::uint32_t> load(pages.size(), 0);
  std::vector<std::size_t> target(ordered.size());
  for (std::size_t i = 0; i < ordered.size(); ++i) {
    const auto sz = object_size(ordered[i]);
    std::size_t k = 0;
    while (k < pages.size() && load[k] + sz > page_size_) ++k;
    if (k == pages.size()) return false;
    load[k] += sz;
    target[i] = k;
  }
  for (PageId p : pages) {
    pages_.at(p).clear();
    fill_[p] = 0;
  }
  for (std::size_t i = 0; i < ordered.size(); ++i) attach(ordered[i], pages[target[i]]);
  return true;
}

std::vector<PageId> PageMap::repack_groups(std::span<const PageId> pages,
                                           std::span<const std::vector<Oid>> groups) {
  for (PageId p : pages) {
    pages_.at(p).clear();
    fill_[p] = 0;
  }
  std::vector<PageId> targets(pages.begin(), pages.end());
  std::vector<PageId> extra;
  std::size_t first_open = 0;
  std::uint32_t smallest = page_size_;
  for (const auto& g : groups) {
    for (Oid oid : g) smallest = std::min(smallest, size_[oid]);
  }
  auto place = [&](std::span<const Oid> objs, std::uint32_t bytes) {
    while (first_open < targets.size() && page_size_ - fill_[targets[first_open]] < smallest) ++first_open;
    for (std::size_t k = first_open; k < targets.size(); ++k) {
      if (fill_[targets[k]] + bytes <= page_size_) {
        for (Oid oid : objs) attach(oid, targets[k]);
        return;
      }
    }
    const auto fresh = new_page();
    extra.push_back(fresh);
    targets.push_back(fresh);
    for (Oid oid : objs) attach(oid, fresh);
  };
  for (const auto& g : groups) {
    std::uint32_t bytes = 0;
    for (Oid oid : g) bytes += size_[oid];
    if (bytes <= page_size_) {
      place(g, bytes);
    } else {
      for (const Oid& oid : g) place(std::span<const Oid>(&oid, 1), size_[oid]);
    }
  }
  return extra;
}

std::vector<PageId> PageMap::relocate(std::span<const Oid> objects) {
  std::vector<PageId> fresh;
  for (Oid oid : objects) {
    detach(oid);
    const auto sz = size_[oid];
    if (fresh.empty() || fill_[fresh.back()] + sz > page_size_) fresh.push_back(new_page());
    attach(oid, fresh.back());
  }
  return fresh;
}

bool PageMap::consistent() const {
  std::size_t seen = 0;
  for (PageId p = 0; p < pages_.size(); ++p) {
    std::uint64_t bytes = 0;
    for (std::uint32_t s = 0; s < pages_[p].size(); ++s) {
      const Oid oid = pages_[p][s];
      if (!contains(oid) || where_[oid].page != p || where_[oid].slot != s) return false;
      bytes += size_[oid];
      ++seen;
    }
    if (bytes != fill_[p] || bytes > page_size_) return false;
  }
  return seen == objects_;
}

PageMap place_sequential(const ocb::Database& db, std::uint32_t page_size) {
  PageMap map(page_size);
  for (const auto& obj : db.objects) {
    if (obj.alive) map.append(obj.oid, obj.filler_size);
  }
  return map;
}

}  // namespace doef::sim
