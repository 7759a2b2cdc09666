#include "doef/cluster/clusterers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>

namespace doef::cluster {

std::string_view to_string(ClustererKind k) {
  switch (k) {
    case ClustererKind::none: return "none";
    case ClustererKind::dstc_like: return "dstc_like";
    case ClustererKind::dro: return "dro";
    case ClustererKind::opcf_gp: return "opcf_gp";
    case ClustererKind::opcf_prp: return "opcf_prp";
  }
  return "?";
}

std::string_view short_name(ClustererKind k) {
  switch (k) {
    case ClustererKind::none: return "nc";
    case ClustererKind::dstc_like: return "dstc";
    case ClustererKind::dro: return "dro";
    case ClustererKind::opcf_gp: return "gp";
    case ClustererKind::opcf_prp: return "prp";
  }
  return "?";
}

ClustererKind parse_clusterer_kind(std::string_view s) {
  for (auto k : {ClustererKind::none, ClustererKind::dstc_like, ClustererKind::dro, ClustererKind::opcf_gp,
                 ClustererKind::opcf_prp}) {
    if (s == to_string(k) || s == short_name(k)) return k;
  }
  throw ParameterError("unknown clusterer '" + std::string(s) + "'");
}

void ClustererConfig::validate() const {
  auto rate = [](double v, const char* name) {
    if (!(v > 0.0) || v > 1.0) throw ParameterError(std::string(name) + " must lie in (0, 1]");
  };
  auto count = [](std::uint32_t v, const char* name) {
    if (v < 1) throw ParameterError(std::string(name) + " must be >= 1");
  };
  count(dstc.n, "n");
  count(dstc.p, "p");
  if (dstc.T_fa < 0 || dstc.T_fe < 0 || dstc.T_fc < 0) throw ParameterError("DSTC thresholds must be >= 0");
  rate(dstc.w, "w");
  rate(dro.MinUR, "MinUR");
  rate(dro.PCRate, "PCRate");
  count(dro.MaxD, "MaxD");
  rate(dro.MaxDR, "MaxDR");
  rate(dro.MaxRR, "MaxRR");
  count(opcf.N, "N");
  count(opcf.NPA, "NPA");
  count(opcf.NRI, "NRI");
  if (opcf.CBT < 0) throw ParameterError("CBT must be >= 0");
}

namespace {

Transition undirected(Transition t) { return t.first < t.second ? t : Transition{t.second, t.first}; }

struct Snapshot {
  std::map<PageId, std::vector<Oid>> contents;

  Snapshot(const sim::PageMap& pages, std::span<const PageId> ids) {
    for (PageId p : ids) {
      auto objs = pages.objects_on(p);
      std::sort(objs.begin(), objs.end());
      contents[p] = std::move(objs);
    }
  }

  bool changed(const sim::PageMap& pages, PageId p) const {
    auto now = pages.objects_on(p);
    std::sort(now.begin(), now.end());
    return now != contents.at(p);
  }
};

/// Objects of `ids` not covered by `groups`, as singletons in page order.
void append_leftovers(const sim::PageMap& pages, std::span<const PageId> ids,
                      std::vector<std::vector<Oid>>& groups) {
  std::unordered_set<Oid> grouped;
  for (const auto& g : groups) grouped.insert(g.begin(), g.end());
  for (PageId p : ids) {
    for (Oid oid : pages.objects_on(p)) {
      if (!grouped.count(oid)) groups.push_back({oid});
    }
  }
}

class NoClustering final : public Clusterer {
 public:
  ClustererKind kind() const override { return ClustererKind::none; }
  void observe(const workload::AccessRecord&, const sim::PageMap&) override {}
  RoundResult after_transaction(sim::PageMap&, sim::BufferPool&) override { return {}; }
};

/// Non-conservative: every page linked by a strong enough transition is rewritten.
class DstcLike final : public Clusterer {
 public:
  explicit DstcLike(const DstcParams& p) : p_(p) {}
  ClustererKind kind() const override { return ClustererKind::dstc_like; }

  void observe(const workload::AccessRecord& rec, const sim::PageMap& pages) override {
    window_.observe(rec, pages);
    if (++in_window_ >= p_.n) consolidate();
  }

  RoundResult after_transaction(sim::PageMap& pages, sim::BufferPool& buffer) override {
    ++txns_;
    if (++since_round_ < p_.p) return {};
    since_round_ = 0;

    std::set<PageId> chosen;
    std::map<Transition, double> edges;
    for (const auto& [t, wt] : weights_) {
      if (!pages.contains(t.first) || !pages.contains(t.second)) continue;
      const auto pa = pages.page_of(t.first);
      const auto pb = pages.page_of(t.second);
      if (wt >= p_.T_fe && pa != pb) {
        chosen.insert(pa);
        chosen.insert(pb);
      }
    }
    if (chosen.empty() || chosen.size() < p_.n_p) return {};
    for (const auto& [t, wt] : weights_) {
      if (wt >= p_.T_fc && pages.contains(t.first) && pages.contains(t.second) &&
          chosen.count(pages.page_of(t.first)) && chosen.count(pages.page_of(t.second))) {
        edges[t] = wt;
      }
    }

    // Resident pages are filled first so the new clusters start out in memory.
    std::vector<PageId> ids(chosen.begin(), chosen.end());
    std::stable_partition(ids.begin(), ids.end(), [&](PageId p) { return buffer.contains(p); });
    auto groups = greedy_groups(edges, p_.T_fc, pages);
    append_leftovers(pages, ids, groups);

    RoundResult r;
    r.transaction = txns_;
    for (PageId p : ids) r.read_io += buffer.contains(p) ? 0 : 1;
    const Snapshot before(pages, ids);
    const auto extra = pages.repack_groups(ids, groups);
    for (PageId p : ids) {
      if (!before.changed(pages, p)) continue;
      if (buffer.absorb_cluster_write(p)) {
        ++r.deferred_writes;
      } else {
        ++r.write_io;
      }
    }
    r.write_io += extra.size();
    r.pages_reclustered = ids.size();
    r.new_pages = extra.size();
    for (const auto& g : groups) r.objects_moved += g.size();
    rounds_.push_back(r);
    return r;
  }

 private:
  void consolidate() {
    for (auto& [t, wt] : weights_) wt *= p_.w;
    for (const auto& [t, c] : window_.transitions()) weights_[undirected(t)] += c;
    std::erase_if(weights_, [&](const auto& kv) { return kv.second < p_.T_fa; });
    window_.reset();
    in_window_ = 0;
  }

  DstcParams p_;
  UsageStats window_;
  std::map<Transition, double> weights_;
  std::uint32_t in_window_ = 0;
  std::uint32_t since_round_ = 0;
  std::uint64_t txns_ = 0;
};

/// Conservative: at most MaxD badly used pages per round; their hot objects and the
/// objects used with them move to a fresh page.
class Dro final : public Clusterer {
 public:
  explicit Dro(const DroParams& p)
      : p_(p), interval_(std::max<std::uint32_t>(1, static_cast<std::uint32_t>(std::lround(1.0 / p.PCRate)))) {}
  ClustererKind kind() const override { return ClustererKind::dro; }

  void observe(const workload::AccessRecord& rec, const sim::PageMap& pages) override {
    if (!p_.SUInd && rec.op_kind == workload::OpKind::sequential_update) return;
    window_.observe(rec, pages);
    records_.push_back(rec);
  }

  RoundResult after_transaction(sim::PageMap& pages, sim::BufferPool& buffer) override {
    ++txns_;
    if (++since_round_ < interval_) return {};
    since_round_ = 0;
    ++round_;
    RoundResult r = analyse(pages, buffer);
    window_.reset();
    records_.clear();
    if (r.pages_reclustered > 0) rounds_.push_back(r);
    return r;
  }

 private:
  RoundResult analyse(sim::PageMap& pages, sim::BufferPool& buffer) {
    RoundResult r;
    r.transaction = txns_;
    std::size_t used = 0;
    std::size_t resident = 0;
    struct Cand {
      PageId page;
      double badness;
    };
    std::vector<Cand> cands;
    for (const auto& [page, hits] : window_.page_access_counts()) {
      const auto& objs = pages.objects_on(page);
      std::size_t u = 0;
      for (Oid oid : objs) u += window_.frequency(oid) > 0 ? 1 : 0;
      used += u;
      resident += objs.size();
      const double rate = objs.empty() ? 0.0 : static_cast<double>(u) / static_cast<double>(objs.size());
      if (rate < p_.MinUR || rate >= p_.MaxRR) continue;
      if (round_ - birth(page) < p_.MinLT) continue;
      cands.push_back({page, (1.0 - rate) * hits});
    }
    if (resident == 0 || static_cast<double>(used) / static_cast<double>(resident) >= p_.MaxRR) return r;

    const auto cap = std::min<std::size_t>(
        p_.MaxD, static_cast<std::size_t>(std::floor(p_.MaxDR * static_cast<double>(pages.page_count()))));
    std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
      return a.badness != b.badness ? a.badness > b.badness : a.page < b.page;
    });
    if (cands.size() > cap) cands.resize(cap);

    std::unordered_set<Oid> moved;
    for (const auto& c : cands) {
      auto unit = build_unit(pages, c.page, moved);
      if (unit.size() < 2) continue;
      std::set<PageId> sources;
      for (Oid oid : unit) sources.insert(pages.page_of(oid));
      for (PageId p : sources) r.read_io += buffer.contains(p) ? 0 : 1;
      const auto dest = pages.relocate(unit);
      for (PageId p : dest) birth_[p] = round_;
      r.write_io += dest.size();
      r.new_pages += dest.size();
      r.objects_moved += unit.size();
      ++r.pages_reclustered;
      moved.insert(unit.begin(), unit.end());
    }
    return r;
  }

  std::vector<Oid> build_unit(const sim::PageMap& pages, PageId page, const std::unordered_set<Oid>& moved) const {
    std::vector<Oid> hot;
    for (Oid oid : pages.objects_on(page)) {
      if (window_.frequency(oid) > 0 && !moved.count(oid)) hot.push_back(oid);
    }
    std::sort(hot.begin(), hot.end(), [&](Oid a, Oid b) {
      const auto fa = window_.frequency(a), fb = window_.frequency(b);
      return fa != fb ? fa > fb : a < b;
    });
    const std::unordered_set<Oid> hot_set(hot.begin(), hot.end());

    std::unordered_map<Oid, std::uint32_t> score;
    for (const auto& rec : records_) {
      const bool hit = std::any_of(rec.accessed.begin(), rec.accessed.end(),
                                   [&](const auto& a) { return hot_set.count(a.oid) != 0; });
      if (!hit) continue;
      std::unordered_set<Oid> seen;
      for (const auto& a : rec.accessed) {
        if (hot_set.count(a.oid) || moved.count(a.oid) || !pages.contains(a.oid)) continue;
        if (seen.insert(a.oid).second) ++score[a.oid];
      }
    }
    std::vector<Oid> mates;
    for (const auto& [oid, _] : score) mates.push_back(oid);
    std::sort(mates.begin(), mates.end(), [&](Oid a, Oid b) {
      if (score[a] != score[b]) return score[a] > score[b];
      const auto fa = window_.frequency(a), fb = window_.frequency(b);
      return fa != fb ? fa > fb : a < b;
    });

    std::vector<Oid> unit;
    std::uint32_t bytes = 0;
    for (const auto* list : {&hot, &mates}) {
      for (Oid oid : *list) {
        const auto sz = pages.object_size(oid);
        if (bytes + sz > pages.page_size()) continue;
        bytes += sz;
        unit.push_back(oid);
      }
    }
    return unit;
  }

  std::uint64_t birth(PageId p) const {
    const auto it = birth_.find(p);
    return it == birth_.end() ? 0 : it->second;
  }

  DroParams p_;
  std::uint32_t interval_;
  UsageStats window_;
  std::vector<workload::AccessRecord> records_;
  std::unordered_map<PageId, std::uint64_t> birth_;
  std::uint32_t since_round_ = 0;
  std::uint64_t round_ = 0;
  std::uint64_t txns_ = 0;
};

/// Opportunistic: only buffer-resident pages are rewritten; dirty pages are written for free.
class Opcf final : public Clusterer {
 public:
  Opcf(const OpcfParams& p, bool graph) : p_(p), graph_(graph) {}
  ClustererKind kind() const override { return graph_ ? ClustererKind::opcf_gp : ClustererKind::opcf_prp; }

  void observe(const workload::AccessRecord& rec, const sim::PageMap&) override {
    window_.push_back(rec);
    while (window_.size() > p_.N) window_.pop_front();
  }

  RoundResult after_transaction(sim::PageMap& pages, sim::BufferPool& buffer) override {
    ++txns_;
    if (++since_round_ < p_.NPA) return {};
    since_round_ = 0;

    UsageStats st;
    for (const auto& rec : window_) st.observe(rec, pages);
    struct Cand {
      PageId page;
      double badness;
    };
    std::vector<Cand> cands;
    for (const auto& [page, hits] : st.page_access_counts()) {
      if (!buffer.contains(page)) continue;
      const double b = st.badness(page, pages);
      if (b >= p_.CBT) cands.push_back({page, b});
    }
    if (cands.empty()) return {};
    std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
      return a.badness != b.badness ? a.badness > b.badness : a.page < b.page;
    });
    if (cands.size() > p_.NRI) cands.resize(p_.NRI);
    std::vector<PageId> ids;
    for (const auto& c : cands) ids.push_back(c.page);

    std::vector<std::vector<Oid>> groups;
    if (graph_) {
      std::unordered_set<PageId> chosen(ids.begin(), ids.end());
      std::map<Transition, double> edges;
      for (const auto& [t, c] : st.transitions()) {
        if (pages.contains(t.first) && pages.contains(t.second) && chosen.count(pages.page_of(t.first)) &&
            chosen.count(pages.page_of(t.second))) {
          edges[undirected(t)] += c;
        }
      }
      groups = greedy_groups(edges, 0.0, pages);
      append_hot_singletons(pages, ids, st, groups);
    } else {
      append_hot_singletons(pages, ids, st, groups);
    }

    RoundResult r;
    r.transaction = txns_;
    const Snapshot before(pages, ids);
    const auto extra = pages.repack_groups(ids, groups);
    // Candidates are resident: their rewrites are absorbed, and cost nothing extra
    // when a transaction already dirtied the page.
    for (PageId p : ids) {
      if (!before.changed(pages, p)) continue;
      if (buffer.absorb_cluster_write(p)) {
        ++r.deferred_writes;
      } else {
        ++r.write_io;
      }
    }
    r.write_io += extra.size();
    r.pages_reclustered = ids.size();
    r.new_pages = extra.size();
    for (const auto& g : groups) r.objects_moved += g.size();
    rounds_.push_back(r);
    return r;
  }

 private:
  /// Remaining objects of the pages as singletons, most frequently accessed first.
  static void append_hot_singletons(const sim::PageMap& pages, std::span<const PageId> ids, const UsageStats& st,
                                    std::vector<std::vector<Oid>>& groups) {
    std::unordered_set<Oid> grouped;
    for (const auto& g : groups) grouped.insert(g.begin(), g.end());
    std::vector<Oid> rest;
    for (PageId p : ids) {
      for (Oid oid : pages.objects_on(p)) {
        if (!grouped.count(oid)) rest.push_back(oid);
      }
    }
    std::stable_sort(rest.begin(), rest.end(),
                     [&](Oid a, Oid b) { return st.frequency(a) > st.frequency(b); });
    for (Oid oid : rest) groups.push_back({oid});
  }

  OpcfParams p_;
  bool graph_;
  std::deque<workload::AccessRecord> window_;
  std::uint32_t since_round_ = 0;
  std::uint64_t txns_ = 0;
};

}  // namespace

std::vector<std::vector<Oid>> greedy_groups(const std::map<Transition, double>& edges, double min_weight,
                                            const sim::PageMap& pages) {
  std::vector<std::pair<Transition, double>> order(edges.begin(), edges.end());
  std::stable_sort(order.begin(), order.end(), [](const auto& a, const auto& b) { return a.second > b.second; });

  std::unordered_map<Oid, std::size_t> group_of;
  std::vector<std::vector<Oid>> groups;
  std::vector<std::uint32_t> bytes;
  std::vector<bool> alive;
  auto group = [&](Oid oid) {
    if (auto it = group_of.find(oid); it != group_of.end()) return it->second;
    group_of[oid] = groups.size();
    groups.push_back({oid});
    bytes.push_back(pages.object_size(oid));
    alive.push_back(true);
    return groups.size() - 1;
  };
  for (const auto& [t, wt] : order) {
    if (wt < min_weight || (min_weight <= 0.0 && wt <= 0.0)) continue;
    const auto a = group(t.first);
    const auto b = group(t.second);
    if (a == b || bytes[a] + bytes[b] > pages.page_size()) continue;
    for (Oid oid : groups[b]) group_of[oid] = a;
    groups[a].insert(groups[a].end(), groups[b].begin(), groups[b].end());
    bytes[a] += bytes[b];
    groups[b].clear();
    alive[b] = false;
  }
  std::vector<std::vector<Oid>> out;
  for (std::size_t k = 0; k < groups.size(); ++k) {
    if (alive[k]) out.push_back(std::move(groups[k]));
  }
  return out;
}

std::unique_ptr<Clusterer> make_clusterer(const ClustererConfig& cfg) {
  cfg.validate();
  switch (cfg.kind) {
    case ClustererKind::none: return std::make_unique<NoClustering>();
    case ClustererKind::dstc_like: return std::make_unique<DstcLike>(cfg.dstc);
    case ClustererKind::dro: return std::make_unique<Dro>(cfg.dro);
    case ClustererKind::opcf_gp: return std::make_unique<Opcf>(cfg.opcf, true);
    case ClustererKind::opcf_prp: return std::make_unique<Opcf>(cfg.opcf, false);
  }
  throw ParameterError("unknown clusterer");
}

}  // namespace doef::cluster
