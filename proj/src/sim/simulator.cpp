#include "doef/sim/simulator.hpp"

#include <cmath>
#include <string>

namespace doef::sim {

void SimConfig::validate() const {
  if (page_size == 0) throw ParameterError("PAGE-SIZE must be positive");
  if (buffer_pages == 0) throw ParameterError("buffer needs at least one page");
  if (multiprogramming != 1) throw ParameterError("only MULTIPROGRAMMING = 1 is supported");
}

std::size_t pages_for_megabytes(double megabytes, std::uint32_t page_size) {
  if (!(megabytes > 0.0)) throw ParameterError("BUFFER-MB must be positive");
  const auto pages = static_cast<std::size_t>(std::floor(megabytes * 1024.0 * 1024.0 / page_size));
  if (pages == 0) throw ParameterError("buffer smaller than one page");
  return pages;
}

Simulator::Simulator(PageMap pages, const SimConfig& cfg, cluster::Clusterer* clusterer, const ocb::Database* db)
    : pages_(std::move(pages)), cfg_(cfg), buffer_(cfg.buffer_pages, cfg.replacement), clusterer_(clusterer), db_(db) {
  cfg.validate();
  if (pages_.page_size() != cfg.page_size) throw ParameterError("page map and configuration disagree on page size");
}

PageId Simulator::resolve(Oid oid) {
  if (pages_.contains(oid)) return pages_.page_of(oid);
  if (db_ && oid < db_->objects.size()) return pages_.append(oid, db_->objects[oid].filler_size);
  throw TraceError("trace references unknown object " + std::to_string(oid));
}

void Simulator::process(const workload::AccessRecord& rec) {
  for (const auto& a : rec.accessed) {
    const auto page = resolve(a.oid);
    const auto res = buffer_.probe(page, a.mode == workload::AccessMode::write);
    if (res.hit) {
      ++metrics_.buffer_hits;
    } else {
      ++metrics_.txn_read_io;
    }
    if (res.evicted_dirty) ++metrics_.txn_write_io;
    if (res.evicted_cluster_dirty) ++metrics_.clust_write_io;
  }
  ++metrics_.transactions;
  if (clusterer_) {
    clusterer_->observe(rec, pages_);
    const auto round = clusterer_->after_transaction(pages_, buffer_);
    metrics_.clust_read_io += round.read_io;
    metrics_.clust_write_io += round.write_io;
  }
  metrics_.total_io = metrics_.txn_read_io + metrics_.clust_read_io + metrics_.clust_write_io;
}

void Simulator::finish() {
  metrics_.clust_write_io += buffer_.flush_cluster_dirty();
  metrics_.total_io = metrics_.txn_read_io + metrics_.clust_read_io + metrics_.clust_write_io;
}

SimMetrics run_trace(std::span<const workload::AccessRecord> trace, PageMap pages, const SimConfig& cfg,
                     cluster::Clusterer* clusterer, const ocb::Database* db) {
  Simulator sim(std::move(pages), cfg, clusterer, db);
  for (const auto& rec : trace) sim.process(rec);
  sim.finish();
  return sim.metrics();
}

}  // namespace doef::sim
