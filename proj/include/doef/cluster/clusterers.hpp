#pragma once

#include <deque>
#include <memory>
#include <string_view>
#include <vector>

#include "doef/cluster/usage_stats.hpp"
#include "doef/sim/buffer.hpp"

namespace doef::cluster {

enum class ClustererKind { none, dstc_like, dro, opcf_gp, opcf_prp };

std::string_view to_string(ClustererKind k);
/// Short CLI names (nc, dstc, dro, gp, prp) or the full names.
ClustererKind parse_clusterer_kind(std::string_view s);
std::string_view short_name(ClustererKind k);

struct DstcParams {
  std::uint32_t n = 200;    ///< observation period (transactions)
  std::uint32_t n_p = 1;    ///< minimum pages selected for a round to run
  std::uint32_t p = 1000;   ///< transactions between re-clustering rounds
  double T_fa = 1.0;        ///< weight below which a consolidated transition is forgotten
  double T_fe = 1.0;        ///< weight at which a transition selects its pages
  double T_fc = 1.0;        ///< weight at which two objects are grouped
  double w = 0.3;           ///< decay applied to older consolidated weights
};

struct DroParams {
  double MinUR = 0.001;     ///< minimum page usage rate to be a candidate
  std::uint32_t MinLT = 2;  ///< minimum page lifetime in rounds
  double PCRate = 0.02;     ///< rounds per transaction
  std::uint32_t MaxD = 1;   ///< maximum pages re-clustered per round
  double MaxDR = 0.2;       ///< maximum fraction of all pages re-clustered per round
  double MaxRR = 0.95;      ///< usage rate regarded as well clustered
  bool SUInd = true;        ///< count sequential updates in the statistics
};

struct OpcfParams {
  std::uint32_t N = 200;    ///< sliding statistics window (transactions)
  double CBT = 0.1;         ///< minimum badness of a candidate page
  std::uint32_t NPA = 50;   ///< transactions between analyses
  std::uint32_t NRI = 25;   ///< maximum pages re-clustered per analysis
};

struct ClustererConfig {
  ClustererKind kind = ClustererKind::none;
  DstcParams dstc;
  DroParams dro;
  OpcfParams opcf;

  void validate() const;
};

struct RoundResult {
  std::uint64_t transaction = 0;       ///< transactions seen when the round ran
  std::uint64_t read_io = 0;
  std::uint64_t write_io = 0;            ///< written through now
  std::uint64_t deferred_writes = 0;     ///< absorbed by resident pages
  std::size_t pages_reclustered = 0;   ///< existing pages selected and rewritten
  std::size_t new_pages = 0;           ///< pages allocated by the round
  std::size_t objects_moved = 0;
};

class Clusterer {
 public:
  virtual ~Clusterer() = default;
  virtual ClustererKind kind() const = 0;

  /// Called once per transaction, after its accesses were served.
  virtual void observe(const workload::AccessRecord& rec, const sim::PageMap& pages) = 0;

  /// Runs a re-clustering round when one is due. Returns the round's immediate cost
  /// (zero when none ran). Rewrites of resident pages are absorbed by the buffer and
  /// paid when the page is flushed.
  virtual RoundResult after_transaction(sim::PageMap& pages, sim::BufferPool& buffer) = 0;

  const std::vector<RoundResult>& rounds() const { return rounds_; }

 protected:
  std::vector<RoundResult> rounds_;
};

std::unique_ptr<Clusterer> make_clusterer(const ClustererConfig& cfg);

/// Groups objects greedily along weighted edges (heaviest first) while a group's
/// bytes fit in one page. Returns groups ordered by their heaviest edge; objects
/// without a qualifying edge are not returned.
std::vector<std::vector<Oid>> greedy_groups(const std::map<Transition, double>& edges, double min_weight,
                                            const sim::PageMap& pages);

}  // namespace doef::cluster
