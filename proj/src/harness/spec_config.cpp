#include "doef/harness/spec_config.hpp"

#include <sstream>

#include "doef/harness/report.hpp"

namespace doef::harness {
namespace {

const std::set<std::string, std::less<>>& known_keys() {
  static const std::set<std::string, std::less<>> keys{
      "NAME", "SEED", "TRANSACTIONS", "CLUSTERERS",
      // database
      "NC", "MAXNREF", "BASESIZE", "NO", "NREFT", "ATTRANGE", "CLOCREF", "OLOCREF",
      // workload
      "OP", "DEPTH", "REVERSE", "NRND", "NTEST", "NUPDT", "HIER-REF-TYPE",
      // regions and protocols
      "HR-SIZE", "INIT-PROB-W", "LOWEST-PROB-W", "HIGHEST-PROB-W", "PROB-W-INCR-SIZE", "OBJECT-ASSIGN-METHOD",
      "INIT-DIR", "PROTOCOL", "H", "H-VALUES", "N-REGIONS", "CYCLE-REGION-SIZE",
      // dependencies
      "SELECTION", "INTEGRATION", "R", "D", "C", "U", "RANDOM-DEP-PROB", "SREF-DEP-PROB", "DREF-DEP-PROB",
      "TRAVERSED-DEP-PROB", "CLASS-DEP-PROB", "RANDOM-HOT-FRACTION", "RANDOM-HOT-PROB",
      // storage
      "PAGE-SIZE", "BUFFER-PAGES", "BUFFER-MB", "REPLACEMENT", "PLACEMENT", "MULTIPROGRAMMING",
      // clustering
      "n", "n_p", "p", "T_fa", "T_fe", "T_fc", "w", "MinUR", "MinLT", "PCRate", "MaxD", "MaxDR", "MaxRR", "SUInd",
      "N", "CBT", "NPA", "NRI"};
  return keys;
}

std::uint32_t u32(const Config& cfg, std::string_view key, std::uint32_t fallback) {
  const auto v = cfg.get_uint(key);
  if (!v) return fallback;
  if (*v > 0xffffffffULL) throw ParameterError("config key " + std::string(key) + " out of range");
  return static_cast<std::uint32_t>(*v);
}

template <typename T>
void set_if(const std::optional<T>& v, T& target) {
  if (v) target = *v;
}

std::string join(const std::vector<double>& values) {
  std::string out;
  for (double v : values) {
    if (!out.empty()) out += ", ";
    out += format_h(v);
  }
  return out;
}

}  // namespace

void apply_config(const Config& cfg, ExperimentSpec& spec) {
  if (const auto unknown = cfg.unknown_keys(known_keys()); !unknown.empty()) {
    std::string list;
    for (const auto& k : unknown) list += (list.empty() ? "" : ", ") + k;
    throw ParameterError("unknown configuration keys: " + list);
  }

  set_if(cfg.get("NAME"), spec.name);
  set_if(cfg.get_uint("SEED"), spec.seed);
  if (auto v = cfg.get_uint("TRANSACTIONS")) spec.transactions = *v;
  if (auto v = cfg.get_strings("CLUSTERERS")) {
    spec.clusterers.clear();
    for (const auto& name : *v) spec.clusterers.push_back(cluster::parse_clusterer_kind(name));
  }

  auto& db = spec.db;
  db.nc = u32(cfg, "NC", db.nc);
  db.maxnref = u32(cfg, "MAXNREF", db.maxnref);
  if (auto v = cfg.get_doubles("BASESIZE")) {
    if (v->size() == 1) {
      db.basesize = static_cast<std::uint32_t>(v->front());
      db.basesize_table.clear();
    } else {
      db.basesize_table.clear();
      for (double b : *v) db.basesize_table.push_back(static_cast<std::uint32_t>(b));
    }
  }
  db.no = u32(cfg, "NO", db.no);
  db.nreft = u32(cfg, "NREFT", db.nreft);
  db.attrange = u32(cfg, "ATTRANGE", db.attrange);
  if (cfg.contains("CLOCREF")) db.clocref = u32(cfg, "CLOCREF", 0);
  if (cfg.contains("OLOCREF")) db.olocref = u32(cfg, "OLOCREF", 0);

  auto& wl = spec.workload;
  if (auto v = cfg.get("OP")) wl.op_kind = workload::parse_op_kind(*v);
  wl.depth = u32(cfg, "DEPTH", wl.depth);
  set_if(cfg.get_bool("REVERSE"), wl.reverse);
  wl.nrnd = u32(cfg, "NRND", wl.nrnd);
  wl.ntest = u32(cfg, "NTEST", wl.ntest);
  wl.nupdt = u32(cfg, "NUPDT", wl.nupdt);
  wl.hier_ref_type = u32(cfg, "HIER-REF-TYPE", wl.hier_ref_type);

  auto& sel = spec.selector;
  auto& reg = sel.regional;
  auto& hr = reg.regions;
  set_if(cfg.get_double("HR-SIZE"), hr.hr_size);
  if (auto v = cfg.get_double("INIT-PROB-W")) hr.init_prob_w = *v;
  set_if(cfg.get_double("LOWEST-PROB-W"), hr.lowest_prob_w);
  set_if(cfg.get_double("HIGHEST-PROB-W"), hr.highest_prob_w);
  set_if(cfg.get_double("PROB-W-INCR-SIZE"), hr.prob_w_incr_size);
  if (auto v = cfg.get("OBJECT-ASSIGN-METHOD")) hr.assign_method = def::parse_assign_method(*v);
  if (auto v = cfg.get("INIT-DIR")) hr.init_dir = def::parse_direction(*v);
  if (auto v = cfg.get("PROTOCOL")) reg.protocol = def::parse_regional_kind(*v);
  if (auto v = cfg.get_double("H")) spec.h_values = {*v};
  if (auto v = cfg.get_doubles("H-VALUES")) spec.h_values = *v;
  if (auto v = cfg.get_uint("N-REGIONS")) reg.n_regions = *v;
  set_if(cfg.get_double("CYCLE-REGION-SIZE"), reg.cycle_region_size);

  if (auto v = cfg.get("SELECTION")) sel.mode = def::parse_selector_mode(*v);
  if (auto v = cfg.get_bool("INTEGRATION")) {
    if (*v) {
      sel.mode = def::SelectorMode::integrated;
    } else if (sel.mode == def::SelectorMode::integrated) {
      sel.mode = def::SelectorMode::hybrid;
    }
  }
  auto& dep = sel.dependency;
  if (auto v = cfg.get_uint("R")) dep.r = *v;
  if (auto v = cfg.get_uint("D")) dep.d = *v;
  set_if(cfg.get_double("C"), dep.c);
  set_if(cfg.get_double("U"), dep.u);
  set_if(cfg.get_double("RANDOM-DEP-PROB"), dep.random_dep_prob);
  set_if(cfg.get_double("SREF-DEP-PROB"), dep.sref_dep_prob);
  set_if(cfg.get_double("DREF-DEP-PROB"), dep.dref_dep_prob);
  set_if(cfg.get_double("TRAVERSED-DEP-PROB"), dep.traversed_dep_prob);
  set_if(cfg.get_double("CLASS-DEP-PROB"), dep.class_dep_prob);
  set_if(cfg.get_double("RANDOM-HOT-FRACTION"), sel.random_hot_fraction);
  set_if(cfg.get_double("RANDOM-HOT-PROB"), sel.random_hot_prob);

  auto& sm = spec.sim;
  sm.page_size = u32(cfg, "PAGE-SIZE", sm.page_size);
  if (cfg.contains("BUFFER-PAGES") && cfg.contains("BUFFER-MB")) {
    throw ParameterError("give either BUFFER-PAGES or BUFFER-MB, not both");
  }
  if (auto v = cfg.get_uint("BUFFER-PAGES")) sm.buffer_pages = *v;
  if (auto v = cfg.get_double("BUFFER-MB")) sm.buffer_pages = sim::pages_for_megabytes(*v, sm.page_size);
  if (auto v = cfg.get("REPLACEMENT")) sm.replacement = sim::parse_replacement(*v);
  if (auto v = cfg.get("PLACEMENT"); v && *v != "sequential") {
    throw ParameterError("only sequential PLACEMENT is supported");
  }
  sm.multiprogramming = u32(cfg, "MULTIPROGRAMMING", sm.multiprogramming);

  auto& cl = spec.clustering;
  cl.dstc.n = u32(cfg, "n", cl.dstc.n);
  cl.dstc.n_p = u32(cfg, "n_p", cl.dstc.n_p);
  cl.dstc.p = u32(cfg, "p", cl.dstc.p);
  set_if(cfg.get_double("T_fa"), cl.dstc.T_fa);
  set_if(cfg.get_double("T_fe"), cl.dstc.T_fe);
  set_if(cfg.get_double("T_fc"), cl.dstc.T_fc);
  set_if(cfg.get_double("w"), cl.dstc.w);
  set_if(cfg.get_double("MinUR"), cl.dro.MinUR);
  cl.dro.MinLT = u32(cfg, "MinLT", cl.dro.MinLT);
  set_if(cfg.get_double("PCRate"), cl.dro.PCRate);
  cl.dro.MaxD = u32(cfg, "MaxD", cl.dro.MaxD);
  set_if(cfg.get_double("MaxDR"), cl.dro.MaxDR);
  set_if(cfg.get_double("MaxRR"), cl.dro.MaxRR);
  set_if(cfg.get_bool("SUInd"), cl.dro.SUInd);
  cl.opcf.N = u32(cfg, "N", cl.opcf.N);
  set_if(cfg.get_double("CBT"), cl.opcf.CBT);
  cl.opcf.NPA = u32(cfg, "NPA", cl.opcf.NPA);
  cl.opcf.NRI = u32(cfg, "NRI", cl.opcf.NRI);
}

Config to_config(const ExperimentSpec& spec) {
  Config c;
  auto num = [](auto v) {
    std::ostringstream os;
    if constexpr (std::is_floating_point_v<decltype(v)>) {
      os << format_h(v);
    } else {
      os << v;
    }
    return os.str();
  };
  c.set("NAME", spec.name);
  c.set("SEED", num(spec.seed));
  c.set("TRANSACTIONS", num(spec.transactions));
  std::string kinds;
  for (auto k : spec.clusterers) kinds += (kinds.empty() ? "" : ", ") + std::string(cluster::to_string(k));
  c.set("CLUSTERERS", kinds);

  const auto& db = spec.db;
  c.set("NC", num(db.nc));
  c.set("MAXNREF", num(db.maxnref));
  if (db.basesize_table.empty()) {
    c.set("BASESIZE", num(db.basesize));
  } else {
    std::vector<double> t(db.basesize_table.begin(), db.basesize_table.end());
    c.set("BASESIZE", join(t));
  }
  c.set("NO", num(db.no));
  c.set("NREFT", num(db.nreft));
  c.set("ATTRANGE", num(db.attrange));
  if (db.clocref) c.set("CLOCREF", num(*db.clocref));
  if (db.olocref) c.set("OLOCREF", num(*db.olocref));

  const auto& wl = spec.workload;
  c.set("OP", std::string(workload::to_string(wl.op_kind)));
  c.set("DEPTH", num(wl.depth));
  c.set("REVERSE", wl.reverse ? "on" : "off");
  c.set("NRND", num(wl.nrnd));
  c.set("NTEST", num(wl.ntest));
  c.set("NUPDT", num(wl.nupdt));
  c.set("HIER-REF-TYPE", num(wl.hier_ref_type));

  const auto& sel = spec.selector;
  const auto& reg = sel.regional;
  const auto& hr = reg.regions;
  c.set("HR-SIZE", num(hr.hr_size));
  if (hr.init_prob_w) c.set("INIT-PROB-W", num(*hr.init_prob_w));
  c.set("LOWEST-PROB-W", num(hr.lowest_prob_w));
  c.set("HIGHEST-PROB-W", num(hr.highest_prob_w));
  c.set("PROB-W-INCR-SIZE", num(hr.prob_w_incr_size));
  c.set("OBJECT-ASSIGN-METHOD", std::string(def::to_string(hr.assign_method)));
  c.set("INIT-DIR", std::string(def::to_string(hr.init_dir)));
  c.set("PROTOCOL", std::string(def::to_string(reg.protocol)));
  c.set("H-VALUES", join(spec.h_values));
  c.set("N-REGIONS", num(reg.n_regions));
  c.set("CYCLE-REGION-SIZE", num(reg.cycle_region_size));

  c.set("SELECTION", std::string(def::to_string(sel.mode)));
  const auto& dep = sel.dependency;
  c.set("R", num(dep.r));
  c.set("D", num(dep.d));
  c.set("C", num(dep.c));
  c.set("U", num(dep.u));
  c.set("RANDOM-DEP-PROB", num(dep.random_dep_prob));
  c.set("SREF-DEP-PROB", num(dep.sref_dep_prob));
  c.set("DREF-DEP-PROB", num(dep.dref_dep_prob));
  c.set("TRAVERSED-DEP-PROB", num(dep.traversed_dep_prob));
  c.set("CLASS-DEP-PROB", num(dep.class_dep_prob));
  c.set("RANDOM-HOT-FRACTION", num(sel.random_hot_fraction));
  c.set("RANDOM-HOT-PROB", num(sel.random_hot_prob));

  const auto& sm = spec.sim;
  c.set("PAGE-SIZE", num(sm.page_size));
  c.set("BUFFER-PAGES", num(sm.buffer_pages));
  c.set("REPLACEMENT", std::string(sim::to_string(sm.replacement)));
  c.set("PLACEMENT", "sequential");
  c.set("MULTIPROGRAMMING", num(sm.multiprogramming));

  const auto& cl = spec.clustering;
  c.set("n", num(cl.dstc.n));
  c.set("n_p", num(cl.dstc.n_p));
  c.set("p", num(cl.dstc.p));
  c.set("T_fa", num(cl.dstc.T_fa));
  c.set("T_fe", num(cl.dstc.T_fe));
  c.set("T_fc", num(cl.dstc.T_fc));
  c.set("w", num(cl.dstc.w));
  c.set("MinUR", num(cl.dro.MinUR));
  c.set("MinLT", num(cl.dro.MinLT));
  c.set("PCRate", num(cl.dro.PCRate));
  c.set("MaxD", num(cl.dro.MaxD));
  c.set("MaxDR", num(cl.dro.MaxDR));
  c.set("MaxRR", num(cl.dro.MaxRR));
  c.set("SUInd", cl.dro.SUInd ? "on" : "off");
  c.set("N", num(cl.opcf.N));
  c.set("CBT", num(cl.opcf.CBT));
  c.set("NPA", num(cl.opcf.NPA));
  c.set("NRI", num(cl.opcf.NRI));
  return c;
}

std::uint64_t config_hash(const ExperimentSpec& spec) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  const auto cfg = to_config(spec);
  for (const auto& [k, v] : cfg.entries()) {
    for (char ch : k + "=" + v + "\n") {
      h ^= static_cast<unsigned char>(ch);
      h *= 0x100000001b3ULL;
    }
  }
  return h;
}

}  // namespace doef::harness
