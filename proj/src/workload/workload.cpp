#include "doef/workload/workload.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <string>
#include <unordered_set>

namespace doef::workload {
namespace {

constexpr std::array<std::string_view, 10> kOpNames = {
    "random_access",       "scan",
    "range_lookup",        "set_traversal",
    "simple_traversal",    "hierarchy_traversal",
    "stochastic_traversal", "attribute_update",
    "sequential_update",   "database_evolution",
};

// Outgoing neighbours of `oid` in traversal direction, optionally filtered by type.
template <typename F>
void for_each_neighbour(const ocb::ObjectInstance& obj, bool reverse, std::optional<RefType> type, F&& f) {
  if (reverse) {
    for (const auto& b : obj.backrefs) {
      if (!type || b.type == *type) f(b.source);
    }
  } else {
    for (const auto& r : obj.orefs) {
      if (!type || r.type == *type) f(r.target);
    }
  }
}

class Visitor {
 public:
  explicit Visitor(std::size_t n) : seen_(n, 0) {}
  bool visit(Oid oid) {
    if (seen_[oid]) return false;
    seen_[oid] = 1;
    return true;
  }

 private:
  std::vector<char> seen_;
};

void depth_first(const ocb::Database& db, Oid root, std::uint32_t depth, bool reverse,
                 std::optional<RefType> type, std::vector<Access>& out) {
  Visitor visited(db.objects.size());
  // Explicit stack of (oid, level); children pushed in reverse so stored order is followed.
  std::vector<std::pair<Oid, std::uint32_t>> stack{{root, 0}};
  std::vector<Oid> children;
  while (!stack.empty()) {
    const auto [oid, level] = stack.back();
    stack.pop_back();
    if (!visited.visit(oid)) continue;
    out.push_back({oid, AccessMode::read});
    if (level == depth) continue;
    children.clear();
    for_each_neighbour(db.objects[oid], reverse, type, [&](Oid n) {
      if (db.contains(n)) children.push_back(n);
    });
    for (auto it = children.rbegin(); it != children.rend(); ++it) stack.push_back({*it, level + 1});
  }
}

void breadth_first(const ocb::Database& db, Oid root, std::uint32_t depth, bool reverse,
                   std::vector<Access>& out) {
  Visitor visited(db.objects.size());
  std::deque<std::pair<Oid, std::uint32_t>> queue{{root, 0}};
  visited.visit(root);
  while (!queue.empty()) {
    const auto [oid, level] = queue.front();
    queue.pop_front();
    out.push_back({oid, AccessMode::read});
    if (level == depth) continue;
    for_each_neighbour(db.objects[oid], reverse, std::nullopt, [&](Oid n) {
      if (db.contains(n) && visited.visit(n)) queue.push_back({n, level + 1});
    });
  }
}

void stochastic(const ocb::Database& db, Oid root, std::uint32_t depth, bool reverse, Rng& rng,
                std::vector<Access>& out) {
  Visitor visited(db.objects.size());
  Oid cur = root;
  visited.visit(root);
  out.push_back({root, AccessMode::read});
  std::vector<Oid> next;
  for (std::uint32_t step = 0; step < depth; ++step) {
    next.clear();
    for_each_neighbour(db.objects[cur], reverse, std::nullopt, [&](Oid n) {
      if (db.contains(n)) next.push_back(n);
    });
    if (next.empty()) break;  // sink
    cur = next[uniform_int<std::size_t>(rng, 0, next.size() - 1)];
    if (visited.visit(cur)) out.push_back({cur, AccessMode::read});
  }
}

Oid random_live(const ocb::Database& db, Rng& rng) {
  if (db.objects.empty()) throw RootNotFoundError(0);
  for (;;) {
    const Oid oid = uniform_int<Oid>(rng, 0, static_cast<Oid>(db.objects.size() - 1));
    if (db.objects[oid].alive) return oid;
  }
}

void class_members(const ocb::Database& db, Oid root, AccessMode mode, std::vector<Access>& out) {
  for (Oid oid : db.class_of(root).iterator) out.push_back({oid, mode});
}

AccessRecord run(const ocb::Database& db, Oid root, const WorkloadParams& params, Rng& rng,
                 std::uint64_t seq) {
  AccessRecord rec;
  rec.seq = seq;
  rec.root_oid = root;
  rec.op_kind = params.op_kind;

  const bool needs_root = params.op_kind != OpKind::random_access &&
                          params.op_kind != OpKind::attribute_update;
  if (needs_root && !db.contains(root)) throw RootNotFoundError(root);

  switch (params.op_kind) {
    case OpKind::random_access:
      for (std::uint32_t i = 0; i < params.nrnd; ++i) rec.accessed.push_back({random_live(db, rng), AccessMode::read});
      break;
    case OpKind::scan:
    case OpKind::range_lookup:
      // Attribute tests of a range lookup read the same objects; no extra accesses.
      class_members(db, root, AccessMode::read, rec.accessed);
      break;
    case OpKind::set_traversal:
      breadth_first(db, root, params.depth, params.reverse, rec.accessed);
      break;
    case OpKind::simple_traversal:
      depth_first(db, root, params.depth, params.reverse, std::nullopt, rec.accessed);
      break;
    case OpKind::hierarchy_traversal:
      depth_first(db, root, params.depth, params.reverse, params.hier_ref_type, rec.accessed);
      break;
    case OpKind::stochastic_traversal:
      stochastic(db, root, params.depth, params.reverse, rng, rec.accessed);
      break;
    case OpKind::attribute_update:
      for (std::uint32_t i = 0; i < params.nupdt; ++i) rec.accessed.push_back({random_live(db, rng), AccessMode::write});
      break;
    case OpKind::sequential_update:
      class_members(db, root, AccessMode::write, rec.accessed);
      break;
    case OpKind::database_evolution:
      throw ParameterError("database_evolution requires a mutable database");
  }
  return rec;
}

}  // namespace

std::string_view to_string(OpKind kind) { return kOpNames.at(static_cast<std::size_t>(kind)); }

OpKind parse_op_kind(std::string_view name) {
  for (std::size_t i = 0; i < kOpNames.size(); ++i) {
    if (kOpNames[i] == name) return static_cast<OpKind>(i);
  }
  throw ParameterError("unknown operation kind '" + std::string(name) + "'");
}

bool is_deterministic_traversal(OpKind kind) {
  return kind == OpKind::simple_traversal || kind == OpKind::hierarchy_traversal ||
         kind == OpKind::set_traversal;
}

AccessRecord execute(const ocb::Database& db, Oid root, const WorkloadParams& params, Rng& rng,
                     std::uint64_t seq) {
  return run(db, root, params, rng, seq);
}

AccessRecord execute(ocb::Database& db, Oid root, const WorkloadParams& params, Rng& rng,
                     std::uint64_t seq) {
  if (params.op_kind != OpKind::database_evolution) return run(db, root, params, rng, seq);

  AccessRecord rec;
  rec.seq = seq;
  rec.op_kind = OpKind::database_evolution;
  std::unordered_set<Oid> listed;
  auto touch = [&](Oid oid) {
    if (listed.insert(oid).second) rec.accessed.push_back({oid, AccessMode::write});
  };

  const bool insert = db.alive_count() <= 1 || uniform_int<int>(rng, 0, 1) == 0;
  if (insert) {
    const Oid oid = insert_object(db, rng);
    rec.root_oid = oid;
    touch(oid);
    for (const auto& r : db.objects[oid].orefs) touch(r.target);
  } else {
    const Oid victim = random_live(db, rng);
    rec.root_oid = victim;
    touch(victim);
    for (const auto& b : db.objects[victim].backrefs) touch(b.source);
    for (const auto& r : db.objects[victim].orefs) touch(r.target);
    delete_object(db, victim);
  }
  return rec;
}

Oid insert_object(ocb::Database& db, Rng& rng) {
  const ClassId cls = db.objects[random_live(db, rng)].class_id;
  const Oid oid = static_cast<Oid>(db.objects.size());

  ocb::ObjectInstance obj;
  obj.oid = oid;
  obj.class_id = cls;
  obj.filler_size = db.classes[cls].instance_size;
  obj.attributes.resize(db.params.attrange);
  for (auto& a : obj.attributes) a = uniform_int<std::int32_t>(rng, 0, 1'000'000);

  const auto window = ocb::clamped_window(oid, db.params.object_locality(), oid + 1);
  for (const auto& cref : db.classes[cls].crefs) {
    const auto candidates = ocb::members_in_window(db.classes[cref.target], window);
    if (candidates.empty()) continue;
    obj.orefs.push_back({candidates[uniform_int<std::size_t>(rng, 0, candidates.size() - 1)], cref.type});
  }
  db.objects.push_back(std::move(obj));
  for (const auto& r : db.objects[oid].orefs) db.objects[r.target].backrefs.push_back({oid, r.type});
  db.classes[cls].iterator.push_back(oid);
  return oid;
}

void delete_object(ocb::Database& db, Oid victim) {
  auto& obj = db.object(victim);
  for (const auto& r : obj.orefs) {
    auto& br = db.objects[r.target].backrefs;
    const auto it = std::find(br.begin(), br.end(), ocb::BackRef{victim, r.type});
    if (it != br.end()) br.erase(it);
  }
  for (const auto& b : obj.backrefs) {
    auto& refs = db.objects[b.source].orefs;
    const auto it = std::find(refs.begin(), refs.end(), ocb::ObjectRef{victim, b.type});
    if (it != refs.end()) refs.erase(it);
  }
  auto& iter = db.classes[obj.class_id].iterator;
  iter.erase(std::lower_bound(iter.begin(), iter.end(), victim));
  obj.orefs.clear();
  obj.backrefs.clear();
  obj.alive = false;
}

}  // namespace doef::workload
