#include "doef/ocb/database.hpp"

#include <algorithm>
#include <functional>
#include <string>

namespace doef::ocb {
namespace {

constexpr int kSelfRetries = 8;
constexpr std::int32_t kAttributeMax = 1'000'000;

// Is `to` reachable from `from` in the adjacency lists?
bool reachable(const std::vector<std::vector<ClassId>>& adj, ClassId from, ClassId to) {
  std::vector<char> seen(adj.size(), 0);
  std::vector<ClassId> stack{from};
  while (!stack.empty()) {
    const ClassId v = stack.back();
    stack.pop_back();
    if (v == to) return true;
    if (seen[v]) continue;
    seen[v] = 1;
    for (ClassId w : adj[v]) {
      if (!seen[w]) stack.push_back(w);
    }
  }
  return false;
}

}  // namespace

void SchemaParams::validate() const {
  if (nc < 1) throw ParameterError("NC must be >= 1");
  if (no < 1) throw ParameterError("NO must be >= 1");
  if (nreft < 1) throw ParameterError("NREFT must be >= 1");
  const auto cl = class_locality();
  const auto ol = object_locality();
  if (cl < 1 || cl > nc) throw ParameterError("CLOCREF must lie in [1, NC]");
  if (ol < 1 || ol > no) throw ParameterError("OLOCREF must lie in [1, NO]");
  if (!basesize_table.empty() && basesize_table.size() != nc) {
    throw ParameterError("BASESIZE table must have NC entries");
  }
}

std::set<RefType> default_acyclic_types(const SchemaParams& params) {
  std::set<RefType> out;
  for (RefType t : {kInheritanceRef, kCompositionRef}) {
    if (t < params.nreft) out.insert(t);
  }
  return out;
}

std::uint32_t instance_size_for(std::uint32_t basesize, std::size_t ncrefs) {
  return basesize * static_cast<std::uint32_t>(1 + ncrefs);
}

IdWindow clamped_window(std::uint32_t id, std::uint32_t radius, std::uint32_t count) {
  const std::uint32_t lo = id > radius ? id - radius : 0;
  const std::uint64_t hi = std::min<std::uint64_t>(std::uint64_t{id} + radius, count - 1);
  return {lo, static_cast<std::uint32_t>(hi)};
}

std::span<const Oid> members_in_window(const ClassSpec& target, IdWindow window) {
  const auto& it = target.iterator;
  const auto first = std::lower_bound(it.begin(), it.end(), window.lo);
  const auto last = std::upper_bound(first, it.end(), window.hi);
  return {first, last};
}

std::vector<ClassSpec> generate_schema(const SchemaParams& params, std::uint64_t seed) {
  params.validate();
  Rng rng(derive_seed(seed, 1));
  std::vector<ClassSpec> classes(params.nc);
  for (ClassId c = 0; c < params.nc; ++c) {
    ClassSpec& cls = classes[c];
    cls.class_id = c;
    cls.basesize = params.basesize_of(c);
    cls.maxnref = params.maxnref == 0 ? 0 : uniform_int<std::uint32_t>(rng, 1, params.maxnref);
    const IdWindow win = clamped_window(c, params.class_locality(), params.nc);
    const std::uint32_t slots = cls.maxnref == 0 ? 0 : uniform_int<std::uint32_t>(rng, 1, cls.maxnref);
    for (std::uint32_t slot = 0; slot < slots; ++slot) {
      if (win.lo == win.hi) break;  // only the class itself in range
      std::optional<ClassId> target;
      for (int attempt = 0; attempt <= kSelfRetries; ++attempt) {
        const ClassId t = uniform_int<ClassId>(rng, win.lo, win.hi);
        if (t != c) {
          target = t;
          break;
        }
      }
      const RefType type = uniform_int<RefType>(rng, 0, params.nreft - 1);
      if (target) cls.crefs.push_back({*target, type});
    }
    cls.instance_size = instance_size_for(cls.basesize, cls.crefs.size());
  }
  return classes;
}

std::vector<ClassSpec> check_consistency(std::vector<ClassSpec> classes,
                                         const std::set<RefType>& acyclic_types) {
  for (RefType type : acyclic_types) {
    std::vector<std::vector<ClassId>> adj(classes.size());
    for (auto& cls : classes) {
      std::erase_if(cls.crefs, [&](const ClassRef& ref) {
        if (ref.type != type) return false;
        if (ref.target == cls.class_id || reachable(adj, ref.target, cls.class_id)) return true;
        adj[cls.class_id].push_back(ref.target);
        return false;
      });
    }
  }
  for (auto& cls : classes) cls.instance_size = instance_size_for(cls.basesize, cls.crefs.size());
  return classes;
}

Database instantiate_objects(std::vector<ClassSpec> classes, const SchemaParams& params,
                             std::uint64_t seed) {
  params.validate();
  if (classes.size() != params.nc) throw ParameterError("class count does not match NC");
  Rng rng(derive_seed(seed, 2));

  Database db;
  db.params = params;
  db.rng_seed = seed;
  db.objects.resize(params.no);
  for (auto& cls : classes) cls.iterator.clear();

  for (Oid oid = 0; oid < params.no; ++oid) {
    ObjectInstance& obj = db.objects[oid];
    obj.oid = oid;
    obj.class_id = uniform_int<ClassId>(rng, 0, params.nc - 1);
    obj.filler_size = classes[obj.class_id].instance_size;
    obj.attributes.resize(params.attrange);
    for (auto& a : obj.attributes) a = uniform_int<std::int32_t>(rng, 0, kAttributeMax);
    classes[obj.class_id].iterator.push_back(oid);
  }

  const std::uint32_t radius = params.object_locality();
  for (Oid oid = 0; oid < params.no; ++oid) {
    ObjectInstance& obj = db.objects[oid];
    const IdWindow win = clamped_window(oid, radius, params.no);
    for (const ClassRef& cref : classes[obj.class_id].crefs) {
      const auto candidates = members_in_window(classes[cref.target], win);
      if (candidates.empty()) continue;
      const Oid target = candidates[uniform_int<std::size_t>(rng, 0, candidates.size() - 1)];
      obj.orefs.push_back({target, cref.type});
    }
  }
  for (const ObjectInstance& obj : db.objects) {
    for (const ObjectRef& ref : obj.orefs) db.objects[ref.target].backrefs.push_back({obj.oid, ref.type});
  }

  db.classes = std::move(classes);
  return db;
}

Database generate_database(const SchemaParams& params, std::uint64_t seed) {
  auto classes = check_consistency(generate_schema(params, seed), default_acyclic_types(params));
  return instantiate_objects(std::move(classes), params, seed);
}

std::uint32_t object_size(const ObjectInstance& obj) { return obj.filler_size; }

const ObjectInstance& Database::object(Oid oid) const {
  if (!contains(oid)) throw RootNotFoundError(oid);
  return objects[oid];
}

ObjectInstance& Database::object(Oid oid) {
  if (!contains(oid)) throw RootNotFoundError(oid);
  return objects[oid];
}

std::size_t Database::alive_count() const {
  return static_cast<std::size_t>(
      std::count_if(objects.begin(), objects.end(), [](const auto& o) { return o.alive; }));
}

std::vector<Oid> Database::alive_oids() const {
  std::vector<Oid> out;
  out.reserve(objects.size());
  for (const auto& o : objects) {
    if (o.alive) out.push_back(o.oid);
  }
  return out;
}

}  // namespace doef::ocb
