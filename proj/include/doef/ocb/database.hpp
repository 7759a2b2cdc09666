#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "doef/types.hpp"

namespace doef::ocb {

/// Database generation parameters. Field names follow the OCB parameter table.
struct SchemaParams {
  std::uint32_t nc = 50;        ///< NC: number of classes
  std::uint32_t maxnref = 10;   ///< MAXNREF: per-class max references
  std::uint32_t basesize = 50;  ///< BASESIZE: instance base size (bytes)
  std::uint32_t no = 20000;     ///< NO: total object count
  std::uint32_t nreft = 4;      ///< NREFT: number of reference types
  std::uint32_t attrange = 1;   ///< ATTRANGE: integer attributes per object
  std::optional<std::uint32_t> clocref;  ///< CLOCREF; unset means NC
  std::optional<std::uint32_t> olocref;  ///< OLOCREF; unset means NO
  /// Optional per-class BASESIZE(i); empty means every class uses `basesize`.
  std::vector<std::uint32_t> basesize_table;

  std::uint32_t class_locality() const { return clocref.value_or(nc); }
  std::uint32_t object_locality() const { return olocref.value_or(no); }
  std::uint32_t basesize_of(ClassId c) const {
    return basesize_table.empty() ? basesize : basesize_table.at(c);
  }

  /// Throws ParameterError when an invariant is violated.
  void validate() const;

  friend bool operator==(const SchemaParams&, const SchemaParams&) = default;
};

/// Reference type 0 models inheritance and type 1 composition; both must stay acyclic.
inline constexpr RefType kInheritanceRef = 0;
inline constexpr RefType kCompositionRef = 1;
std::set<RefType> default_acyclic_types(const SchemaParams& params);

struct ClassRef {
  ClassId target;
  RefType type;
  friend bool operator==(const ClassRef&, const ClassRef&) = default;
};

struct ClassSpec {
  ClassId class_id = 0;
  std::uint32_t maxnref = 0;   ///< MAXNREF(i), drawn per class
  std::uint32_t basesize = 0;  ///< BASESIZE(i)
  std::vector<ClassRef> crefs;
  std::uint32_t instance_size = 0;
  std::vector<Oid> iterator;  ///< member OIDs in ascending order

  friend bool operator==(const ClassSpec&, const ClassSpec&) = default;
};

/// basesize × (1 + |crefs|)
std::uint32_t instance_size_for(std::uint32_t basesize, std::size_t ncrefs);

struct ObjectRef {
  Oid target;
  RefType type;
  friend bool operator==(const ObjectRef&, const ObjectRef&) = default;
};

struct BackRef {
  Oid source;
  RefType type;
  friend bool operator==(const BackRef&, const BackRef&) = default;
};

struct ObjectInstance {
  Oid oid = 0;
  ClassId class_id = 0;
  std::vector<ObjectRef> orefs;
  std::vector<BackRef> backrefs;
  std::vector<std::int32_t> attributes;
  std::uint32_t filler_size = 0;
  bool alive = true;  ///< false once removed by a database evolution

  friend bool operator==(const ObjectInstance&, const ObjectInstance&) = default;
};

/// The generated object base. Immutable once built, except through
/// workload::execute with a database_evolution operation.
struct Database {
  SchemaParams params;
  std::vector<ClassSpec> classes;
  std::vector<ObjectInstance> objects;
  std::uint64_t rng_seed = 0;

  bool contains(Oid oid) const { return oid < objects.size() && objects[oid].alive; }
  const ObjectInstance& object(Oid oid) const;
  ObjectInstance& object(Oid oid);
  const ClassSpec& class_of(Oid oid) const { return classes.at(object(oid).class_id); }
  std::size_t alive_count() const;
  std::vector<Oid> alive_oids() const;

  friend bool operator==(const Database&, const Database&) = default;
};

/// Step 1: classes with references drawn uniformly from the CLOCREF window.
std::vector<ClassSpec> generate_schema(const SchemaParams& params, std::uint64_t seed);

/// Step 2: removes, per acyclic reference type, each edge that would close a cycle.
/// Edges are examined in class order then slot order; all other edges are kept.
std::vector<ClassSpec> check_consistency(std::vector<ClassSpec> classes,
                                         const std::set<RefType>& acyclic_types);

/// Step 3: NO objects assigned uniformly to classes. One ORef per class reference,
/// pointing to an instance of the referenced class inside the OLOCREF window.
Database instantiate_objects(std::vector<ClassSpec> classes, const SchemaParams& params,
                             std::uint64_t seed);

/// All three steps.
Database generate_database(const SchemaParams& params, std::uint64_t seed);

std::uint32_t object_size(const ObjectInstance& obj);

/// [id - radius, id + radius] clamped to [0, count).
struct IdWindow {
  std::uint32_t lo;
  std::uint32_t hi;
};
IdWindow clamped_window(std::uint32_t id, std::uint32_t radius, std::uint32_t count);

/// Candidate targets of class `target` inside `window`, taken from its iterator.
std::span<const Oid> members_in_window(const ClassSpec& target, IdWindow window);

}  // namespace doef::ocb
