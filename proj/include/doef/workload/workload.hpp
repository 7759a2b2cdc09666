#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "doef/ocb/database.hpp"

namespace doef::workload {

enum class OpKind {
  random_access,
  scan,
  range_lookup,
  set_traversal,
  simple_traversal,
  hierarchy_traversal,
  stochastic_traversal,
  attribute_update,
  sequential_update,
  database_evolution,
};

std::string_view to_string(OpKind kind);
OpKind parse_op_kind(std::string_view name);

/// True for operations whose visited set is a pure function of the root.
bool is_deterministic_traversal(OpKind kind);

enum class AccessMode : std::uint8_t { read, write };

struct Access {
  Oid oid;
  AccessMode mode;
  friend bool operator==(const Access&, const Access&) = default;
};

/// One transaction: the objects touched, in visit order.
struct AccessRecord {
  std::uint64_t seq = 0;
  Oid root_oid = 0;
  OpKind op_kind = OpKind::simple_traversal;
  std::vector<Access> accessed;
  friend bool operator==(const AccessRecord&, const AccessRecord&) = default;
};

struct WorkloadParams {
  OpKind op_kind = OpKind::simple_traversal;
  std::uint32_t depth = 2;  ///< reference hops from the root
  bool reverse = false;     ///< follow back-references instead of references
  std::uint32_t nrnd = 50;
  std::uint32_t ntest = 1;
  std::uint32_t nupdt = 50;
  RefType hier_ref_type = ocb::kInheritanceRef;
};

/// Runs one operation from `root` against an immutable database.
/// database_evolution is rejected here; use the mutable overload.
AccessRecord execute(const ocb::Database& db, Oid root, const WorkloadParams& params, Rng& rng,
                     std::uint64_t seq = 0);

/// Same as above, additionally supporting database_evolution (insert or delete one object).
AccessRecord execute(ocb::Database& db, Oid root, const WorkloadParams& params, Rng& rng,
                     std::uint64_t seq = 0);

/// Inserts one object cloned from the class of a random live object. Returns its OID.
Oid insert_object(ocb::Database& db, Rng& rng);

/// Removes `victim`, detaching every reference to and from it.
void delete_object(ocb::Database& db, Oid victim);

}  // namespace doef::workload
