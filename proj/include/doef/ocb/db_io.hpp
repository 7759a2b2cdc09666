#pragma once

#include <filesystem>
#include <iosfwd>

#include "doef/ocb/database.hpp"

namespace doef::ocb {

/// Line-based, versioned database format.
///
///   OCBDB 1
///   PARAMS NC NMAXREF BASESIZE NO NREFT ATTRANGE CLOCREF OLOCREF SEED
///   BASESIZE-TABLE b0 b1 ...            (only when a per-class table is used)
///   CLASS id maxnref basesize instance_size target:type;target:type;...
///   OBJECT oid class_id filler_size a0;a1;... target:type;target:type;...
///   DELETED oid
///
/// Empty lists are written as '-'. Back-references and class iterators are
/// rebuilt on load.
void write_database(std::ostream& out, const Database& db);
Database read_database(std::istream& in);

void save_database(const std::filesystem::path& path, const Database& db);
Database load_database(const std::filesystem::path& path);

}  // namespace doef::ocb
