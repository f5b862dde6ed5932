#pragma once

// Named group types recognized by the dataset labeler.
//
// The catalog covers every isomorphism type that occurs among subgroups of
// S_n generated by two permutations for n <= 5 (plus the trivial group).
// Groups are matched by fingerprint; anything outside the catalog, e.g.
// most subgroups for n >= 6, classifies as "unknown".
//
// The default catalog is compiled into the library; the same table ships as
// data/group_catalog.tsv for reference and for loading experiments with a
// modified table.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "simplegrp/group.hpp"

namespace simplegrp {

struct CatalogEntry {
  std::string gap_id;  // e.g. "[60,5]"
  std::string name;    // e.g. "A5"
  bool simple = false;
  GroupFingerprint fingerprint;
};

inline constexpr const char* kUnknownGroupName = "unknown";

// The compiled-in catalog (16 entries, in display order).
const std::vector<CatalogEntry>& builtin_catalog();

// Byte-identical to data/group_catalog.tsv.
std::string_view builtin_catalog_text();

// Parses the TSV format described in the data file header.  Throws
// std::invalid_argument with a line number on malformed input.
std::vector<CatalogEntry> parse_catalog(std::string_view text);
std::vector<CatalogEntry> load_catalog(const std::filesystem::path& path);

// Index into builtin_catalog(), or -1 when the fingerprint is not listed.
int classify_index(const GroupFingerprint& fp);

// Catalog name for the fingerprint, or "unknown".
std::string classify(const GroupFingerprint& fp);
std::string classify(const GeneratedGroup& g);

}  // namespace simplegrp
