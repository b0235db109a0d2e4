#pragma once

#include <filesystem>
#include <istream>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "dtifuse/core.hpp"

namespace dtifuse {

struct CatalogReport {
  std::size_t rows = 0;
  std::size_t skipped = 0;
  std::size_t duplicates = 0;
  std::vector<std::string> diagnostics;
};

/// Drug and target records keyed by normalized name. Later duplicates
/// replace earlier ones.
class EntityCatalog {
 public:
  void add_drug(DrugRecord d);
  void add_target(TargetRecord t);

  const DrugRecord* find_drug(const EntityId& id) const;
  const TargetRecord* find_target(const EntityId& id) const;

  std::size_t drug_count() const noexcept { return drugs_.size(); }
  std::size_t target_count() const noexcept { return targets_.size(); }

 private:
  std::unordered_map<std::string, DrugRecord> drugs_;
  std::unordered_map<std::string, TargetRecord> targets_;
};

// Drug table: `name<TAB>smiles`. An optional header whose first cell is
// `name` is skipped.
void read_drug_table(std::istream& in, EntityCatalog& catalog, CatalogReport& report);
// Targets: FASTA (`>NAME ...` headers, first token is the name) or TSV
// `name<TAB>sequence`; FASTA is detected by a leading `>`.
void read_target_table(std::istream& in, EntityCatalog& catalog, CatalogReport& report);

struct LoadedCatalog {
  EntityCatalog catalog;
  CatalogReport report;
};

/// Throws Error{IngestError} when either file cannot be opened.
LoadedCatalog load_catalog(const std::filesystem::path& drug_table,
                           const std::filesystem::path& target_table);

}  // namespace dtifuse
