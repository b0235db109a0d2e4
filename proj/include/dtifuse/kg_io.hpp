#pragma once

#include <filesystem>
#include <istream>
#include <ostream>
#include <vector>

#include "dtifuse/kg.hpp"

namespace dtifuse {

// Normalized edge list: `source<TAB>dest<TAB>provenance`, one edge per
// line, `#` comment lines and blank lines ignored. A missing provenance
// column means OTHER. Bad rows are counted in `report`, never fatal.
std::vector<InteractionEdge> read_edge_list(std::istream& in, IngestReport& report);
std::vector<InteractionEdge> read_edge_list_file(const std::filesystem::path& path,
                                                 IngestReport& report);
void write_edge_list(std::ostream& out, std::span<const InteractionEdge> edges);

// Raw database dump adapters. Each returns edges in the normalized form.
//
//   DGIdb     interactions.tsv, header-addressed `drug_name` / `gene_name`
//             (falls back to `drug_claim_name` / `gene_claim_name`)
//   CTD       CTD_chem_gene_ixns.tsv, ChemicalName in column 0 and
//             GeneSymbol in column 3, `#` lines are comments
//   STITCH    chemical_protein links, whitespace separated
//             `chemical protein combined_score` with a header line
//   DrugBank  target uniprot links CSV, header-addressed `Name` /
//             `UniProt Name`
std::vector<InteractionEdge> adapt_dump(std::istream& in, Provenance source, IngestReport& report);

// Graph cache, little-endian:
//
//   magic    8 bytes  "DTIKGRPH"
//   version  u32      1
//   nodes    u64      N
//   edges    u64      undirected edge count E
//   N x      { u32 byte length, UTF-8 normalized name }
//   (N+1) x  u64 CSR offsets
//   2E x     u32 neighbor indices
inline constexpr char kGraphCacheMagic[8] = {'D', 'T', 'I', 'K', 'G', 'R', 'P', 'H'};
inline constexpr std::uint32_t kGraphCacheVersion = 1;

void save_graph(const KnowledgeGraph& g, std::ostream& out);
void save_graph_file(const KnowledgeGraph& g, const std::filesystem::path& path);
/// Throws Error{CacheError} on bad magic, unsupported version, truncation
/// or an inconsistent adjacency.
KnowledgeGraph load_graph(std::istream& in);
KnowledgeGraph load_graph_file(const std::filesystem::path& path);

}  // namespace dtifuse
