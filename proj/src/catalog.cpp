#include "dtifuse/catalog.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>

namespace dtifuse {
namespace {

std::string_view chomp(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

// Upper-cases and strips whitespace; nullopt if anything but letters remains.
std::optional<std::string> clean_sequence(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  for (char c : raw) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    if (!std::isalpha(static_cast<unsigned char>(c))) return std::nullopt;
    out += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  }
  return out;
}

void note(CatalogReport& report, std::size_t lineno, const std::string& what) {
  ++report.skipped;
  report.diagnostics.push_back("line " + std::to_string(lineno) + ": " + what);
}

void add_target(EntityCatalog& catalog, CatalogReport& report, std::size_t lineno,
                std::string_view name, std::string_view raw_seq) {
  ++report.rows;
  if (trim(name).empty()) return note(report, lineno, "missing target name");
  const auto seq = clean_sequence(raw_seq);
  if (!seq) return note(report, lineno, "sequence contains non-letter characters");
  if (seq->empty()) return note(report, lineno, "missing sequence");
  auto id = EntityId::from(name);
  if (catalog.find_target(id)) {
    ++report.duplicates;
    report.diagnostics.push_back("line " + std::to_string(lineno) + ": duplicate target '" +
                                 id.raw() + "', last record wins");
  }
  catalog.add_target({std::move(id), *seq});
}

}  // namespace

void EntityCatalog::add_drug(DrugRecord d) {
  auto key = d.id.normalized();
  drugs_.insert_or_assign(std::move(key), std::move(d));
}

void EntityCatalog::add_target(TargetRecord t) {
  auto key = t.id.normalized();
  targets_.insert_or_assign(std::move(key), std::move(t));
}

const DrugRecord* EntityCatalog::find_drug(const EntityId& id) const {
  const auto it = drugs_.find(id.normalized());
  return it == drugs_.end() ? nullptr : &it->second;
}

const TargetRecord* EntityCatalog::find_target(const EntityId& id) const {
  const auto it = targets_.find(id.normalized());
  return it == targets_.end() ? nullptr : &it->second;
}

void read_drug_table(std::istream& in, EntityCatalog& catalog, CatalogReport& report) {
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto view = chomp(line);
    if (trim(view).empty() || trim(view).front() == '#') continue;
    const auto tab = view.find('\t');
    const auto name = trim(view.substr(0, tab));
    const auto smiles = tab == std::string_view::npos ? std::string_view{} : trim(view.substr(tab + 1));
    if (lineno == 1 && fold_case(name) == "name") continue;
    ++report.rows;
    if (name.empty()) {
      note(report, lineno, "missing drug name");
      continue;
    }
    if (smiles.empty() || smiles.find('\t') != std::string_view::npos) {
      note(report, lineno, "missing or malformed structure column");
      continue;
    }
    auto id = EntityId::from(name);
    if (catalog.find_drug(id)) {
      ++report.duplicates;
      report.diagnostics.push_back("line " + std::to_string(lineno) + ": duplicate drug '" +
                                   id.raw() + "', last record wins");
    }
    catalog.add_drug({std::move(id), std::string(smiles)});
  }
}

void read_target_table(std::istream& in, EntityCatalog& catalog, CatalogReport& report) {
  std::string line;
  std::size_t lineno = 0;
  enum class Format { Unknown, Fasta, Tsv } format = Format::Unknown;

  std::string fasta_name;
  std::string fasta_seq;
  std::size_t fasta_line = 0;
  auto flush = [&] {
    if (fasta_line != 0) add_target(catalog, report, fasta_line, fasta_name, fasta_seq);
    fasta_name.clear();
    fasta_seq.clear();
    fasta_line = 0;
  };

  while (std::getline(in, line)) {
    ++lineno;
    const auto view = trim(chomp(line));
    if (view.empty()) continue;
    if (format == Format::Unknown) {
      if (view.front() == '#') continue;
      format = view.front() == '>' ? Format::Fasta : Format::Tsv;
    }
    if (format == Format::Fasta) {
      if (view.front() == '>') {
        flush();
        auto header = trim(view.substr(1));
        fasta_name = std::string(header.substr(0, header.find_first_of(" \t")));
        fasta_line = lineno;
      } else if (fasta_line != 0) {
        fasta_seq += view;
      }
      continue;
    }
    if (view.front() == '#') continue;
    const auto tab = view.find('\t');
    const auto name = trim(view.substr(0, tab));
    if (lineno == 1 && fold_case(name) == "name") continue;
    if (tab == std::string_view::npos) {
      ++report.rows;
      note(report, lineno, "missing sequence column");
      continue;
    }
    add_target(catalog, report, lineno, name, view.substr(tab + 1));
  }
  flush();
}

LoadedCatalog load_catalog(const std::filesystem::path& drug_table,
                           const std::filesystem::path& target_table) {
  LoadedCatalog out;
  std::ifstream drugs(drug_table);
  if (!drugs) throw Error(ErrorKind::IngestError, "cannot open drug table " + drug_table.string());
  std::ifstream targets(target_table);
  if (!targets) {
    throw Error(ErrorKind::IngestError, "cannot open target table " + target_table.string());
  }
  read_drug_table(drugs, out.catalog, out.report);
  if (drugs.bad()) throw Error(ErrorKind::IngestError, "read error in " + drug_table.string());
  read_target_table(targets, out.catalog, out.report);
  if (targets.bad()) throw Error(ErrorKind::IngestError, "read error in " + target_table.string());
  return out;
}

}  // namespace dtifuse
