#include "dtifuse/kg_io.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <limits>
#include <fstream>
#include <sstream>
#include <string>

namespace dtifuse {
namespace {

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    cells.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos
                                                                     : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return cells;
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    const auto start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) cells.push_back(line.substr(start, i - start));
  }
  return cells;
}

// RFC 4180-ish: quoted fields may contain commas and doubled quotes.
std::vector<std::string> split_csv(std::string_view line) {
  std::vector<std::string> cells(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cells.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cells.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      cells.emplace_back();
    } else {
      cells.back() += c;
    }
  }
  return cells;
}

std::string_view chomp(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

void add_edge(std::vector<InteractionEdge>& out, IngestReport& report, std::size_t lineno,
              std::string_view a, std::string_view b, Provenance p) {
  ++report.rows;
  a = trim(a);
  b = trim(b);
  if (a.empty() || b.empty()) {
    ++report.malformed;
    report.diagnostics.push_back("line " + std::to_string(lineno) + ": empty endpoint");
    return;
  }
  out.push_back({std::string(a), std::string(b), p});
}

template <class Cells>
std::optional<std::size_t> column(const Cells& header, std::initializer_list<std::string_view> names) {
  for (auto name : names) {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (fold_case(trim(header[i])) == name) return i;
    }
  }
  return std::nullopt;
}

std::vector<InteractionEdge> adapt_header_tsv(std::istream& in, Provenance p, IngestReport& report,
                                              std::initializer_list<std::string_view> drug_cols,
                                              std::initializer_list<std::string_view> gene_cols) {
  std::vector<InteractionEdge> out;
  std::string line;
  std::size_t lineno = 0;
  std::optional<std::size_t> dcol, gcol;
  while (std::getline(in, line)) {
    ++lineno;
    const auto view = chomp(line);
    if (trim(view).empty() || view.front() == '#') continue;
    const auto cells = split(view, '\t');
    if (!dcol) {
      dcol = column(cells, drug_cols);
      gcol = column(cells, gene_cols);
      if (!dcol || !gcol) {
        throw Error(ErrorKind::IngestError, std::string(to_string(p)) +
                                                " dump: header lacks drug/gene columns");
      }
      continue;
    }
    if (cells.size() <= std::max(*dcol, *gcol)) {
      ++report.rows;
      ++report.malformed;
      report.diagnostics.push_back("line " + std::to_string(lineno) + ": too few columns");
      continue;
    }
    add_edge(out, report, lineno, cells[*dcol], cells[*gcol], p);
  }
  return out;
}

std::vector<InteractionEdge> adapt_ctd(std::istream& in, IngestReport& report) {
  std::vector<InteractionEdge> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto view = chomp(line);
    if (trim(view).empty() || view.front() == '#') continue;
    const auto cells = split(view, '\t');
    if (cells.size() < 4) {
      ++report.rows;
      ++report.malformed;
      report.diagnostics.push_back("line " + std::to_string(lineno) + ": too few columns");
      continue;
    }
    add_edge(out, report, lineno, cells[0], cells[3], Provenance::CTD);
  }
  return out;
}

std::vector<InteractionEdge> adapt_stitch(std::istream& in, IngestReport& report) {
  std::vector<InteractionEdge> out;
  std::string line;
  std::size_t lineno = 0;
  bool header = true;
  while (std::getline(in, line)) {
    ++lineno;
    const auto view = chomp(line);
    if (trim(view).empty() || view.front() == '#') continue;
    const auto cells = split_ws(view);
    if (header) {
      header = false;
      if (!cells.empty() && fold_case(cells[0]) == "chemical") continue;
    }
    if (cells.size() < 2) {
      ++report.rows;
      ++report.malformed;
      report.diagnostics.push_back("line " + std::to_string(lineno) + ": too few columns");
      continue;
    }
    add_edge(out, report, lineno, cells[0], cells[1], Provenance::STITCH);
  }
  return out;
}

std::vector<InteractionEdge> adapt_drugbank(std::istream& in, IngestReport& report) {
  std::vector<InteractionEdge> out;
  std::string line;
  std::size_t lineno = 0;
  std::optional<std::size_t> dcol, gcol;
  while (std::getline(in, line)) {
    ++lineno;
    const auto view = chomp(line);
    if (trim(view).empty()) continue;
    const auto cells = split_csv(view);
    if (!dcol) {
      dcol = column(cells, {"name"});
      gcol = column(cells, {"uniprot name", "gene name"});
      if (!dcol || !gcol) {
        throw Error(ErrorKind::IngestError, "DRUGBANK dump: header lacks Name/UniProt Name");
      }
      continue;
    }
    if (cells.size() <= std::max(*dcol, *gcol)) {
      ++report.rows;
      ++report.malformed;
      report.diagnostics.push_back("line " + std::to_string(lineno) + ": too few columns");
      continue;
    }
    add_edge(out, report, lineno, cells[*dcol], cells[*gcol], Provenance::DrugBank);
  }
  return out;
}

template <class T>
void put(std::ostream& out, T value) {
  static_assert(std::is_integral_v<T>);
  unsigned char buf[sizeof(T)];
  auto u = static_cast<std::make_unsigned_t<T>>(value);
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    buf[i] = static_cast<unsigned char>(u & 0xffu);
    u = static_cast<decltype(u)>(u >> 8);
  }
  out.write(reinterpret_cast<const char*>(buf), sizeof(T));
}

template <class T>
T get(std::istream& in) {
  unsigned char buf[sizeof(T)];
  if (!in.read(reinterpret_cast<char*>(buf), sizeof(T))) {
    throw Error(ErrorKind::CacheError, "graph cache is truncated");
  }
  std::make_unsigned_t<T> u = 0;
  for (std::size_t i = sizeof(T); i-- > 0;) u = static_cast<decltype(u)>((u << 8) | buf[i]);
  return static_cast<T>(u);
}

}  // namespace

std::vector<InteractionEdge> read_edge_list(std::istream& in, IngestReport& report) {
  std::vector<InteractionEdge> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto view = chomp(line);
    if (trim(view).empty() || trim(view).front() == '#') continue;
    const auto cells = split(view, '\t');
    if (cells.size() < 2 || cells.size() > 3) {
      ++report.rows;
      ++report.malformed;
      report.diagnostics.push_back("line " + std::to_string(lineno) + ": expected 2 or 3 columns");
      continue;
    }
    auto prov = Provenance::Other;
    if (cells.size() == 3 && !trim(cells[2]).empty()) {
      const auto parsed = parse_provenance(cells[2]);
      if (!parsed) {
        ++report.rows;
        ++report.malformed;
        report.diagnostics.push_back("line " + std::to_string(lineno) + ": unknown provenance '" +
                                     std::string(cells[2]) + "'");
        continue;
      }
      prov = *parsed;
    }
    add_edge(out, report, lineno, cells[0], cells[1], prov);
  }
  // rows/malformed were counted here; accepted is decided by build_graph
  return out;
}

std::vector<InteractionEdge> read_edge_list_file(const std::filesystem::path& path,
                                                 IngestReport& report) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IngestError, "cannot open edge list " + path.string());
  return read_edge_list(in, report);
}

void write_edge_list(std::ostream& out, std::span<const InteractionEdge> edges) {
  for (const auto& e : edges) {
    out << e.source << '\t' << e.dest << '\t' << to_string(e.provenance) << '\n';
  }
}

std::vector<InteractionEdge> adapt_dump(std::istream& in, Provenance source, IngestReport& report) {
  switch (source) {
    case Provenance::DGIdb:
      return adapt_header_tsv(in, source, report, {"drug_name", "drug_claim_name"},
                              {"gene_name", "gene_claim_name"});
    case Provenance::CTD: return adapt_ctd(in, report);
    case Provenance::STITCH: return adapt_stitch(in, report);
    case Provenance::DrugBank: return adapt_drugbank(in, report);
    case Provenance::Other: return read_edge_list(in, report);
  }
  return {};
}

void save_graph(const KnowledgeGraph& g, std::ostream& out) {
  out.write(kGraphCacheMagic, sizeof(kGraphCacheMagic));
  put<std::uint32_t>(out, kGraphCacheVersion);
  put<std::uint64_t>(out, g.node_count());
  put<std::uint64_t>(out, g.edge_count());
  for (const auto& name : g.names()) {
    put<std::uint32_t>(out, static_cast<std::uint32_t>(name.size()));
    out.write(name.data(), static_cast<std::streamsize>(name.size()));
  }
  for (auto off : g.offsets()) put<std::uint64_t>(out, off);
  for (auto v : g.adjacency()) put<std::uint32_t>(out, v);
  if (!out) throw Error(ErrorKind::CacheError, "failed writing graph cache");
}

void save_graph_file(const KnowledgeGraph& g, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::CacheError, "cannot create graph cache " + path.string());
  save_graph(g, out);
}

KnowledgeGraph load_graph(std::istream& in) {
  char magic[sizeof(kGraphCacheMagic)];
  if (!in.read(magic, sizeof(magic)) || std::memcmp(magic, kGraphCacheMagic, sizeof(magic)) != 0) {
    throw Error(ErrorKind::CacheError, "not a graph cache (bad magic)");
  }
  const auto version = get<std::uint32_t>(in);
  if (version != kGraphCacheVersion) {
    throw Error(ErrorKind::CacheError, "unsupported graph cache version " + std::to_string(version));
  }
  const auto n = get<std::uint64_t>(in);
  const auto e = get<std::uint64_t>(in);
  if (n > std::numeric_limits<KnowledgeGraph::NodeIndex>::max()) {
    throw Error(ErrorKind::CacheError, "graph cache node count too large");
  }
  std::vector<std::string> names;
  names.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(n, 1u << 20)));
  for (std::uint64_t i = 0; i < n; ++i) {
    const auto len = get<std::uint32_t>(in);
    std::string name(len, '\0');
    if (!in.read(name.data(), len)) throw Error(ErrorKind::CacheError, "graph cache is truncated");
    names.push_back(std::move(name));
  }
  // grow as we read so a corrupt header cannot force a huge allocation
  std::vector<std::uint64_t> offsets;
  for (std::uint64_t i = 0; i <= n; ++i) offsets.push_back(get<std::uint64_t>(in));
  if (offsets.back() != 2 * e) throw Error(ErrorKind::CacheError, "graph cache edge count mismatch");
  std::vector<KnowledgeGraph::NodeIndex> neighbors;
  for (std::uint64_t i = 0; i < 2 * e; ++i) neighbors.push_back(get<std::uint32_t>(in));
  return KnowledgeGraph::from_csr(std::move(names), std::move(offsets), std::move(neighbors));
}

KnowledgeGraph load_graph_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::CacheError, "cannot open graph cache " + path.string());
  return load_graph(in);
}

}  // namespace dtifuse
