#pragma once

#include <chrono>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "dtifuse/search.hpp"

namespace dtifuse {

/// Source of search results for a query string.
class Retriever {
 public:
  virtual ~Retriever() = default;

  /// At most `n` records. Throws Error{RetrievalError} when the backend
  /// cannot be read; an unknown query is an empty result, not an error.
  virtual std::vector<SearchResultRecord> fetch_results(std::string_view query,
                                                        std::size_t n) const = 0;
  virtual std::string name() const = 0;
};

// Lookup key for corpus queries: trimmed, case-folded, internal runs of
// whitespace collapsed to one space.
std::string corpus_key(std::string_view query);

/// Read-only corpus backed by a JSON file of the form
///
///   { "<query>": [ {"title": "...", "link": "...", "snippet": "..."}, ... ], ... }
///
/// Missing record fields default to "". Anything else is a RetrievalError.
class CorpusRetriever final : public Retriever {
 public:
  static CorpusRetriever from_file(const std::filesystem::path& path);
  static CorpusRetriever from_json_text(std::string_view text);

  std::vector<SearchResultRecord> fetch_results(std::string_view query,
                                                std::size_t n) const override;
  std::string name() const override { return "corpus"; }
  std::size_t query_count() const noexcept { return entries_.size(); }

 private:
  std::map<std::string, std::vector<SearchResultRecord>> entries_;
};

/// Fetches `GET <base>/search?q=<query>&n=<n>` and expects a JSON array of
/// records in the corpus record shape. Requests are serialized.
class HttpRetriever final : public Retriever {
 public:
  explicit HttpRetriever(std::string base_url,
                         std::chrono::seconds timeout = std::chrono::seconds(30));

  std::vector<SearchResultRecord> fetch_results(std::string_view query,
                                                std::size_t n) const override;
  std::string name() const override { return "http"; }

 private:
  std::string base_url_;
  std::chrono::seconds timeout_;
};

}  // namespace dtifuse
