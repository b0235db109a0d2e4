#include "dtifuse/retrieval.hpp"

#include <fstream>
#include <mutex>
#include <sstream>

#include <httplib.h>
#include <nlohmann/json.hpp>

namespace dtifuse {
namespace {

SearchResultRecord record_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorKind::RetrievalError, "search record is not an object");
  SearchResultRecord r;
  auto field = [&](const char* key, std::string& dest) {
    if (!j.contains(key) || j.at(key).is_null()) return;
    if (!j.at(key).is_string()) {
      throw Error(ErrorKind::RetrievalError, std::string("search record field '") + key +
                                                 "' is not a string");
    }
    dest = j.at(key).get<std::string>();
  };
  field("title", r.title);
  field("link", r.link);
  field("snippet", r.snippet);
  return r;
}

std::vector<SearchResultRecord> records_from_json(const nlohmann::json& arr) {
  if (!arr.is_array()) throw Error(ErrorKind::RetrievalError, "search results are not an array");
  std::vector<SearchResultRecord> out;
  out.reserve(arr.size());
  for (const auto& item : arr) out.push_back(record_from_json(item));
  return out;
}

}  // namespace

std::string corpus_key(std::string_view query) {
  std::string out;
  bool pending_space = false;
  for (char c : trim(query)) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      pending_space = true;
      continue;
    }
    if (pending_space) out += ' ';
    pending_space = false;
    out += c;
  }
  return fold_case(out);
}

CorpusRetriever CorpusRetriever::from_json_text(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::RetrievalError, std::string("corpus is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorKind::RetrievalError, "corpus root must be an object");
  CorpusRetriever c;
  for (const auto& [query, records] : doc.items()) {
    auto parsed = records_from_json(records);
    auto& slot = c.entries_[corpus_key(query)];
    slot.insert(slot.end(), parsed.begin(), parsed.end());
  }
  return c;
}

CorpusRetriever CorpusRetriever::from_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::RetrievalError, "cannot open corpus " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_json_text(buf.str());
}

std::vector<SearchResultRecord> CorpusRetriever::fetch_results(std::string_view query,
                                                               std::size_t n) const {
  const auto it = entries_.find(corpus_key(query));
  if (it == entries_.end()) return {};
  const auto take = std::min(n, it->second.size());
  return {it->second.begin(), it->second.begin() + static_cast<std::ptrdiff_t>(take)};
}

HttpRetriever::HttpRetriever(std::string base_url, std::chrono::seconds timeout)
    : base_url_(std::move(base_url)), timeout_(timeout) {}

std::vector<SearchResultRecord> HttpRetriever::fetch_results(std::string_view query,
                                                             std::size_t n) const {
  static std::mutex serial;
  std::lock_guard lock(serial);

  httplib::Client client(base_url_);
  client.set_connection_timeout(timeout_);
  client.set_read_timeout(timeout_);
  httplib::Params params{{"q", std::string(query)}, {"n", std::to_string(n)}};
  const auto res = client.Get("/search", params, httplib::Headers{});
  if (!res) {
    throw Error(ErrorKind::RetrievalError,
                "search backend unreachable: " + httplib::to_string(res.error()));
  }
  if (res->status != 200) {
    throw Error(ErrorKind::RetrievalError, "search backend returned HTTP " + std::to_string(res->status));
  }
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(res->body);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::RetrievalError, std::string("search backend sent invalid JSON: ") + e.what());
  }
  auto out = records_from_json(doc);
  if (out.size() > n) out.resize(n);
  return out;
}

}  // namespace dtifuse
