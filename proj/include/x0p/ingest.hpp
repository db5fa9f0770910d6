#ifndef X0P_INGEST_HPP
#define X0P_INGEST_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "x0p/density.hpp"
#include "x0p/factors.hpp"

// Ingestion of newform and elliptic-curve data: an offline fixture bundle
// (the shipped mode) and an HTTP client against the public modular-forms
// database with a local JSON cache.

namespace x0p {

struct SchemaError : std::runtime_error {
  explicit SchemaError(const std::string& what) : std::runtime_error(what) {}
};

struct NetworkError : std::runtime_error {
  explicit NetworkError(const std::string& what) : std::runtime_error(what) {}
};

struct CacheMissError : std::runtime_error {
  explicit CacheMissError(const std::string& what) : std::runtime_error(what) {}
};

// Loads and validates the whole facts bundle from a directory of JSON
// files (see fixtures/SCHEMA.md). Schema problems raise SchemaError naming
// the file and record; semantic problems (dimension sums, sign sums) raise
// ValidationError before any classifier can run.
FactsBundle load_facts_bundle(const std::filesystem::path& dir);

// Weight-2, trivial-character newforms at prime levels in a range.
struct NewformQuery {
  std::int64_t level_min = 1;
  std::int64_t level_max = 1;
  static constexpr int weight = 2;
  static constexpr int char_order = 1;
};

class LmfdbClient {
 public:
  struct Options {
    std::string base_url = "https://www.lmfdb.org";
    std::filesystem::path cache_dir;
    bool offline = false;
    double min_request_interval_s = 1.0;  // public-service etiquette
    int max_retries = 3;
    std::int64_t level_chunk = 500;
  };

  explicit LmfdbClient(Options options);

  // Complete factor lists per level; every returned level has passed the
  // dimension-sum gate. Results are cached; offline mode reads cache only.
  std::vector<FactorTable> fetch_newforms(const NewformQuery& query);

  std::vector<EllipticCurveRecord> fetch_elliptic_curves(std::int64_t cond_min, std::int64_t cond_max,
                                                         std::int64_t rank_min);

 private:
  std::string fetch_payload(const std::string& table, const std::string& query);
  std::optional<std::string> cache_read(const std::string& key_query) const;
  void cache_write(const std::string& key_query, const std::string& payload) const;
  std::string http_get_pages(const std::string& table, const std::string& query);
  void rate_limit();

  Options opt_;
  double last_request_ = -1.0;
};

}  // namespace x0p

#endif
