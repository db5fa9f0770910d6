#include "x0p/ingest.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <limits>
#include <thread>

#include <json.hpp>

#ifdef X0P_WITH_OPENSSL
#define CPPHTTPLIB_OPENSSL_SUPPORT
#endif
#include <httplib.h>

#include "x0p/arith.hpp"

namespace x0p {

namespace {

using nlohmann::json;

json parse_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw SchemaError(path.filename().string() + ": " + e.what());
  }
  return j;
}

// Field accessor that names the file and record on failure.
template <typename T>
T field(const json& rec, const char* name, const std::string& where) {
  if (!rec.contains(name)) throw SchemaError(where + ": missing field '" + name + "'");
  try {
    return rec.at(name).get<T>();
  } catch (const json::exception&) {
    throw SchemaError(where + ": field '" + name + "' has the wrong type");
  }
}

void check_version(const json& j, const std::filesystem::path& path) {
  if (field<std::string>(j, "schema_version", path.filename().string()) != "1")
    throw SchemaError(path.filename().string() + ": unsupported schema_version");
}

std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = digits[v & 0xf];
    v >>= 4;
  }
  return out;
}

double now_seconds() {
  return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch()).count();
}

}  // namespace

FactsBundle load_facts_bundle(const std::filesystem::path& dir) {
  FactsBundle bundle;

  {
    auto path = dir / "newform_factors.json";
    json j = parse_file(path);
    check_version(j, path);
    if (!j.contains("factors") || !j["factors"].is_array()) throw SchemaError("newform_factors.json: no factor list");
    std::size_t idx = 0;
    for (const auto& rec : j["factors"]) {
      std::string where = "newform_factors.json record " + std::to_string(idx++);
      NewformFactor f;
      f.label = field<std::string>(rec, "label", where);
      f.level = field<std::int64_t>(rec, "level", where);
      f.dim = field<std::int64_t>(rec, "dim", where);
      f.fricke = field<int>(rec, "fricke", where);
      f.analytic_rank = field<std::int64_t>(rec, "analytic_rank", where);
      auto& table = bundle.factor_tables[f.level];
      table.level = f.level;
      table.factors.push_back(std::move(f));
    }
    for (auto& [level, table] : bundle.factor_tables) {
      std::sort(table.factors.begin(), table.factors.end(),
                [](const NewformFactor& a, const NewformFactor& b) { return a.label < b.label; });
      validate_factor_table(table);
    }
  }

  {
    auto path = dir / "kernel_exponents.json";
    json j = parse_file(path);
    check_version(j, path);
    std::size_t idx = 0;
    for (const auto& rec : j.at("entries")) {
      std::string where = "kernel_exponents.json record " + std::to_string(idx++);
      auto level = field<std::int64_t>(rec, "level", where);
      auto members = field<std::vector<std::string>>(rec, "members", where);
      auto exponent = field<std::int64_t>(rec, "exponent", where);
      bundle.kernel_exponents.insert(level, std::move(members), exponent);
    }
  }

  {
    auto path = dir / "genus2_quotients.json";
    json j = parse_file(path);
    check_version(j, path);
    std::size_t idx = 0;
    for (const auto& rec : j.at("entries")) {
      std::string where = "genus2_quotients.json record " + std::to_string(idx++);
      bundle.genus2.set(field<std::int64_t>(rec, "level", where), field<bool>(rec, "has_genus2_new_quotient", where));
    }
  }

  {
    auto path = dir / "gonality.json";
    json j = parse_file(path);
    check_version(j, path);
    std::size_t idx = 0;
    for (const auto& rec : j.at("entries")) {
      std::string where = "gonality.json record " + std::to_string(idx++);
      auto level = field<std::int64_t>(rec, "level", where);
      GonalityBounds b{field<std::int64_t>(rec, "lower", where), field<std::int64_t>(rec, "upper", where)};
      if (b.lower < 1 || b.lower > b.upper) throw SchemaError(where + ": requires 1 <= lower <= upper");
      bundle.facts.gonality[level] = b;
    }
  }

  {
    auto path = dir / "plus_cubic.json";
    json j = parse_file(path);
    check_version(j, path);
    std::size_t idx = 0;
    for (const auto& rec : j.at("entries")) {
      std::string where = "plus_cubic.json record " + std::to_string(idx++);
      bundle.facts.plus_cubic_infinite[field<std::int64_t>(rec, "level", where)] = field<bool>(rec, "infinite", where);
    }
  }

  {
    auto path = dir / "elliptic_curves.json";
    json j = parse_file(path);
    check_version(j, path);
    std::size_t idx = 0;
    for (const auto& rec : j.at("coverage")) {
      std::string where = "elliptic_curves.json coverage " + std::to_string(idx++);
      EllipticCoverage w;
      w.cond_min = field<std::int64_t>(rec, "cond_min", where);
      w.cond_max = field<std::int64_t>(rec, "cond_max", where);
      w.rank_min = field<std::int64_t>(rec, "rank_min", where);
      w.degree_max = rec.contains("degree_max") && !rec["degree_max"].is_null()
                         ? field<std::int64_t>(rec, "degree_max", where)
                         : std::numeric_limits<std::int64_t>::max();
      bundle.facts.elliptic_coverage.push_back(w);
    }
    idx = 0;
    for (const auto& rec : j.at("records")) {
      std::string where = "elliptic_curves.json record " + std::to_string(idx++);
      EllipticCurveRecord r;
      r.label = field<std::string>(rec, "label", where);
      r.conductor = field<std::int64_t>(rec, "conductor", where);
      r.rank = field<std::int64_t>(rec, "rank", where);
      r.modular_degree = field<std::int64_t>(rec, "modular_degree", where);
      if (r.modular_degree < 1) throw SchemaError(where + ": modular degree must be >= 1");
      bundle.facts.elliptic_curves.push_back(std::move(r));
    }
  }

  {
    auto path = dir / "known_density.json";
    json j = parse_file(path);
    check_version(j, path);
    for (const auto& tab : j.at("complete")) {
      std::string where = "known_density.json complete table";
      int degree = field<int>(tab, "degree", where);
      auto below = field<std::int64_t>(tab, "below", where);
      auto levels = field<std::vector<std::int64_t>>(tab, "infinite_levels", where);
      std::set<std::int64_t> inf(levels.begin(), levels.end());
      for (std::int64_t p = 2; p < below; ++p) {
        if (!is_prime(static_cast<std::uint64_t>(p))) continue;
        bundle.facts.known_density[{p, degree}] = inf.count(p) > 0;
      }
    }
    for (const auto& tab : j.at("partial")) {
      int degree = field<int>(tab, "degree", "known_density.json partial table");
      for (const auto& rec : tab.at("entries")) {
        std::string where = "known_density.json partial degree " + std::to_string(degree);
        bundle.facts.known_density[{field<std::int64_t>(rec, "level", where), degree}] =
            field<bool>(rec, "infinite", where);
      }
    }
  }

  {
    auto path = dir / "certificates.json";
    json j = parse_file(path);
    check_version(j, path);
    std::size_t idx = 0;
    for (const auto& rec : j.at("certificates")) {
      std::string where = "certificates.json record " + std::to_string(idx++);
      CertificateRecord c;
      c.level = field<std::int64_t>(rec, "level", where);
      c.statement_id = field<std::string>(rec, "statement_id", where);
      c.source = field<std::string>(rec, "source", where);
      bundle.facts.certificates.push_back(std::move(c));
    }
  }

  return bundle;
}

LmfdbClient::LmfdbClient(Options options) : opt_(std::move(options)) {
  if (opt_.cache_dir.empty()) throw std::invalid_argument("LmfdbClient: cache_dir is required");
  std::filesystem::create_directories(opt_.cache_dir);
}

void LmfdbClient::rate_limit() {
  double now = now_seconds();
  if (last_request_ >= 0.0 && now - last_request_ < opt_.min_request_interval_s) {
    std::this_thread::sleep_for(std::chrono::duration<double>(opt_.min_request_interval_s - (now - last_request_)));
  }
  last_request_ = now_seconds();
}

std::optional<std::string> LmfdbClient::cache_read(const std::string& key_query) const {
  auto path = opt_.cache_dir / (hex64(fnv1a64(key_query)) + ".json");
  if (!std::filesystem::exists(path)) return std::nullopt;
  json j = parse_file(path);
  if (!j.contains("schema_version") || j["schema_version"] != "1") return std::nullopt;
  if (!j.contains("query") || j["query"] != key_query) return std::nullopt;
  return j.at("payload").dump();
}

void LmfdbClient::cache_write(const std::string& key_query, const std::string& payload) const {
  json entry;
  entry["schema_version"] = "1";
  entry["query"] = key_query;
  entry["fetched_at"] = static_cast<std::int64_t>(
      std::chrono::duration_cast<std::chrono::seconds>(std::chrono::system_clock::now().time_since_epoch()).count());
  entry["payload"] = json::parse(payload);
  auto path = opt_.cache_dir / (hex64(fnv1a64(key_query)) + ".json");
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp);
    out << entry.dump(1);
  }
  std::filesystem::rename(tmp, path);  // atomic publish
}

std::string LmfdbClient::http_get_pages(const std::string& table, const std::string& query) {
  json all = json::array();
  std::int64_t offset = 0;
  while (true) {
    std::string target = "/api/" + table + "/?" + query + "&_format=json&_offset=" + std::to_string(offset);
    json page;
    std::string err;
    for (int attempt = 0; attempt <= opt_.max_retries; ++attempt) {
      if (attempt > 0) {
        std::this_thread::sleep_for(std::chrono::duration<double>(opt_.min_request_interval_s * (1 << attempt)));
      }
      rate_limit();
      httplib::Client cli(opt_.base_url);
      cli.set_connection_timeout(10);
      cli.set_read_timeout(30);
      auto res = cli.Get(target);
      if (!res) {
        err = "connection failed";
        continue;
      }
      if (res->status >= 500) {
        err = "server status " + std::to_string(res->status);
        continue;
      }
      if (res->status != 200) throw NetworkError("GET " + target + ": status " + std::to_string(res->status));
      try {
        page = json::parse(res->body);
      } catch (const json::exception& e) {
        throw NetworkError("GET " + target + ": bad JSON: " + e.what());
      }
      err.clear();
      break;
    }
    if (!err.empty()) throw NetworkError("GET " + target + ": " + err);
    if (!page.contains("data") || !page["data"].is_array()) throw NetworkError("GET " + target + ": no data array");
    for (const auto& rec : page["data"]) all.push_back(rec);
    if (!page.contains("next") || page["next"].is_null()) break;
    offset = page["next"].get<std::int64_t>();
  }
  return all.dump();
}

std::string LmfdbClient::fetch_payload(const std::string& table, const std::string& query) {
  std::string key = table + "?" + query;
  if (auto cached = cache_read(key)) return *cached;
  if (opt_.offline) throw CacheMissError("offline mode and no cache entry for " + key);
  std::string payload = http_get_pages(table, query);
  cache_write(key, payload);
  return payload;
}

std::vector<FactorTable> LmfdbClient::fetch_newforms(const NewformQuery& query) {
  if (query.level_min < 1 || query.level_min > query.level_max)
    throw std::invalid_argument("fetch_newforms: bad level range");
  std::map<std::int64_t, FactorTable> tables;
  for (std::int64_t lo = query.level_min; lo <= query.level_max; lo += opt_.level_chunk) {
    std::int64_t hi = std::min(query.level_max, lo + opt_.level_chunk - 1);
    std::string q = "level_min=" + std::to_string(lo) + "&level_max=" + std::to_string(hi) +
                    "&weight=2&char_order=1";
    json data = json::parse(fetch_payload("mf_newforms", q));
    std::size_t idx = 0;
    for (const auto& rec : data) {
      std::string where = "mf_newforms[" + q + "] record " + std::to_string(idx++);
      NewformFactor f;
      f.label = field<std::string>(rec, "label", where);
      f.level = field<std::int64_t>(rec, "level", where);
      f.dim = field<std::int64_t>(rec, "dim", where);
      f.fricke = field<int>(rec, "fricke_eigenval", where);
      f.analytic_rank = field<std::int64_t>(rec, "analytic_rank", where);
      auto& table = tables[f.level];
      table.level = f.level;
      table.factors.push_back(std::move(f));
    }
  }
  std::vector<FactorTable> out;
  for (auto& [level, table] : tables) {
    std::sort(table.factors.begin(), table.factors.end(),
              [](const NewformFactor& a, const NewformFactor& b) { return a.label < b.label; });
    validate_factor_table(table);  // dimension-sum gate; nothing unvalidated escapes
    out.push_back(std::move(table));
  }
  return out;
}

std::vector<EllipticCurveRecord> LmfdbClient::fetch_elliptic_curves(std::int64_t cond_min, std::int64_t cond_max,
                                                                    std::int64_t rank_min) {
  if (cond_min < 1 || cond_min > cond_max) throw std::invalid_argument("fetch_elliptic_curves: bad conductor range");
  std::string q = "cond_min=" + std::to_string(cond_min) + "&cond_max=" + std::to_string(cond_max) +
                  "&rank_min=" + std::to_string(rank_min);
  json data = json::parse(fetch_payload("ec_curvedata", q));
  std::vector<EllipticCurveRecord> out;
  std::size_t idx = 0;
  for (const auto& rec : data) {
    std::string where = "ec_curvedata[" + q + "] record " + std::to_string(idx++);
    EllipticCurveRecord r;
    r.label = field<std::string>(rec, "label", where);
    r.conductor = field<std::int64_t>(rec, "conductor", where);
    r.rank = field<std::int64_t>(rec, "rank", where);
    r.modular_degree = rec.contains("modular_degree") ? field<std::int64_t>(rec, "modular_degree", where)
                                                      : field<std::int64_t>(rec, "degree", where);
    out.push_back(std::move(r));
  }
  std::sort(out.begin(), out.end(),
            [](const EllipticCurveRecord& a, const EllipticCurveRecord& b) { return a.label < b.label; });
  return out;
}

}  // namespace x0p
