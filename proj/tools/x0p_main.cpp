// x0p: exact invariants, morphism classification and low-degree point
// classification for prime-level modular curves X_0(p).
//
// Exit codes: 0 success, 1 verdict mismatch, 2 missing data, 3 usage.

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iostream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "x0p/arith.hpp"
#include "x0p/density.hpp"
#include "x0p/factors.hpp"
#include "x0p/ingest.hpp"
#include "x0p/quadforms.hpp"
#include "x0p/report.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitMissingData = 2;
constexpr int kExitUsage = 3;

struct Range {
  std::int64_t lo = 0;
  std::int64_t hi = 0;
};

Range parse_range(const std::string& text) {
  Range r;
  auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      r.lo = r.hi = std::stoll(text);
    } else {
      r.lo = std::stoll(text.substr(0, dots));
      r.hi = std::stoll(text.substr(dots + 2));
    }
  } catch (const std::exception&) {
    throw std::invalid_argument("bad range '" + text + "' (expected N or A..B)");
  }
  if (r.lo < 1 || r.hi < r.lo) throw std::invalid_argument("bad range '" + text + "'");
  return r;
}

std::vector<std::int64_t> primes_in(const Range& r) {
  std::vector<std::int64_t> out;
  for (std::int64_t p = std::max<std::int64_t>(2, r.lo); p <= r.hi; ++p) {
    if (x0p::is_prime(static_cast<std::uint64_t>(p))) out.push_back(p);
  }
  return out;
}

// Applies fn to every element, fanning out over jobs threads; results keep
// input order.
template <typename T, typename F>
auto ordered_parallel_map(const std::vector<T>& items, int jobs, F fn) {
  using R = decltype(fn(items.front()));
  std::vector<R> results(items.size());
  if (jobs < 2 || items.size() < 2) {
    for (std::size_t i = 0; i < items.size(); ++i) results[i] = fn(items[i]);
    return results;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  int n = std::min<int>(jobs, static_cast<int>(items.size()));
  for (int t = 0; t < n; ++t) {
    pool.emplace_back([&] {
      while (true) {
        std::size_t i = next.fetch_add(1);
        if (i >= items.size()) return;
        results[i] = fn(items[i]);
      }
    });
  }
  for (auto& t : pool) t.join();
  return results;
}

int run_genus(const std::string& range_text, const std::string& format) {
  Range r = parse_range(range_text);
  std::vector<std::int64_t> levels;
  for (std::int64_t n = r.lo; n <= r.hi; ++n) levels.push_back(n);
  std::cout << x0p::render_table(x0p::genus_table(levels), x0p::parse_format(format));
  return kExitOk;
}

int run_classify_morphisms(const std::string& range_text, const std::string& facts_dir,
                           const std::string& kernel_data, bool show_residual, const std::string& format, int jobs) {
  Range r = parse_range(range_text);
  x0p::FactsBundle bundle = x0p::load_facts_bundle(facts_dir);
  if (!kernel_data.empty()) {
    // Alternate kernel-exponent file replacing the bundled one.
    std::ifstream in(kernel_data);
    if (!in) throw x0p::SchemaError("cannot open " + kernel_data);
    nlohmann::json doc;
    in >> doc;
    x0p::KernelExponentTable table;
    for (const auto& rec : doc.at("entries")) {
      table.insert(rec.at("level").get<std::int64_t>(), rec.at("members").get<std::vector<std::string>>(),
                   rec.at("exponent").get<std::int64_t>());
    }
    bundle.kernel_exponents = table;
  }

  std::vector<std::int64_t> ps = primes_in(r);
  bool missing_level = false;
  std::vector<std::int64_t> with_data;
  for (std::int64_t p : ps) {
    if (x0p::genus_x0(static_cast<std::uint64_t>(p)) == 0) continue;  // no targets, nothing to classify
    if (!bundle.factor_tables.count(p)) {
      std::cerr << "missing newform factors for level " << p << "\n";
      missing_level = true;
      continue;
    }
    with_data.push_back(p);
  }

  auto classifications = ordered_parallel_map(with_data, jobs, [&](std::int64_t p) {
    return x0p::classify_morphisms(p, bundle.factor_tables.at(p), bundle.kernel_exponents, bundle.genus2);
  });

  std::vector<x0p::ResidualRow> residual;
  bool unresolved = false;
  for (const auto& c : classifications) {
    residual.insert(residual.end(), c.residual.begin(), c.residual.end());
    if (!c.only_quotient) {
      unresolved = true;
      for (const auto& sel : c.unresolved) {
        std::cerr << "needs kernel exponent: level " << c.level << " subset {";
        for (std::size_t i = 0; i < sel.members.size(); ++i) std::cerr << (i ? "," : "") << sel.members[i];
        std::cerr << "} dim " << sel.dim_total << "\n";
      }
    }
  }
  std::sort(residual.begin(), residual.end(),
            [](const x0p::ResidualRow& a, const x0p::ResidualRow& b) { return a.level < b.level; });

  auto fmt = x0p::parse_format(format);
  if (show_residual) {
    std::cout << x0p::render_table(x0p::residual_table(residual), fmt);
  } else {
    std::cout << x0p::render_table(x0p::morphism_table(classifications), fmt);
  }
  if (missing_level || unresolved) return kExitMissingData;
  return kExitOk;
}

int run_classify_degree(const std::string& range_text, int degree, const std::string& facts_dir, bool verify_known,
                        const std::string& format, int jobs) {
  Range r = parse_range(range_text);
  x0p::FactsBundle bundle = x0p::load_facts_bundle(facts_dir);
  std::vector<std::int64_t> ps = primes_in(r);
  auto verdicts =
      ordered_parallel_map(ps, jobs, [&](std::int64_t p) { return x0p::classify_degree(p, degree, bundle); });

  auto fmt = x0p::parse_format(format);
  if (fmt == x0p::TableFormat::Json) {
    std::cout << x0p::degree_report_json(verdicts);
  } else {
    std::cout << x0p::render_table(x0p::degree_table(verdicts), fmt);
  }

  bool any_unknown = false;
  for (const auto& v : verdicts) {
    if (v.status == x0p::Density::Unknown) any_unknown = true;
  }
  if (verify_known && degree == 6) {
    bool mismatch = false;
    for (const auto& v : verdicts) {
      bool expect = x0p::degree6_infinite_expected(v.level);
      bool got = v.status == x0p::Density::Infinite;
      if (expect != got) {
        std::cerr << "classification mismatch at level " << v.level << ": computed " << x0p::density_name(v.status)
                  << ", expected " << (expect ? "Infinite" : "Finite") << "\n";
        mismatch = true;
      }
    }
    if (any_unknown) return kExitMissingData;
    if (mismatch) return kExitMismatch;
  }
  if (any_unknown) return kExitMissingData;
  return kExitOk;
}

int run_split_stats(const std::string& range_text, const std::string& facts_dir) {
  Range r = parse_range(range_text);
  x0p::FactsBundle bundle = x0p::load_facts_bundle(facts_dir);
  x0p::SplitStats stats;
  stats.range_lo = r.lo;
  stats.range_hi = r.hi;
  for (std::int64_t p : primes_in(r)) {
    ++stats.primes;
    auto it = bundle.factor_tables.find(p);
    if (it == bundle.factor_tables.end()) {
      if (x0p::genus_x0(static_cast<std::uint64_t>(p)) == 0) {
        // Zero-dimensional Jacobian: the decomposition hypothesis holds
        // with nothing to remove.
        ++stats.with_data;
        ++stats.satisfied;
      } else {
        ++stats.skipped;
      }
      continue;
    }
    ++stats.with_data;
    if (x0p::satisfies_split_hypothesis(it->second)) ++stats.satisfied;
  }
  std::cout << x0p::split_stats_line(stats);
  return kExitOk;
}

int run_fetch(const std::string& what, std::int64_t lo, std::int64_t hi, std::int64_t rank_min,
              const std::string& base_url, const std::string& cache_dir, bool offline, double interval,
              const std::string& format) {
  x0p::LmfdbClient::Options opt;
  opt.base_url = base_url;
  opt.cache_dir = cache_dir;
  opt.offline = offline;
  opt.min_request_interval_s = interval;
  x0p::LmfdbClient client(opt);
  auto fmt = x0p::parse_format(format);
  if (what == "newforms") {
    auto tables = client.fetch_newforms(x0p::NewformQuery{lo, hi});
    x0p::Table t;
    t.columns = {"level", "label", "dim", "fricke", "analytic_rank"};
    for (const auto& table : tables) {
      for (const auto& f : table.factors) {
        t.rows.push_back({std::to_string(f.level), f.label, std::to_string(f.dim), std::to_string(f.fricke),
                          std::to_string(f.analytic_rank)});
      }
    }
    std::cout << x0p::render_table(t, fmt);
  } else if (what == "elliptic") {
    auto records = client.fetch_elliptic_curves(lo, hi, rank_min);
    x0p::Table t;
    t.columns = {"label", "conductor", "rank", "modular_degree"};
    for (const auto& rec : records) {
      t.rows.push_back(
          {rec.label, std::to_string(rec.conductor), std::to_string(rec.rank), std::to_string(rec.modular_degree)});
    }
    std::cout << x0p::render_table(t, fmt);
  } else {
    throw std::invalid_argument("fetch expects 'newforms' or 'elliptic'");
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"invariants, morphisms and low-degree points of X_0(p)"};
  app.require_subcommand(1);

  std::string range_text, format = "md", facts_dir, kernel_data;
  bool show_residual = false, verify_known = false, offline = false;
  int degree = 6, jobs = 1;
  std::string fetch_what, base_url = "https://www.lmfdb.org", cache_dir = ".x0p-cache";
  std::int64_t lo = 1, hi = 1, rank_min = 0;
  double interval = 1.0;

  auto* genus = app.add_subcommand("genus", "invariant table for a level or range");
  genus->add_option("range", range_text, "level N or range A..B")->required();
  genus->add_option("--format", format, "md, csv or json");

  auto* morph = app.add_subcommand("classify-morphisms", "classify maps onto genus >= 2 curves");
  morph->add_option("range", range_text, "prime or range A..B")->required();
  morph->add_option("--facts", facts_dir, "facts bundle directory")->required();
  morph->add_option("--kernel-data", kernel_data, "kernel-exponent JSON replacing the bundled file");
  morph->add_flag("--show-residual", show_residual, "print only the residual dim-2 table");
  morph->add_option("--format", format, "md, csv or json");
  morph->add_option("--jobs", jobs, "worker threads");

  auto* deg = app.add_subcommand("classify-degree", "infinitude of degree-d points");
  deg->add_option("range", range_text, "prime or range A..B")->required();
  deg->add_option("--degree", degree, "point degree (1..6)");
  deg->add_option("--facts", facts_dir, "facts bundle directory")->required();
  deg->add_flag("--verify-known-set", verify_known, "compare against the built-in degree-6 classification");
  deg->add_option("--format", format, "md, csv or json");
  deg->add_option("--jobs", jobs, "worker threads");

  auto* stats = app.add_subcommand("split-stats", "decomposition-hypothesis statistics over a range");
  stats->add_option("range", range_text, "prime or range A..B")->required();
  stats->add_option("--facts", facts_dir, "facts bundle directory")->required();

  auto* fetch = app.add_subcommand("fetch", "query the modular-forms database (cached)");
  fetch->add_option("what", fetch_what, "newforms or elliptic")->required();
  fetch->add_option("--min", lo, "level/conductor minimum")->required();
  fetch->add_option("--max", hi, "level/conductor maximum")->required();
  fetch->add_option("--rank-min", rank_min, "minimum rank (elliptic only)");
  fetch->add_option("--base-url", base_url, "database base URL");
  fetch->add_option("--cache-dir", cache_dir, "local cache directory");
  fetch->add_flag("--offline", offline, "use the cache only");
  fetch->add_option("--interval", interval, "minimum seconds between requests");
  fetch->add_option("--format", format, "md, csv or json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (genus->parsed()) return run_genus(range_text, format);
    if (morph->parsed()) return run_classify_morphisms(range_text, facts_dir, kernel_data, show_residual, format, jobs);
    if (deg->parsed()) return run_classify_degree(range_text, degree, facts_dir, verify_known, format, jobs);
    if (stats->parsed()) return run_split_stats(range_text, facts_dir);
    if (fetch->parsed()) return run_fetch(fetch_what, lo, hi, rank_min, base_url, cache_dir, offline, interval, format);
  } catch (const x0p::CacheMissError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitMissingData;
  } catch (const x0p::SchemaError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitMissingData;
  } catch (const x0p::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitMissingData;
  } catch (const x0p::NetworkError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitMissingData;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitMismatch;
  }
  return kExitUsage;
}
