#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <thread>

#include <json.hpp>

#ifdef X0P_WITH_OPENSSL
#define CPPHTTPLIB_OPENSSL_SUPPORT
#endif
#include <httplib.h>

#include "x0p/ingest.hpp"

using namespace x0p;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path temp_dir(const std::string& tag) {
  auto dir = fs::temp_directory_path() / ("x0p_test_" + tag + "_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

fs::path copy_fixtures(const std::string& tag) {
  auto dst = temp_dir(tag);
  for (const auto& entry : fs::directory_iterator(X0P_FIXTURES_DIR)) {
    fs::copy_file(entry.path(), dst / entry.path().filename());
  }
  return dst;
}

void rewrite(const fs::path& file, const std::function<void(json&)>& edit) {
  json j;
  {
    std::ifstream in(file);
    in >> j;
  }
  edit(j);
  std::ofstream out(file, std::ios::trunc);
  out << j.dump(1);
}

}  // namespace

TEST_CASE("bundle loads and carries the pinned decompositions") {
  FactsBundle b = load_facts_bundle(X0P_FIXTURES_DIR);
  CHECK(b.factor_tables.size() == 425);  // primes below 3000 with positive genus

  const auto& t197 = b.factor_tables.at(197);
  std::vector<std::int64_t> dims;
  std::int64_t rank1_dim1 = 0;
  for (const auto& f : t197.factors) {
    dims.push_back(f.dim);
    if (f.dim == 1 && f.analytic_rank == 1) ++rank1_dim1;
  }
  CHECK(dims == std::vector<std::int64_t>{1, 5, 10});
  CHECK(rank1_dim1 == 1);

  CHECK(b.factor_tables.at(11).factors.size() == 1);
  CHECK(b.factor_tables.at(11).factors[0].dim == 1);

  CHECK(b.kernel_exponents.lookup(223, {"223.2.a.a"}) == 14);
  CHECK(b.genus2.lookup(223) == std::optional<bool>(false));
  CHECK(b.genus2.lookup(3001) == std::nullopt);
  CHECK(b.facts.gonality.at(193).lower == 8);
  CHECK(b.facts.known(109, 5) == std::optional<bool>(true));
  CHECK(b.facts.known(167, 5) == std::nullopt);
}

TEST_CASE("elliptic queries honor the coverage windows") {
  FactsBundle b = load_facts_bundle(X0P_FIXTURES_DIR);
  auto in_range = b.facts.query_elliptic(211, 1, 6);
  REQUIRE(in_range.has_value());
  CHECK(in_range->empty());

  auto hit = b.facts.query_elliptic(269, 1, 6);
  REQUIRE(hit.has_value());
  REQUIRE(hit->size() == 1);
  CHECK((*hit)[0].label == "269.a1");

  auto c193 = b.facts.query_elliptic(193, 1, std::numeric_limits<std::int64_t>::max());
  REQUIRE(c193.has_value());
  CHECK(c193->empty());

  auto c197 = b.facts.query_elliptic(197, 1, std::numeric_limits<std::int64_t>::max());
  REQUIRE(c197.has_value());
  REQUIRE(c197->size() == 1);
  CHECK((*c197)[0].modular_degree == 10);

  // no window covers an any-degree query at 211
  CHECK_FALSE(b.facts.query_elliptic(211, 1, std::numeric_limits<std::int64_t>::max()).has_value());
}

TEST_CASE("corrupting one dimension trips the validation gate at load") {
  auto dir = copy_fixtures("dim");
  rewrite(dir / "newform_factors.json", [](json& j) {
    for (auto& rec : j["factors"]) {
      if (rec["level"] == 197 && rec["dim"] == 5) {
        rec["dim"] = 6;
        return;
      }
    }
  });
  CHECK_THROWS_AS(load_facts_bundle(dir), ValidationError);
  fs::remove_all(dir);
}

TEST_CASE("flipping one Fricke sign trips the sign-convention gate") {
  auto dir = copy_fixtures("sign");
  rewrite(dir / "newform_factors.json", [](json& j) {
    for (auto& rec : j["factors"]) {
      if (rec["level"] == 197 && rec["dim"] == 10) {
        rec["fricke"] = 1;
        return;
      }
    }
  });
  CHECK_THROWS_AS(load_facts_bundle(dir), ValidationError);
  fs::remove_all(dir);
}

TEST_CASE("schema errors name the file and record") {
  auto dir = copy_fixtures("schema");
  {
    std::ofstream out(dir / "gonality.json", std::ios::trunc);
    out << "{\"schema_version\": \"1\", \"entries\": [{\"level\": 11, \"lower\": 2}]}";
  }
  try {
    load_facts_bundle(dir);
    FAIL("expected SchemaError");
  } catch (const SchemaError& e) {
    CHECK(std::string(e.what()).find("gonality.json") != std::string::npos);
    CHECK(std::string(e.what()).find("upper") != std::string::npos);
  }
  fs::remove_all(dir);
}

TEST_CASE("truncated file raises a schema error") {
  auto dir = copy_fixtures("trunc");
  {
    std::ifstream in(dir / "newform_factors.json");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    std::ofstream out(dir / "newform_factors.json", std::ios::trunc);
    out << text.substr(0, text.size() / 2);
  }
  CHECK_THROWS_AS(load_facts_bundle(dir), SchemaError);
  fs::remove_all(dir);
}

TEST_CASE("http client: pagination, caching, retry, offline") {
  httplib::Server server;
  std::atomic<int> newform_hits{0}, curve_hits{0}, flaky_hits{0};

  server.Get("/api/mf_newforms/", [&](const httplib::Request& req, httplib::Response& res) {
    ++newform_hits;
    std::int64_t offset = req.has_param("_offset") ? std::stoll(req.get_param_value("_offset")) : 0;
    json page;
    if (offset == 0) {
      page["data"] = json::array({
          {{"label", "11.2.a.a"}, {"level", 11}, {"dim", 1}, {"fricke_eigenval", -1}, {"analytic_rank", 0}},
          {{"label", "197.2.a.a"}, {"level", 197}, {"dim", 1}, {"fricke_eigenval", 1}, {"analytic_rank", 1}},
      });
      page["next"] = 2;
    } else {
      page["data"] = json::array({
          {{"label", "197.2.a.b"}, {"level", 197}, {"dim", 5}, {"fricke_eigenval", 1}, {"analytic_rank", 1}},
          {{"label", "197.2.a.c"}, {"level", 197}, {"dim", 10}, {"fricke_eigenval", -1}, {"analytic_rank", 0}},
      });
      page["next"] = nullptr;
    }
    res.set_content(page.dump(), "application/json");
  });

  server.Get("/api/ec_curvedata/", [&](const httplib::Request&, httplib::Response& res) {
    ++curve_hits;
    if (flaky_hits.fetch_add(1) == 0) {
      res.status = 503;  // first hit fails; the client must retry
      return;
    }
    json page;
    page["data"] = json::array({
        {{"label", "269.a1"}, {"conductor", 269}, {"rank", 1}, {"degree", 6}},
    });
    page["next"] = nullptr;
    res.set_content(page.dump(), "application/json");
  });

  int port = server.bind_to_any_port("127.0.0.1");
  REQUIRE(port > 0);
  std::thread server_thread([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  auto cache = temp_dir("cache");
  LmfdbClient::Options opt;
  opt.base_url = "http://127.0.0.1:" + std::to_string(port);
  opt.cache_dir = cache;
  opt.min_request_interval_s = 0.01;
  LmfdbClient client(opt);

  auto tables = client.fetch_newforms(NewformQuery{1, 200});
  REQUIRE(tables.size() == 2);
  CHECK(tables[0].level == 11);
  CHECK(tables[1].level == 197);
  CHECK(tables[1].factors.size() == 3);
  CHECK(newform_hits == 2);  // two pages

  // warm cache: identical payload, no extra requests
  auto tables2 = client.fetch_newforms(NewformQuery{1, 200});
  CHECK(newform_hits == 2);
  REQUIRE(tables2.size() == 2);
  for (std::size_t t = 0; t < tables.size(); ++t) {
    REQUIRE(tables2[t].factors.size() == tables[t].factors.size());
    for (std::size_t i = 0; i < tables[t].factors.size(); ++i) {
      CHECK(tables2[t].factors[i].label == tables[t].factors[i].label);
      CHECK(tables2[t].factors[i].dim == tables[t].factors[i].dim);
      CHECK(tables2[t].factors[i].fricke == tables[t].factors[i].fricke);
      CHECK(tables2[t].factors[i].analytic_rank == tables[t].factors[i].analytic_rank);
    }
  }

  auto curves = client.fetch_elliptic_curves(200, 696, 1);
  REQUIRE(curves.size() == 1);
  CHECK(curves[0].label == "269.a1");
  CHECK(curves[0].modular_degree == 6);
  CHECK(curve_hits == 2);  // one 503, one success

  // no temp files left behind by the atomic cache writes
  for (const auto& entry : fs::directory_iterator(cache)) {
    CHECK(entry.path().extension() == ".json");
  }

  // offline mode answers from cache, and only from cache
  LmfdbClient::Options off = opt;
  off.offline = true;
  LmfdbClient offline_client(off);
  auto tables3 = offline_client.fetch_newforms(NewformQuery{1, 200});
  CHECK(tables3.size() == 2);
  CHECK(newform_hits == 2);
  CHECK_THROWS_AS(offline_client.fetch_newforms(NewformQuery{1, 300}), CacheMissError);

  server.stop();
  server_thread.join();
  fs::remove_all(cache);
}

TEST_CASE("served data failing the dimension gate is rejected") {
  httplib::Server server;
  server.Get("/api/mf_newforms/", [&](const httplib::Request&, httplib::Response& res) {
    json page;
    page["data"] = json::array({
        {{"label", "11.2.a.a"}, {"level", 11}, {"dim", 2}, {"fricke_eigenval", -1}, {"analytic_rank", 0}},
    });
    page["next"] = nullptr;
    res.set_content(page.dump(), "application/json");
  });
  int port = server.bind_to_any_port("127.0.0.1");
  std::thread server_thread([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  auto cache = temp_dir("badsum");
  LmfdbClient::Options opt;
  opt.base_url = "http://127.0.0.1:" + std::to_string(port);
  opt.cache_dir = cache;
  opt.min_request_interval_s = 0.01;
  LmfdbClient client(opt);
  CHECK_THROWS_AS(client.fetch_newforms(NewformQuery{11, 11}), ValidationError);

  server.stop();
  server_thread.join();
  fs::remove_all(cache);
}
