#include "doctest.h"

#include <filesystem>
#include <random>

#include "eisenprod/cache.hpp"
#include "eisenprod/eliminate.hpp"
#include "eisenprod/errors.hpp"
#include "support.hpp"

namespace ep = eisenprod;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& tag) {
  fs::path d = fs::temp_directory_path() / ("eisenprod-test-" + tag + "-" + std::to_string(std::random_device{}()));
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

std::vector<ep::Rational> delta_coeffs(std::size_t N) {
  const auto d = testsupport::Delta12(N);
  return {d.begin(), d.end()};
}

}  // namespace

TEST_CASE("a known solution satisfies every equation") {
  const auto b = delta_coeffs(40);
  for (unsigned n = 6; n <= 40; ++n) {
    if (ep::is_prime_power(n)) continue;
    CAPTURE(n);
    CHECK(ep::evaluate_E(2, n, b) == 0);
  }
  auto bad = b;
  bad[5] += 1;
  CHECK(ep::evaluate_E(2, 6, bad) != 0);
}

TEST_CASE("extension and certification from eight coefficients") {
  ep::SolutionRecord rec;
  rec.k = 2;
  const auto full = delta_coeffs(100);
  rec.b.assign(full.begin(), full.begin() + 9);
  const auto ext = ep::extend_solution(rec, 100);
  CHECK(ext.b == full);
  CHECK(ext.flags.empty());
  const auto cert = ep::certify(ext, 100);
  CHECK(cert.status == ep::CertStatus::kBoth);
  CHECK(cert.label == "Δ12");
  CHECK(cert.product_label == "Δ16");
  CHECK(cert.certified_to == 100);
}

TEST_CASE("certification rejects a perturbed sequence") {
  ep::SolutionRecord rec;
  rec.k = 2;
  const auto full = delta_coeffs(100);
  rec.b.assign(full.begin(), full.begin() + 9);
  rec.b[7] += 1;
  const auto cert = ep::certify(ep::extend_solution(rec, 100), 100);
  CHECK(cert.status != ep::CertStatus::kBoth);
  CHECK(cert.label == "unmatched");
}

TEST_CASE("cache round trip and determinism") {
  const fs::path dir = fresh_dir("cache");
  ep::Cache cache(dir);
  auto reg = ep::make_registry({"x", "y"});
  const ep::Poly p = ep::parse_poly(reg, "x^2*y - 7/3*y + 1");
  const std::string key = ep::Cache::key("numeric-k2", "unit", ep::digest(p));
  CHECK(key == ep::Cache::key("numeric-k2", "unit", ep::digest(p)));
  CHECK_FALSE(cache.contains(key));
  CHECK_FALSE(cache.load(key, reg).has_value());
  cache.store(key, p);
  CHECK(cache.contains(key));
  CHECK(cache.load(key, reg) == p);
  cache.store_text("note", "hello");
  CHECK(cache.load_text("note") == std::optional<std::string>("hello"));
  const auto report = cache.gc();
  CHECK(report.kept >= 1);
  CHECK(cache.load(key, reg) == p);

  // A linear stage computed cold, warm and without a cache is identical.
  auto run = [&](ep::Cache* c) {
    ep::SystemInstance sys = ep::SystemInstance::numeric(2);
    ep::EliminationTrace trace;
    const ep::LinearStage st = ep::linear_eliminate(sys, &trace, c);
    return std::make_pair(ep::to_json(st).dump(), trace.digest());
  };
  const auto none = run(nullptr);
  const auto cold = run(&cache);
  const auto warm = run(&cache);
  CHECK(cold == none);
  CHECK(warm == none);
  fs::remove_all(dir);
}

TEST_CASE("linear replay reproduces a known solution") {
  ep::SystemInstance sys = ep::SystemInstance::numeric(2);
  const ep::LinearStage st = ep::linear_eliminate(sys);
  CHECK(st.solves.size() == ep::kLinearPairs.size());
  const auto b = delta_coeffs(40);
  std::map<unsigned, ep::Rational> free;
  for (unsigned n : {2u, 3u, 4u, 7u}) free[n] = b[n];
  const auto vals = ep::replay_linear(st, free);
  REQUIRE(vals.has_value());
  for (const auto& [n, v] : *vals) {
    CAPTURE(n);
    CHECK(v == b[n]);
  }
  for (const auto& [n, E] : st.remaining) {
    std::map<ep::VarId, ep::Rational> at;
    for (const auto& [m, v] : *vals) {
      if (auto id = st.registry->find(ep::b_name(m))) at[*id] = v;
    }
    CAPTURE(n);
    CHECK(ep::substitute(E, at).is_zero());
  }
}
