#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "vakit/parallel.hpp"

using namespace vakit;

namespace {

nlohmann::json untimed(const CheckReport& r) { return r.to_json(false); }

std::vector<Identity> all_identities(const Structure& s) { return identities_for(s); }

void expect_same(const AxiomResult& a, const AxiomResult& b, const std::string& ctx) {
  EXPECT_EQ(a.verdict, b.verdict) << ctx;
  EXPECT_EQ(a.cases, b.cases) << ctx;
  ASSERT_EQ(a.witness.has_value(), b.witness.has_value()) << ctx;
  if (a.witness) EXPECT_EQ(witness_to_json(*a.witness), witness_to_json(*b.witness)) << ctx;
}

}  // namespace

TEST(FirstFailure, SerialAndParallelAgree) {
  for (std::size_t n : {0u, 1u, 63u, 64u, 1000u, 4097u}) {
    for (std::size_t bad : {0u, 7u, 500u, 4096u, 100000u}) {
      auto pred = [&](std::size_t i) { return i >= bad && i % 3 == bad % 3; };
      auto s = first_failure_serial(n, pred);
      for (int w : {1, 2, 4, 7}) EXPECT_EQ(first_failure_parallel(n, pred, w), s) << n << " " << bad << " " << w;
    }
  }
}

TEST(FirstFailure, ExceptionsPropagate) {
  auto pred = [](std::size_t i) -> bool {
    if (i == 300) throw std::runtime_error("boom");
    return false;
  };
  EXPECT_THROW(first_failure_parallel(1000, pred, 4), std::runtime_error);
  auto earlier = [](std::size_t i) -> bool {
    if (i == 300) throw std::runtime_error("boom");
    return i == 10;
  };
  EXPECT_EQ(first_failure_parallel(1000, earlier, 4), std::optional<std::size_t>(10));
}

TEST(Verify, SerialReferenceMatchesParallel) {
  std::vector<std::string> names = fixtures::algebra_names();
  for (auto m : fixtures::module_names()) names.push_back(m);
  names.push_back("dual-exterior2");
  names.push_back("dual-adjoint-diff-eps3");
  ScopedWorkers workers(4);
  for (const auto& n : names) {
    Structure s = make_example(n);
    for (const auto& id : all_identities(s)) expect_same(verify(id), verify_serial(id), n + " " + id.id);
  }
}

TEST(Verify, PlantedDefectsAgree) {
  ScopedWorkers workers(3);
  for (const auto& d : fixtures::planted_defects()) {
    for (const auto& id : d.identities()) expect_same(verify(id), verify_serial(id), d.name + " " + id.id);
  }
}

TEST(Reports, StableAcrossWorkerCounts) {
  for (const auto& n : {"exterior3", "zero-beta", "free2-exterior2", "dual-diff-eps3"}) {
    Structure s = make_example(n);
    nlohmann::json first;
    for (int w : {1, 2, 4, 8}) {
      ScopedWorkers workers(w);
      CheckOptions opt;
      auto rep = run_check(s, Suite::All, opt);
      auto j = untimed(rep);
      if (w == 1) {
        first = j;
      } else {
        EXPECT_EQ(j.dump(), first.dump()) << n << " workers " << w;
      }
    }
  }
}

TEST(Reports, WorkerCountIsScoped) {
  int before = worker_count();
  {
    ScopedWorkers w(5);
    EXPECT_EQ(worker_count(), 5);
  }
  EXPECT_EQ(worker_count(), before);
}
