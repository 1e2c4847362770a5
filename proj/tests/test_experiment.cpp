#include <cmath>
#include <functional>

#include "doctest.h"
#include "macm/error.hpp"
#include "macm/experiment.hpp"
#include "macm/verify.hpp"

using namespace macm;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::DomainError;
}

}  // namespace

TEST_CASE("sampler names") {
  for (auto k : {SamplerKind::General, SamplerKind::HLSimplified, SamplerKind::YoungTableau, SamplerKind::LatticeWeights,
                 SamplerKind::Kerov})
    CHECK(parse_sampler_kind(to_string(k)) == k);
  CHECK(code_of([] { parse_sampler_kind("metropolis"); }) == ErrorCode::ConfigError);
}

TEST_CASE("sampler and spec compatibility") {
  ExperimentConfig cfg;
  cfg.spec = SchurQPlancherel{Rational(1, 2), 2};
  cfg.sampler = SamplerKind::YoungTableau;
  CHECK(code_of([&] { make_sampler(cfg); }) == ErrorCode::ConfigError);
  cfg.sampler = SamplerKind::Kerov;
  CHECK(code_of([&] { make_sampler(cfg); }) == ErrorCode::ConfigError);
  cfg.kerov_steps = 3;
  CHECK(make_sampler(cfg).stop_interval == 3);
  cfg.sampler = SamplerKind::HLSimplified;
  CHECK(code_of([&] { make_sampler(cfg); }) == ErrorCode::ConfigError);
  cfg.spec = GeneralSpec{VariableSpec::finite({Rational(1, 2)}), VariableSpec::geometric(1, Rational(1, 3)), {0, Rational(1, 3)}};
  CHECK(make_sampler(cfg).stop_interval == 1);
  cfg.spec = HallLittlewoodGL{Rational(3, 2), 2};
  CHECK(code_of([&] { make_sampler(cfg); }) == ErrorCode::ConfigError);
}

TEST_CASE("empty run") {
  ExperimentConfig cfg;
  cfg.n_samples = 0;
  const auto r = run_experiment(cfg);
  CHECK_FALSE(r.tv.has_value());
  CHECK_FALSE(r.p_value.has_value());
  for (const auto& row : r.rows) CHECK(row.count == 0);
}

TEST_CASE("runs are deterministic and independent of the thread count") {
  ExperimentConfig cfg;
  cfg.n_samples = 3000;
  cfg.seed = 17;
  cfg.threads = 1;
  const Tally serial = tabulate(cfg);
  cfg.threads = 4;
  const Tally parallel = tabulate(cfg);
  CHECK(serial.counts == parallel.counts);
  CHECK(serial.untracked == parallel.untracked);
  const auto a = run_experiment(cfg), b = run_experiment(cfg);
  REQUIRE(a.rows.size() == b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) CHECK(a.rows[i].count == b.rows[i].count);
  CHECK(*a.tv == *b.tv);
  cfg.seed = 18;
  CHECK(tabulate(cfg).counts != serial.counts);
}

TEST_CASE("empirical frequencies sum to one") {
  ExperimentConfig cfg;
  cfg.n_samples = 2000;
  cfg.max_tracked_size = 3;
  const auto r = run_experiment(cfg);
  double total = static_cast<double>(r.untracked_count) / 2000;
  for (const auto& row : r.rows) total += row.empirical;
  CHECK(total == doctest::Approx(1.0));
  CHECK(*r.tv >= 0);
  CHECK(r.untracked_mass > 0);
}

TEST_CASE("pooled chi-square") {
  auto c = pooled_chi_square({10, 10}, {10, 10}, 0, 0);
  REQUIRE(c.has_value());
  CHECK(c->statistic == 0);
  CHECK(c->dof == 1);
  CHECK(c->p_value == doctest::Approx(1.0));
  // Cells with expected count below 5 go into the pooled cell.
  c = pooled_chi_square({30, 1, 2, 17}, {25, 2, 3, 20}, 0, 0);
  REQUIRE(c.has_value());
  CHECK(c->dof == 2);
  // pooled (1+2 vs 2+3) gives 0.8, then 0.45 and 1.0
  CHECK(c->statistic == doctest::Approx(2.25));
  CHECK(c->p_value == doctest::Approx(std::exp(-1.125)));
  CHECK_FALSE(pooled_chi_square({1}, {1}, 0, 0).has_value());
}

TEST_CASE("exact laws of the halting and Kerov chains") {
  ExperimentConfig cfg;
  cfg.sampler = SamplerKind::LatticeWeights;
  Rational total = 0;
  for (const auto& [lam, p] : exact_law(cfg, 0, 10)) total += p.value;
  CHECK(total < 1);
  CHECK(1 - total < Rational(1, 1000000));

  cfg.spec = SchurQPlancherel{1, 2};
  cfg.sampler = SamplerKind::Kerov;
  cfg.kerov_steps = 2;
  const auto law = exact_law(cfg, 2, 4);
  CHECK(law.at(Partition{2}).value == Rational(1, 3));
  CHECK(law.at(Partition{1, 1}).value == Rational(2, 3));
  CHECK(law.at(Partition{1}).value == 0);
}

TEST_CASE("kerov experiment, two steps") {
  ExperimentConfig cfg;
  cfg.spec = SchurQPlancherel{1, 2};
  cfg.sampler = SamplerKind::Kerov;
  cfg.kerov_steps = 2;
  cfg.n_samples = 20000;
  const auto r = run_experiment(cfg);
  for (const auto& row : r.rows)
    if (row.shape == Partition{2}) CHECK(row.empirical == doctest::Approx(1.0 / 3).epsilon(0.05));
  CHECK(*r.tv < 0.02);
}

TEST_CASE("verify suites") {
  CHECK(suite_names().size() == 7);
  CHECK(code_of([] { verify("everything"); }) == ErrorCode::UnknownSuite);
  const auto r = verify("partitions");
  CHECK(r.passed());
  CHECK(r.items.size() == 2);
}
