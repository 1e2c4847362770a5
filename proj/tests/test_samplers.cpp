#include <map>

#include "doctest.h"
#include "macm/error.hpp"
#include "macm/kernel.hpp"
#include "macm/measures.hpp"
#include "macm/samplers.hpp"

using namespace macm;

namespace {

const Rational half(1, 2);
const Rational third(1, 3);

std::vector<Partition> all_up_to(int n) {
  std::vector<Partition> out;
  for (int k = 0; k <= n; ++k)
    for (auto& p : partitions_of(k)) out.push_back(p);
  return out;
}

template <class Key>
double tv_distance(const std::map<Key, int>& counts, int total, const std::map<Key, double>& law) {
  double tv = 0, covered = 0;
  for (const auto& [k, p] : law) {
    auto it = counts.find(k);
    const double e = it == counts.end() ? 0.0 : static_cast<double>(it->second) / total;
    tv += std::abs(e - p);
    covered += p;
  }
  for (const auto& [k, c] : counts)
    if (!law.count(k)) tv += static_cast<double>(c) / total;
  tv += 1 - covered;
  return tv / 2;
}

}  // namespace

TEST_CASE("random source reproducibility and spawning") {
  RandomSource a(7), b(7), c(8);
  std::vector<std::uint64_t> xa, xb, xc;
  for (int i = 0; i < 5; ++i) {
    xa.push_back(a.next_u64());
    xb.push_back(b.next_u64());
    xc.push_back(c.next_u64());
  }
  CHECK(xa == xb);
  CHECK(xa != xc);
  RandomSource p(7);
  auto s0 = p.spawn(0), s1 = p.spawn(1), s0b = RandomSource(7).spawn(0);
  CHECK(s0.next_u64() == s0b.next_u64());
  CHECK(s0.next_u64() != s1.next_u64());
  CHECK(s1.path() == std::vector<std::uint64_t>{7, 1});
  const double x = a.uniform();
  CHECK(x >= 0.0);
  CHECK(x < 1.0);
}

TEST_CASE("cdf table thresholds") {
  CdfTable t({Rational(1, 4), Rational(1, 2), Rational(1, 4)});
  const std::uint64_t quarter = std::uint64_t(1) << 62;
  CHECK(t.draw(0) == 0);
  CHECK(t.draw(quarter - 1) == 0);
  CHECK(t.draw(quarter) == 1);
  CHECK(t.draw(3 * quarter - 1) == 1);
  CHECK(t.draw(3 * quarter) == 2);
  CHECK(t.draw(~std::uint64_t(0)) == 2);
  CdfTable zero_first({Rational(0), Rational(1)});
  CHECK(zero_first.draw(0) == 1);
  CdfTable short_law({half});
  CHECK(short_law.draw(~std::uint64_t(0)) == 1);
  CHECK_THROWS_AS(CdfTable({Rational(-1), Rational(2)}), Error);
  RandomSource r(1);
  Coin never(0), always(1);
  for (int i = 0; i < 100; ++i) {
    CHECK_FALSE(never.flip(r));
    CHECK(always.flip(r));
  }
  CHECK_THROWS_AS(Coin(Rational(3, 2)), Error);
}

TEST_CASE("hall-littlewood column law example") {
  const Rational t = third;
  const auto probs = hl_column_probabilities(Partition({4, 2, 1}), 1, t);
  REQUIRE(probs.size() == 5);
  CHECK(probs[0] == 0);
  CHECK(probs[1] == t * t);
  CHECK(probs[2] == t - t * t);
  CHECK(probs[3] == 0);
  CHECK(probs[4] == 1 - t);
  Rational s = 0;
  for (const auto& p : probs) s += p;
  CHECK(s == 1);
}

TEST_CASE("hall-littlewood column laws sum to one") {
  for (const Rational& t : {half, third})
    for (const auto& lam : all_up_to(7))
      for (int j = 0; j <= lam.part(1); ++j) {
        Rational s = 0;
        for (const auto& p : hl_column_probabilities(lam, j, t)) {
          CHECK(p >= 0);
          s += p;
        }
        CHECK(s == 1);
      }
}

TEST_CASE("hall-littlewood strip law equals the q = 0 Pieri step") {
  for (const Rational& t : {half, third}) {
    const QTParams p{0, t};
    const auto y = VariableSpec::geometric(1, t);
    for (const auto& lam : all_up_to(6))
      for (int k = 1; k <= 3; ++k) {
        Rational total = 0;
        for (const auto& big : horizontal_strip_extensions(lam, k)) {
          const Rational h = hl_strip_probability(lam, big, t);
          CHECK(h == pieri_transition(lam, big, y, p));
          total += h;
        }
        CHECK(total == 1);
      }
  }
}

TEST_CASE("young tableau column law example") {
  const Rational q = 2;
  const auto probs = tableau_column_probabilities(Partition({4, 2, 1}), 4, q);
  REQUIRE(probs.size() == 5);
  // λ' = (3, 2, 1, 1)
  CHECK(probs[0] == Rational(1, 15));
  CHECK(probs[1] == Rational(2, 15));
  CHECK(probs[2] == Rational(4, 15));
  CHECK(probs[3] == 0);
  CHECK(probs[4] == Rational(8, 15));
  for (const auto& lam : all_up_to(6))
    for (int n = std::max(1, lam.length()); n <= 6; ++n) {
      Rational s = 0;
      for (const auto& p : tableau_column_probabilities(lam, n, 3)) s += p;
      CHECK(s == 1);
    }
  CHECK_THROWS_AS(tableau_column_probabilities(Partition({1, 1}), 1, q), Error);
}

TEST_CASE("kerov transitions") {
  for (const Rational& q : {Rational(2), Rational(3), half})
    for (const auto& lam : all_up_to(8)) {
      Rational s = 0;
      for (const auto& cv : covers(lam)) s += kerov_transition(lam, cv.shape, q);
      CHECK(s == 1);
    }
  CHECK(kerov_transition(Partition({1}), Partition({2}), 2) == Rational(1, 3));
  CHECK(kerov_transition(Partition({1}), Partition({1, 1}), 2) == Rational(2, 3));
  CHECK(kerov_transition(Partition({1}), Partition({2}), 1) == half);
  CHECK_THROWS_AS(kerov_transition(Partition({1}), Partition({3}), 2), Error);
}

TEST_CASE("one-box Pieri step at q = t = 1/qf is the Kerov walk") {
  for (const Rational& qf : {Rational(2), Rational(3)}) {
    const Rational t = 1 / qf;
    const QTParams p{t, t};
    const auto y = VariableSpec::geometric(1, t);
    for (const auto& lam : all_up_to(7))
      for (const auto& cv : covers(lam)) {
        const Rational pieri = pieri_transition(lam, cv.shape, y, p);
        CHECK(pieri == kerov_transition(lam, cv.shape, t));
        CHECK(pieri == kerov_transition(conjugate(lam), conjugate(cv.shape), qf));
      }
  }
}

TEST_CASE("lattice weights") {
  const Rational u = half, q = 2;
  CHECK(lattice_weight(Partition(), 1, u, q) == half);
  CHECK(lattice_out_weight(Partition(), u, q) == u / (q - 1));
  for (const auto& lam : all_up_to(7)) {
    if (lam.empty()) continue;
    CHECK(lattice_out_weight(lam, u, q) == u * q / (pow(q, lam.column_length(1) + 1) - 1));
    for (int s = 1; s <= lam.part(1) + 1; ++s) CHECK(lattice_weight(lam, s, u, q) >= 0);
  }
  CHECK(lattice_weight(Partition({1}), 2, u, q) == u * (1 - half) / (q - 1));
  CHECK(lattice_weight(Partition({1}), 3, u, q) == 0);
  CHECK(weight_of_path(StandardTableau::from_column_sequence({}), u, q) == 1);
  CHECK(weight_of_path(StandardTableau::from_column_sequence({1}), u, q) == half);
  CHECK(weight_of_path(StandardTableau::from_column_sequence({1}), u, q, WeightVariant::UnitarySelfDual) == lattice_weight(Partition(), 1, -u, -q));
  CHECK(weight_of_path(StandardTableau::from_column_sequence({1}), u, q, WeightVariant::UnitaryPaired) == Rational(1, 12));
}

TEST_CASE("path weight times the product is the limiting tableau law") {
  const Rational u = half, q = 2;
  const int n_big = 80;
  Rational prod = 1;
  for (int r = 1; r <= n_big; ++r) prod *= 1 - u / pow(q, r);
  // Tail of Π_{r>N}(1 - u/q^r) plus the column-law drift are both O(q^{-N}).
  const Rational tol = pow(Rational(1, 2), 60);
  for (const auto& lam : all_up_to(5))
    for (const auto& tab : enumerate_syt(lam)) {
      const Rational limit = weight_of_path(tab, u, q) * prod;
      const Rational finite = tableau_pmf_truncated(tab, u, q, n_big);
      CHECK(abs(limit - finite) < tol);
    }
}

TEST_CASE("sampler validation") {
  CHECK_THROWS_AS(LatticeWeightSampler(half, 2, true), Error);
  CHECK_THROWS_AS(LatticeWeightSampler(Rational(9, 10), Rational(3, 2)), Error);
  CHECK_THROWS_AS(YoungTableauSampler(half, 1), Error);
  CHECK_THROWS_AS(YoungTableauSampler(Rational(0), 2), Error);
  CHECK_THROWS_AS(HLSimplifiedSampler(VariableSpec::finite({half, half}), half), Error);
  CHECK_THROWS_AS(HLSimplifiedSampler(VariableSpec::finite({half}), Rational(1)), Error);
  CHECK_THROWS_AS(KerovSampler(2, -1), Error);
  CHECK_THROWS_AS(KerovSampler(0, 3), Error);
  CHECK_THROWS_AS(GeneralSampler(GeneralSpec{VariableSpec::finite({Rational(2)}), VariableSpec::finite({1}), {half, half}}),
                  Error);
}

TEST_CASE("stopping intervals and tail bounds") {
  YoungTableauSampler yt(half, 2);
  CHECK(yt.truncation_bias() <= default_tail_tolerance());
  CHECK(yt.truncation_bias() == half / pow(Rational(2), yt.stop_interval()));
  CHECK(half / pow(Rational(2), yt.stop_interval() - 1) > default_tail_tolerance());

  GeneralSpec finite{VariableSpec::finite({half, Rational(1, 4), Rational(1, 8)}),
                     VariableSpec::finite({1, half, Rational(1, 4)}), {half, half}};
  GeneralSampler gf(finite);
  CHECK(gf.stop_interval() == 3);
  CHECK(gf.truncation_bias() < pow(Rational(1, 2), 60));

  const GeneralSpec hl = to_general(HallLittlewoodGL{half, 2});
  GeneralSampler gh(hl);
  CHECK(gh.truncation_bias() <= default_tail_tolerance() * 2);
  // q = 0 with principal y: the bound is exactly Σ_{i>M} x_i.
  CHECK(general_tail_bound(hl, 3) == Rational(1, 4) * pow(half, 3) / (1 - half));
}

TEST_CASE("traces replay to the final shape") {
  RandomSource rng(11);
  YoungTableauSampler yt(Rational(3, 4), 2);
  HLSimplifiedSampler hs(VariableSpec::geometric(Rational(1, 4), half), half);
  GeneralSampler gs(to_general(SchurQPlancherel{Rational(3, 4), 2}));
  LatticeWeightSampler lw(half, 2);
  KerovSampler kw(2, 9);
  for (int i = 0; i < 200; ++i) {
    for (auto tr : {yt.sample(rng), hs.sample(rng), gs.sample(rng), lw.sample(rng), kw.sample(rng)}) {
      CHECK(replay(tr) == tr.final_shape);
      REQUIRE(tr.tableau.has_value());
      CHECK(tr.tableau->shape() == tr.final_shape);
    }
  }
  CHECK(kw.sample(rng).final_shape.size() == 9);
}

TEST_CASE("same seed, same samples") {
  const auto spec = to_general(HallLittlewoodGL{half, 3});
  RandomSource a(99), b(99);
  GeneralSampler s1(spec), s2(spec);
  for (int i = 0; i < 50; ++i) CHECK(s1.sample(a).final_shape == s2.sample(b).final_shape);
}

TEST_CASE("young tableau sampler matches the tableau law at its stopping interval") {
  const Rational u = half, q = 2;
  YoungTableauSampler s(u, q);
  const int m = s.stop_interval();
  std::map<StandardTableau, double> law;
  for (const auto& lam : all_up_to(6))
    for (const auto& tab : enumerate_syt(lam)) law[tab] = to_double(tableau_pmf_truncated(tab, u, q, m));
  std::map<StandardTableau, int> counts;
  RandomSource rng(2024);
  const int n = 40000;
  for (int i = 0; i < n; ++i) ++counts[*s.sample(rng).tableau];
  CHECK(tv_distance(counts, n, law) < 0.02);
}

TEST_CASE("hall-littlewood sampler matches the GL measure") {
  const Rational u = half, q = 2;
  HLSimplifiedSampler s(VariableSpec::geometric(u / q, 1 / q), 1 / q);
  const int m = s.stop_interval();
  std::map<Partition, double> law;
  for (const auto& lam : all_up_to(8)) law[lam] = to_double(hl_gl_pmf_truncated(u, q, m, lam));
  std::map<Partition, int> counts;
  RandomSource rng(5);
  const int n = 40000;
  for (int i = 0; i < n; ++i) ++counts[s.sample(rng).final_shape];
  CHECK(tv_distance(counts, n, law) < 0.02);
}

TEST_CASE("general sampler matches the finite measure") {
  GeneralSpec spec{VariableSpec::finite({half, Rational(1, 4), Rational(1, 8)}),
                   VariableSpec::finite({1, half, Rational(1, 4)}), {half, half}};
  GeneralSampler s(spec);
  std::map<Partition, double> law;
  for (const auto& lam : all_up_to(8)) law[lam] = to_double(pmf_truncated(MeasureSpec{spec}, 3, lam).value);
  std::map<Partition, int> counts;
  RandomSource rng(6);
  const int n = 40000;
  for (int i = 0; i < n; ++i) ++counts[s.sample(rng).final_shape];
  CHECK(tv_distance(counts, n, law) < 0.02);
}

TEST_CASE("lattice sampler follows the halting chain") {
  const Rational u = half, q = 2;
  std::map<StandardTableau, double> law;
  for (const auto& lam : all_up_to(6))
    for (const auto& tab : enumerate_syt(lam))
      law[tab] = to_double(weight_of_path(tab, u, q) * (1 - lattice_out_weight(lam, u, q)));
  LatticeWeightSampler s(u, q);
  std::map<StandardTableau, int> counts;
  RandomSource rng(8);
  const int n = 40000;
  for (int i = 0; i < n; ++i) ++counts[*s.sample(rng).tableau];
  CHECK(tv_distance(counts, n, law) < 0.02);
}

TEST_CASE("kerov walk two-step law") {
  KerovSampler s(2, 2);
  RandomSource rng(3);
  int row = 0;
  const int n = 30000;
  for (int i = 0; i < n; ++i) row += s.sample(rng).final_shape == Partition({2});
  CHECK(std::abs(static_cast<double>(row) / n - 1.0 / 3.0) < 0.015);
}
