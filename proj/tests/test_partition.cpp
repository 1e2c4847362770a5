#include <algorithm>
#include <set>

#include "doctest.h"
#include "macm/error.hpp"
#include "macm/partition.hpp"

using namespace macm;

namespace {

std::vector<Partition> all_partitions_up_to(int n) {
  std::vector<Partition> out;
  for (int k = 0; k <= n; ++k)
    for (auto& p : partitions_of(k)) out.push_back(p);
  return out;
}

// Brute-force strip test straight from the one-box-per-column definition.
bool strip_by_columns(const Partition& big, const Partition& small) {
  if (!big.contains(small)) return false;
  for (int j = 1; j <= big.part(1); ++j)
    if (big.column_length(j) - small.column_length(j) > 1) return false;
  return true;
}

}  // namespace

TEST_CASE("partition construction validates parts") {
  CHECK(Partition{}.empty());
  CHECK(Partition{5, 4, 4, 1}.size() == 14);
  CHECK_THROWS_AS(Partition({1, 2}), Error);
  CHECK_THROWS_AS(Partition({2, 0}), Error);
}

TEST_CASE("conjugate") {
  CHECK(conjugate(Partition{}) == Partition{});
  CHECK(conjugate(Partition{5, 4, 4, 1}) == Partition{4, 3, 3, 3, 1});
  CHECK(conjugate(Partition{3}) == Partition{1, 1, 1});
  for (const auto& p : all_partitions_up_to(12)) CHECK(conjugate(conjugate(p)) == p);
}

TEST_CASE("cell_stats") {
  auto st = cell_stats(Partition{5, 4, 4, 1}, {2, 2});
  CHECK(st.arm == 2);
  CHECK(st.leg == 1);
  CHECK(st.coarm == 1);
  CHECK(st.coleg == 1);

  st = cell_stats(Partition{1}, {1, 1});
  CHECK(st.arm == 0);
  CHECK(st.leg == 0);
  CHECK(st.hook == 1);
  CHECK(st.content == 0);

  st = cell_stats(Partition{3, 1}, {1, 1});
  CHECK(st.hook == 4);
  CHECK(st.content == 0);

  try {
    cell_stats(Partition{2, 1}, {2, 2});
    FAIL("expected CellOutsideShape");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CellOutsideShape);
  }
}

TEST_CASE("n_stat two routes and hook sum identity") {
  CHECK(n_stat(Partition{}) == 0);
  CHECK(n_stat(Partition{5, 4, 4, 1}) == 15);
  CHECK(n_stat(Partition{1, 1}) == 1);
  for (const auto& p : all_partitions_up_to(12)) {
    CHECK(n_stat(p) == n_stat_by_columns(p));
    CHECK(hook_sum(p) == n_stat(p) + n_stat(conjugate(p)) + p.size());
  }
}

TEST_CASE("horizontal strip extensions") {
  auto ext = horizontal_strip_extensions(Partition{2, 1}, 2);
  std::vector<Partition> expected{{4, 1}, {3, 2}, {3, 1, 1}, {2, 2, 1}};
  CHECK(ext == expected);

  CHECK(horizontal_strip_extensions(Partition{}, 1) == std::vector<Partition>{Partition{1}});
  CHECK(horizontal_strip_extensions(Partition{2}, 0) == std::vector<Partition>{Partition{2}});
  CHECK(horizontal_strip_extensions(Partition{2, 1}, 2, 2) == std::vector<Partition>{{4, 1}, {3, 2}});
  CHECK(horizontal_strip_extensions(Partition{1, 1, 1}, 1, 2).empty());
}

TEST_CASE("strip extensions agree with brute-force filtering") {
  for (const auto& lam : all_partitions_up_to(7)) {
    for (int k = 0; k <= 4; ++k) {
      for (int cap : {1, 2, 3, 100}) {
        const auto got = horizontal_strip_extensions(lam, k, cap);
        std::vector<Partition> want;
        for (const auto& big : partitions_of(lam.size() + k))
          if (big.length() <= cap && strip_by_columns(big, lam)) want.push_back(big);
        CHECK(got == want);
        for (const auto& big : got) {
          for (int i = 1; i <= big.length(); ++i) {
            CHECK(lam.part(i) <= big.part(i));
            if (i > 1) CHECK(big.part(i) <= lam.part(i - 1));
          }
        }
      }
    }
  }
}

TEST_CASE("strip removals are exactly the strip predecessors") {
  for (const auto& lam : all_partitions_up_to(8)) {
    std::set<Partition> got;
    for (const auto& mu : horizontal_strip_removals(lam)) got.insert(mu);
    std::set<Partition> want;
    for (int k = 0; k <= lam.size(); ++k)
      for (const auto& mu : partitions_of(k))
        if (strip_by_columns(lam, mu)) want.insert(mu);
    CHECK(got == want);
  }
}

TEST_CASE("covers") {
  auto c = covers(Partition{});
  REQUIRE(c.size() == 1);
  CHECK(c[0].shape == Partition{1});
  CHECK(c[0].col == 1);

  c = covers(Partition{1});
  REQUIRE(c.size() == 2);
  CHECK(c[0].shape == Partition{2});
  CHECK(c[0].col == 2);
  CHECK(c[1].shape == Partition{1, 1});
  CHECK(c[1].col == 1);

  c = covers(Partition{2, 1});
  REQUIRE(c.size() == 3);
  std::set<std::pair<int, Partition>> got;
  for (auto& cv : c) got.insert({cv.col, cv.shape});
  CHECK(got == std::set<std::pair<int, Partition>>{{1, {2, 1, 1}}, {2, {2, 2}}, {3, {3, 1}}});

  for (const auto& lam : all_partitions_up_to(8)) {
    for (const auto& cv : covers(lam)) {
      CHECK(cv.shape.size() == lam.size() + 1);
      CHECK(cv.shape.contains(lam));
      CHECK(remove_from_column(cv.shape, cv.col) == lam);
    }
  }
}

TEST_CASE("partition enumeration counts") {
  const int counts[] = {1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77};
  for (int n = 0; n <= 12; ++n) CHECK(partitions_of(n).size() == static_cast<std::size_t>(counts[n]));
  CHECK(partitions_of(6, 2).size() == 4);
  auto p = partitions_of(4);
  CHECK(std::is_sorted(p.begin(), p.end(), [](auto& a, auto& b) { return a > b; }));
}

TEST_CASE("parse and format") {
  CHECK(parse_partition("5 4 4 1") == Partition{5, 4, 4, 1});
  CHECK(parse_partition("(5,4,4,1)") == Partition{5, 4, 4, 1});
  CHECK(parse_partition("()") == Partition{});
  CHECK(parse_partition("") == Partition{});
  CHECK(Partition{3, 1}.to_string() == "(3,1)");
  CHECK(parse_partition(Partition{3, 2, 2}.to_string()) == Partition{3, 2, 2});
  CHECK_THROWS_AS(parse_partition("1 2"), Error);
  CHECK_THROWS_AS(parse_partition("a"), Error);
}
