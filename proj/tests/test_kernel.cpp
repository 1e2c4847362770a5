#include <algorithm>
#include <numeric>

#include "doctest.h"
#include "macm/error.hpp"
#include "macm/kernel.hpp"

using namespace macm;

namespace {

const Rational half(1, 2);

std::vector<Partition> all_up_to(int n) {
  std::vector<Partition> out;
  for (int k = 0; k <= n; ++k)
    for (auto& p : partitions_of(k)) out.push_back(p);
  return out;
}

Rational determinant(std::vector<std::vector<Rational>> m) {
  const std::size_t n = m.size();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m[piv][c] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      const Rational f = m[r][c] / m[c][c];
      for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
    }
  }
  return det;
}

// Schur oracle: bialternant det(x_i^{λ_j + m - j}) / det(x_i^{m - j}).
Rational schur_bialternant(const Partition& lam, const std::vector<Rational>& xs) {
  const std::size_t m = xs.size();
  if (static_cast<std::size_t>(lam.length()) > m) return 0;
  std::vector<std::vector<Rational>> num(m, std::vector<Rational>(m)), den(m, std::vector<Rational>(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      const long e = static_cast<long>(m - 1 - j);
      num[i][j] = pow(xs[i], lam.part(static_cast<int>(j) + 1) + e);
      den[i][j] = pow(xs[i], e);
    }
  return determinant(num) / determinant(den);
}

// Hall-Littlewood oracle: symmetrization over S_m of x^λ Π_{i<j} (x_i - t x_j)/(x_i - x_j), divided by v_λ(t).
Rational hall_littlewood_symmetrized(const Partition& lam, const std::vector<Rational>& xs, const Rational& t) {
  const int m = static_cast<int>(xs.size());
  if (lam.length() > m) return 0;
  std::vector<int> perm(static_cast<std::size_t>(m));
  std::iota(perm.begin(), perm.end(), 0);
  Rational total = 0;
  do {
    Rational term = 1;
    for (int i = 0; i < m; ++i) term *= pow(xs[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])], lam.part(i + 1));
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j) {
        const Rational& a = xs[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])];
        const Rational& b = xs[static_cast<std::size_t>(perm[static_cast<std::size_t>(j)])];
        term *= (a - t * b) / (a - b);
      }
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  auto v = [&](int k) {
    Rational out = 1;
    for (int j = 1; j <= k; ++j) out *= (1 - pow(t, j)) / (1 - t);
    return out;
  };
  Rational vl = v(m - lam.length());
  for (int i = 1; i <= lam.part(1); ++i) vl *= v(lam.multiplicity(i));
  return total / vl;
}

}  // namespace

TEST_CASE("b_weight examples") {
  CHECK(b_weight(Partition{}, {0, half}) == 1);
  CHECK(b_weight(Partition{1}, {0, half}) == half);
  CHECK(b_weight(Partition{1}, {Rational(1, 3), Rational(1, 3)}) == 1);
  for (const auto& lam : all_up_to(6)) CHECK(b_weight(lam, {Rational(1, 4), Rational(1, 4)}) == 1);
}

TEST_CASE("phi_weight") {
  CHECK(phi_weight(Partition{2, 1}, Partition{2, 1}, {Rational(1, 3), Rational(1, 5)}) == 1);
  CHECK(phi_weight(Partition{1}, Partition{}, {0, half}) == half);
  for (const auto& lam : all_up_to(5))
    for (int r = 0; r <= 3; ++r)
      for (const auto& big : horizontal_strip_extensions(lam, r))
        CHECK(phi_weight(big, lam, {half, half}) == 1);
  try {
    phi_weight(Partition{2, 2}, Partition{1}, {0, half});
    FAIL("expected NotAStrip");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotAStrip);
  }
}

TEST_CASE("skew_one_var") {
  const QTParams p{Rational(1, 3), Rational(1, 5)};
  CHECK(skew_one_var(Partition{3, 1}, Partition{3, 1}, Rational(7, 3), p) == 1);
  CHECK(skew_one_var(Partition{2, 2}, Partition{1}, half, p) == 0);
  CHECK(skew_one_var(Partition{1}, Partition{}, half, {0, half}) == half);
}

TEST_CASE("principal_specialization") {
  CHECK(principal_specialization(Partition{}, std::nullopt, {0, half}) == 1);
  CHECK(principal_specialization(Partition{1}, std::nullopt, {0, half}) == 2);
  CHECK(principal_specialization(Partition{1, 1}, 1, {0, half}) == 0);
  // A fewer-variables evaluation also vanishes through the branching route.
  CHECK(macdonald_eval_finite(Partition{1, 1}, {1}, {0, half}) == 0);
}

TEST_CASE("principal specialization agrees with branching evaluation") {
  for (const QTParams& p : {QTParams{0, half}, QTParams{half, half}, QTParams{Rational(1, 3), Rational(1, 5)}}) {
    for (int n_vars = 1; n_vars <= 4; ++n_vars) {
      std::vector<Rational> xs;
      for (int i = 0; i < n_vars; ++i) xs.push_back(pow(p.t, i));
      FiniteEvaluator ev(xs, p);
      for (const auto& lam : all_up_to(5)) CHECK(ev.evaluate(lam) == principal_specialization(lam, n_vars, p));
    }
  }
}

TEST_CASE("branching evaluation matches independent Schur and Hall-Littlewood formulas") {
  const std::vector<Rational> xs{half, Rational(1, 3), Rational(2, 7)};
  const Rational t(2, 5);
  for (const auto& lam : all_up_to(5)) {
    for (std::size_t m = 1; m <= 3; ++m) {
      std::vector<Rational> sub(xs.begin(), xs.begin() + static_cast<long>(m));
      CHECK(macdonald_eval_finite(lam, sub, {t, t}) == schur_bialternant(lam, sub));
      CHECK(macdonald_eval_finite(lam, sub, {0, t}) == hall_littlewood_symmetrized(lam, sub, t));
    }
  }
}

TEST_CASE("branching evaluation is symmetric in the variables") {
  const QTParams p{Rational(1, 3), Rational(1, 5)};
  std::vector<Rational> xs{half, Rational(1, 3), Rational(3, 4)};
  for (const auto& lam : all_up_to(5)) {
    for (std::size_t m = 1; m <= 3; ++m) {
      std::vector<Rational> sub(xs.begin(), xs.begin() + static_cast<long>(m));
      std::sort(sub.begin(), sub.end());
      const Rational ref = macdonald_eval_finite(lam, sub, p);
      do {
        CHECK(macdonald_eval_finite(lam, sub, p) == ref);
      } while (std::next_permutation(sub.begin(), sub.end()));
    }
  }
  CHECK(macdonald_eval_finite(Partition{}, xs, p) == 1);
  CHECK(macdonald_eval_finite(Partition{1}, {Rational(2), Rational(5)}, p) == 7);
}

TEST_CASE("monomial coefficients of P_λ are non-negative") {
  // Every skew factor is non-negative for 0 <= q, t < 1, so evaluating at x >= 0 stays >= 0.
  const QTParams p{Rational(1, 3), Rational(1, 5)};
  for (const auto& lam : all_up_to(6))
    for (const auto& mu : horizontal_strip_removals(lam)) CHECK(skew_one_var(lam, mu, 1, p) >= 0);
}

TEST_CASE("g_coefficients") {
  const QTParams p{half, half};
  auto g = g_coefficients(VariableSpec::geometric(1, half), p, 4);
  CHECK(g[0] == 1);
  CHECK(g[2] == Rational(8, 3));
  for (std::size_t n = 0; n <= 4; ++n) {
    Rational closed = 1;
    for (std::size_t i = 1; i <= n; ++i) closed /= 1 - pow(p.q, static_cast<long>(i));
    CHECK(g[n] == closed);
  }
  auto g0 = g_coefficients(VariableSpec::geometric(1, Rational(1, 3)), {0, Rational(1, 3)}, 6);
  for (const auto& c : g0) CHECK(c == 1);
  auto gf = g_coefficients(VariableSpec::finite({half, Rational(1, 7)}), {Rational(1, 3), Rational(1, 5)}, 3);
  CHECK(gf[0] == 1);
}

TEST_CASE("Pieri transitions") {
  const auto y = VariableSpec::geometric(1, half);
  CHECK(pieri_transition(Partition{2, 1}, Partition{2, 1}, y, {0, half}) == 1);

  Rational total = 0;
  for (const auto& big : horizontal_strip_extensions(Partition{2, 1}, 2)) total += pieri_transition(Partition{2, 1}, big, y, {0, half});
  CHECK(total == 1);

  try {
    pieri_transition(Partition{1}, Partition{2, 2}, y, {0, half});
    FAIL("expected NotAStrip");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotAStrip);
  }
  CHECK_THROWS_AS(pieri_transition(Partition{1}, Partition{2}, VariableSpec::geometric(1, Rational(1, 3)), {0, half}),
                  Error);
}

TEST_CASE("Pieri normalization over all strips") {
  for (const QTParams& p : {QTParams{0, half}, QTParams{half, half}, QTParams{Rational(1, 3), Rational(1, 5)}}) {
    const auto y = VariableSpec::geometric(1, p.t);
    PieriTable table(y, p);
    for (const auto& lam : all_up_to(6)) {
      for (int r = 0; r <= 3; ++r) {
        const auto& row = table.row(lam, r);
        Rational total = 0;
        for (std::size_t i = 0; i < row.targets.size(); ++i) {
          CHECK(row.probabilities[i] >= 0);
          CHECK(row.probabilities[i] == pieri_transition(lam, row.targets[i], y, p));
          total += row.probabilities[i];
        }
        CHECK(total == 1);
      }
    }
  }
}

TEST_CASE("Pieri normalization with a finite y list") {
  const QTParams p{Rational(1, 3), Rational(1, 5)};
  const auto y = VariableSpec::finite({1, half, Rational(1, 4)});
  PieriTable table(y, p);
  for (const auto& lam : all_up_to(4)) {
    if (lam.length() > 3) continue;
    for (int r = 0; r <= 3; ++r) {
      const auto& row = table.row(lam, r);
      Rational total = 0;
      for (const auto& pr : row.probabilities) total += pr;
      CHECK(total == 1);
    }
  }
}

TEST_CASE("interval normalizer is 1 / Σ g_k x^k") {
  const Rational x(1, 3);
  // q = 0, principal y: exact 1 - x.
  auto n0 = interval_normalizer(x, VariableSpec::geometric(1, half), {0, half}, default_tail_tolerance());
  CHECK(n0.value == 1 - x);
  CHECK(n0.is_exact());

  // Finite y, general (q, t): compare with the truncated generating series.
  const QTParams p{Rational(1, 3), Rational(1, 5)};
  const auto y = VariableSpec::finite({half, Rational(1, 4)});
  auto n1 = interval_normalizer(x, y, p, pow(Rational(1, 2), 50));
  auto g = g_coefficients(y, p, 60);
  Rational series = 0;
  for (std::size_t k = 0; k < g.size(); ++k) series += g[k] * pow(x, static_cast<long>(k));
  CHECK(std::abs(to_double(n1.value * series) - 1.0) < 1e-12);

  auto n2 = interval_normalizer(x, VariableSpec::finite({half, Rational(1, 4)}), {half, half}, default_tail_tolerance());
  CHECK(n2.value == (1 - x * half) * (1 - x / 4));
}

TEST_CASE("Measure Identity at desk scale") {
  const QTParams p{Rational(1, 3), Rational(1, 5)};
  const std::vector<Rational> xs{Rational(1, 3), Rational(1, 4)};
  const std::vector<Rational> ys{half, Rational(1, 5)};
  FiniteEvaluator ex(xs, p), ey(ys, p);
  const Rational tol = pow(Rational(1, 2), 60);
  ExactProb inv_pi{1, 0};
  for (const auto& x : xs) inv_pi = inv_pi * interval_normalizer(x, VariableSpec::finite(ys), p, tol);
  const double pi = 1.0 / to_double(inv_pi.value);

  Rational partial = 0;
  double prev_gap = 1e9;
  for (int k = 0; k <= 10; ++k) {
    for (const auto& lam : partitions_of(k, 2)) partial += ex.evaluate(lam) * ey.evaluate(lam) * b_weight(lam, p);
    const double gap = pi - to_double(partial);
    CHECK(gap > -1e-12);
    CHECK(gap <= prev_gap);
    prev_gap = gap;
  }
  CHECK(prev_gap < 1e-6);
}
