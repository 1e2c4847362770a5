#include <cmath>
#include <random>

#include "doctest.h"
#include "macm/error.hpp"
#include "macm/qseries.hpp"

using namespace macm;

TEST_CASE("rational helpers") {
  CHECK(parse_rational("3/6") == Rational(1, 2));
  CHECK(parse_rational("0.25") == Rational(1, 4));
  CHECK(parse_rational("-2") == Rational(-2));
  CHECK(parse_rational("010/3") == Rational(10, 3));
  CHECK(to_string(Rational(3, 4)) == "3/4");
  CHECK(pow(Rational(2, 3), -2) == Rational(9, 4));
  CHECK_THROWS_AS(pow(Rational(0), -1), Error);
  CHECK_THROWS_AS(parse_rational("x"), Error);
  CHECK(ceil(Rational(7, 2)) == 4);
  CHECK(ceil(Rational(-7, 2)) == -3);
}

TEST_CASE("pochhammer_trunc") {
  auto p = pochhammer_trunc(0, Rational(1, 2), 5);
  CHECK(p.value == 1);
  CHECK(p.tail_bound == 0);

  p = pochhammer_trunc(Rational(1, 2), Rational(1, 2), 1);
  CHECK(p.value == Rational(1, 2));
  CHECK(p.tail_bound > 0);

  Rational prev = pochhammer_trunc(Rational(1, 2), Rational(1, 2), 1).tail_bound;
  for (std::size_t n = 2; n <= 40; ++n) {
    Rational cur = pochhammer_trunc(Rational(1, 2), Rational(1, 2), n).tail_bound;
    CHECK(cur < prev);
    prev = cur;
  }

  // The certified interval must contain a long truncation.
  auto shortp = pochhammer_trunc(Rational(1, 3), Rational(1, 2), 6);
  auto longp = pochhammer_trunc(Rational(1, 3), Rational(1, 2), 200);
  CHECK(abs(longp.value - shortp.value) <= shortp.tail_bound);

  try {
    pochhammer_trunc(Rational(1, 2), 2, 3);
    FAIL("expected DomainError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DomainError);
  }
}

TEST_CASE("euler_series coefficients") {
  auto direct = euler_series(6, 2, false);
  auto inv = euler_series(6, 2, true);
  CHECK(direct[0] == 1);
  CHECK(inv[0] == 1);
  CHECK(direct[1] == -1);
  CHECK(inv[2] == Rational(2, 3));
  CHECK_THROWS_AS(euler_series(3, Rational(1, 2), true), Error);
}

TEST_CASE("euler_series inverse pair multiplies to one") {
  for (int q : {2, 3}) {
    for (std::size_t d = 0; d <= 12; ++d) {
      CHECK(euler_series(d, q, true) * euler_series(d, q, false) == USeries::one(d));
    }
  }
}

TEST_CASE("euler_series matches direct product expansion") {
  // Oracle: multiply out Π_{r=1}^{R} (1 - u/q^r); factors with r > R only touch
  // coefficients through q^{-R}, so compare against a numeric bound.
  const std::size_t D = 5;
  for (int q : {2, 3}) {
    USeries prod = USeries::one(D);
    for (int r = 1; r <= 60; ++r) {
      USeries f = USeries::one(D);
      f[1] = -pow(Rational(q), -r);
      prod *= f;
    }
    auto closed = euler_series(D, q, false);
    for (std::size_t n = 0; n <= D; ++n) CHECK(std::abs(to_double(prod[n] - closed[n])) < 1e-15);
  }
}

TEST_CASE("power_sum") {
  CHECK(power_sum(VariableSpec::finite({Rational(1, 2)}), 2) == Rational(1, 4));
  CHECK(power_sum(VariableSpec::geometric(1, Rational(1, 2)), 1) == 2);
  CHECK(power_sum(VariableSpec::geometric(Rational(1, 4), Rational(1, 2)), 1) == Rational(1, 2));
  CHECK_THROWS_AS(VariableSpec::geometric(1, 1), Error);
}

TEST_CASE("log_pi_sum") {
  auto zero = log_pi_sum(VariableSpec::finite({0, 0}), VariableSpec::geometric(1, Rational(1, 2)), 0,
                         Rational(1, 2), default_tail_tolerance());
  CHECK(zero.value == 0);
  CHECK(zero.tail_bound == 0);

  auto pos = log_pi_sum(VariableSpec::finite({Rational(1, 3), Rational(1, 5)}), VariableSpec::finite({1, Rational(1, 2)}),
                        Rational(1, 3), Rational(1, 5), default_tail_tolerance());
  CHECK(pos.value >= 0);
  CHECK(pos.tail_bound <= default_tail_tolerance());

  // Hall-Littlewood GL spec at u = 1/2, q = 2: log Π = -Σ_r log(1 - u/2^r).
  const Rational u(1, 2);
  const Rational tol = pow(Rational(1, 2), 30);
  auto lp = log_pi_sum(VariableSpec::geometric(u / 2, Rational(1, 2)), VariableSpec::geometric(1, Rational(1, 2)), 0,
                       Rational(1, 2), tol);
  const double euler_value = to_double(euler_series(60, 2, false).evaluate(u));
  const double target = -std::log(euler_value);
  CHECK(std::abs(to_double(lp.value) - target) <= to_double(lp.tail_bound) + 1e-12);

  CHECK_THROWS_AS(log_pi_sum(VariableSpec::finite({2}), VariableSpec::finite({1}), 0, Rational(1, 2), tol), Error);
}

TEST_CASE("coefficient_partial_sum") {
  CHECK(coefficient_partial_sum(USeries::one(5), 5) == 1);
  CHECK(coefficient_partial_sum(USeries({1, -1}, 1), 1) == 0);
  CHECK(coefficient_partial_sum(euler_series(4, 2, false), 1) == 0);
  try {
    coefficient_partial_sum(USeries::one(2), 3);
    FAIL("expected TruncationTooShort");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TruncationTooShort);
  }
}

TEST_CASE("series exp and log invert each other") {
  USeries f(6);
  f[1] = Rational(1, 3);
  f[2] = Rational(-2, 7);
  f[5] = 4;
  CHECK(f.exp().log() == f);
  USeries g = USeries::one(6) + f;
  CHECK(g.log().exp() == g);
  CHECK(g * g.inverse() == USeries::one(6));
  CHECK(g.pow(3) == g * g * g);
  CHECK(g.pow(-2) * g.pow(2) == USeries::one(6));
}

TEST_CASE("exp of the log-Π series reproduces the finite product expansion") {
  // For finite y and a single marked x, exp(Σ (1/n)(1-t^n)/(1-q^n) p_n(y) x^n) equals
  // Π_j (t x y_j; q)_∞ / (x y_j; q)_∞ expanded as a power series in x.
  const Rational q(1, 3), t(1, 5);
  const std::vector<Rational> ys{1, Rational(1, 2)};
  const std::size_t D = 6;
  USeries logs(D);
  for (std::size_t n = 1; n <= D; ++n) {
    const long e = static_cast<long>(n);
    logs[n] = (1 - pow(t, e)) / (1 - pow(q, e)) * power_sum(VariableSpec::finite(ys), n) / e;
  }
  const USeries via_exp = logs.exp();

  // Direct product: each (a x; q)_∞ = Σ_k (-a)^k q^{C(k,2)} / ((1-q)...(1-q^k)) x^k (finite in x-degree).
  auto qpoch_series = [&](const Rational& a, bool invert) {
    USeries s(D);
    Rational denom = 1;
    for (std::size_t k = 0; k <= D; ++k) {
      if (k) denom *= 1 - pow(q, static_cast<long>(k));
      if (invert) s[k] = pow(a, static_cast<long>(k)) / denom;
      else s[k] = pow(-a, static_cast<long>(k)) * pow(q, static_cast<long>(k * (k ? k - 1 : 0) / 2)) / denom;
    }
    return s;
  };
  USeries direct = USeries::one(D);
  for (const auto& yj : ys) direct *= qpoch_series(t * yj, false) * qpoch_series(yj, true);
  CHECK(via_exp == direct);
}

TEST_CASE("ExactProb combinators propagate tails sub-additively") {
  std::mt19937_64 gen(7);
  std::uniform_int_distribution<long> num(-50, 50), den(1, 40), tail(0, 10);
  for (int trial = 0; trial < 300; ++trial) {
    ExactProb a{Rational(num(gen), den(gen)), Rational(tail(gen), 100 * den(gen))};
    ExactProb b{Rational(num(gen), den(gen)), Rational(tail(gen), 100 * den(gen))};
    a.value.canonicalize();
    b.value.canonicalize();
    a.tail_bound.canonicalize();
    b.tail_bound.canonicalize();
    auto s = a + b;
    CHECK(s.tail_bound <= a.tail_bound + b.tail_bound);
    auto m = a * b;
    // Every product of values inside the two intervals lies inside the product interval.
    for (const auto& x : {a.lower(), a.value, a.upper()})
      for (const auto& y : {b.lower(), b.value, b.upper()}) CHECK(abs(x * y - m.value) <= m.tail_bound);
  }
}
