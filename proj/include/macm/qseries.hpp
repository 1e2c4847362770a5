#pragma once

#include <cstddef>
#include <variant>
#include <vector>

#include "macm/rational.hpp"

namespace macm {

/// Default certified tail tolerance, 2^-40.
Rational default_tail_tolerance();

/// A value together with a certified bound on its absolute error. A zero
/// tail bound means the value is exact.
struct ExactProb {
  Rational value = 0;
  Rational tail_bound = 0;

  bool is_exact() const { return tail_bound == 0; }
  Rational lower() const { return value - tail_bound; }
  Rational upper() const { return value + tail_bound; }
};

ExactProb operator+(const ExactProb& a, const ExactProb& b);
ExactProb operator*(const ExactProb& a, const ExactProb& b);
ExactProb operator*(const Rational& k, const ExactProb& a);

/// Formal power series in u, exact through u^D.
class USeries {
 public:
  explicit USeries(std::size_t degree = 0);
  USeries(std::vector<Rational> coefficients, std::size_t degree);
  static USeries one(std::size_t degree);

  std::size_t degree() const { return coeffs_.size() - 1; }
  const Rational& operator[](std::size_t i) const { return coeffs_.at(i); }
  Rational& operator[](std::size_t i) { return coeffs_.at(i); }
  const std::vector<Rational>& coefficients() const { return coeffs_; }

  USeries& operator+=(const USeries& other);
  USeries& operator-=(const USeries& other);
  USeries& operator*=(const USeries& other);
  friend USeries operator+(USeries a, const USeries& b) { return a += b; }
  friend USeries operator-(USeries a, const USeries& b) { return a -= b; }
  friend USeries operator*(USeries a, const USeries& b) { return a *= b; }
  friend bool operator==(const USeries& a, const USeries& b) { return a.coeffs_ == b.coeffs_; }

  /// Multiplicative inverse; requires a nonzero constant term.
  USeries inverse() const;
  /// exp(f); requires a zero constant term.
  USeries exp() const;
  /// log(f); requires constant term 1.
  USeries log() const;
  USeries pow(long exponent) const;
  /// f(u^m), truncated to the same degree.
  USeries substitute_power(std::size_t m) const;
  /// Value of the truncated polynomial at u.
  Rational evaluate(const Rational& u) const;

 private:
  std::vector<Rational> coeffs_;
};

/// A specialization sequence x_1, x_2, ...: either an explicit finite list
/// (followed by zeros) or x_i = first * ratio^{i-1} with |ratio| < 1.
class VariableSpec {
 public:
  struct FiniteList {
    std::vector<Rational> values;
  };
  struct Geometric {
    Rational first;
    Rational ratio;
  };

  VariableSpec() : data_(FiniteList{}) {}
  static VariableSpec finite(std::vector<Rational> values);
  /// Throws DivergentSeries when |ratio| >= 1.
  static VariableSpec geometric(Rational first, Rational ratio);

  bool is_finite() const { return std::holds_alternative<FiniteList>(data_); }
  const FiniteList* as_finite() const { return std::get_if<FiniteList>(&data_); }
  const Geometric* as_geometric() const { return std::get_if<Geometric>(&data_); }

  /// x_i (1-based); zero past the end of a finite list.
  Rational value(std::size_t i) const;
  /// Number of potentially nonzero entries; only meaningful for finite lists.
  std::size_t finite_count() const;
  bool all_zero() const;
  bool nonnegative() const;

  /// Constants (scale, rate) with |p_n| <= scale * rate^n for every n >= 1.
  struct PowerSumBound {
    Rational scale;
    Rational rate;
  };
  PowerSumBound power_sum_bound() const;

  std::string to_string() const;

 private:
  std::variant<FiniteList, Geometric> data_;
};

/// Π_{i=1}^{terms} (1 - x q^{i-1}) with a certified bound on the distance to (x;q)_∞.
ExactProb pochhammer_trunc(const Rational& x, const Rational& q, std::size_t terms);

/// Truncates (x;q)_∞ at the first factor count whose certified tail is <= tol.
ExactProb pochhammer_infinite(const Rational& x, const Rational& q, const Rational& tol);

/// Coefficients through u^D of Π_{r>=1} (1 - u/q^r)^{-1} (inverse) or Π_{r>=1} (1 - u/q^r), |q| > 1.
USeries euler_series(std::size_t u_degree, const Rational& q, bool inverse);

/// p_n(x) = Σ_i x_i^n, exact.
Rational power_sum(const VariableSpec& spec, std::size_t n);

/// Σ_{n>=1} (1/n) (1-t^n)/(1-q^n) p_n(x) p_n(y) with certified tail <= tol.
ExactProb log_pi_sum(const VariableSpec& x, const VariableSpec& y, const Rational& q, const Rational& t,
                     const Rational& tol);

/// [u^n] f(u)/(1-u), the prefix sum a_0 + ... + a_n.
Rational coefficient_partial_sum(const USeries& f, std::size_t n);

}  // namespace macm
