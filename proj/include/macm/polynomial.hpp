#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "macm/rational.hpp"

namespace macm {

// Dense univariate polynomial with integer coefficients; coefficient i is
// the coefficient of q^i. Trailing zeros are always trimmed, so the zero
// polynomial has no coefficients.
class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(std::vector<Integer> coefficients);
  static IntPoly constant(const Integer& c);
  static IntPoly monomial(std::size_t degree, const Integer& c = 1);
  /// [m]_q = 1 + q + ... + q^{m-1}.
  static IntPoly q_integer(std::size_t m);
  /// [m]_q! = [1][2]...[m].
  static IntPoly q_factorial(std::size_t m);

  bool is_zero() const { return coeffs_.empty(); }
  /// Degree of the zero polynomial is reported as -1.
  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
  const std::vector<Integer>& coefficients() const { return coeffs_; }
  Integer coefficient(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Integer(0); }

  Rational evaluate(const Rational& q) const;
  /// q^{degree} p(1/q) for a given nominal degree; used for palindromicity.
  IntPoly reversed(std::size_t nominal_degree) const;

  IntPoly& operator+=(const IntPoly& other);
  IntPoly& operator-=(const IntPoly& other);
  IntPoly& operator*=(const IntPoly& other);

  friend IntPoly operator+(IntPoly a, const IntPoly& b) { return a += b; }
  friend IntPoly operator-(IntPoly a, const IntPoly& b) { return a -= b; }
  friend IntPoly operator*(IntPoly a, const IntPoly& b) { return a *= b; }
  friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.coeffs_ == b.coeffs_; }

  /// Exact division; throws DomainError if the divisor does not divide.
  IntPoly exact_divide(const IntPoly& divisor) const;

  std::string to_string() const;

 private:
  void trim();
  std::vector<Integer> coeffs_;
};

}  // namespace macm
