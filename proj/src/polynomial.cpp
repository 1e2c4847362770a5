#include "macm/polynomial.hpp"

#include <algorithm>
#include <utility>

#include "macm/error.hpp"

namespace macm {

IntPoly::IntPoly(std::vector<Integer> coefficients) : coeffs_(std::move(coefficients)) { trim(); }

IntPoly IntPoly::constant(const Integer& c) { return IntPoly(std::vector<Integer>{c}); }

IntPoly IntPoly::monomial(std::size_t degree, const Integer& c) {
  std::vector<Integer> v(degree + 1, Integer(0));
  v[degree] = c;
  return IntPoly(std::move(v));
}

IntPoly IntPoly::q_integer(std::size_t m) { return IntPoly(std::vector<Integer>(m, Integer(1))); }

IntPoly IntPoly::q_factorial(std::size_t m) {
  IntPoly out = constant(1);
  for (std::size_t i = 1; i <= m; ++i) out *= q_integer(i);
  return out;
}

void IntPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational IntPoly::evaluate(const Rational& q) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * q + Rational(*it);
  return acc;
}

IntPoly IntPoly::reversed(std::size_t nominal_degree) const {
  if (degree() > static_cast<long>(nominal_degree))
    throw Error(ErrorCode::DomainError, "nominal degree below actual degree");
  std::vector<Integer> v(nominal_degree + 1, Integer(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) v[nominal_degree - i] = coeffs_[i];
  return IntPoly(std::move(v));
}

IntPoly& IntPoly::operator+=(const IntPoly& other) {
  if (coeffs_.size() < other.coeffs_.size()) coeffs_.resize(other.coeffs_.size(), Integer(0));
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  trim();
  return *this;
}

IntPoly& IntPoly::operator-=(const IntPoly& other) {
  if (coeffs_.size() < other.coeffs_.size()) coeffs_.resize(other.coeffs_.size(), Integer(0));
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  trim();
  return *this;
}

IntPoly& IntPoly::operator*=(const IntPoly& other) {
  if (is_zero() || other.is_zero()) {
    coeffs_.clear();
    return *this;
  }
  std::vector<Integer> out(coeffs_.size() + other.coeffs_.size() - 1, Integer(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < other.coeffs_.size(); ++j) out[i + j] += coeffs_[i] * other.coeffs_[j];
  }
  coeffs_ = std::move(out);
  trim();
  return *this;
}

IntPoly IntPoly::exact_divide(const IntPoly& divisor) const {
  if (divisor.is_zero()) throw Error(ErrorCode::ZeroDenominator, "polynomial division by zero");
  if (is_zero()) return {};
  if (degree() < divisor.degree()) throw Error(ErrorCode::DomainError, "polynomial division is not exact");
  std::vector<Integer> rem = coeffs_;
  const auto dd = static_cast<std::size_t>(divisor.degree());
  const Integer& lead = divisor.coeffs_.back();
  std::vector<Integer> quot(rem.size() - dd, Integer(0));
  for (std::size_t k = quot.size(); k-- > 0;) {
    const Integer& top = rem[k + dd];
    if (top == 0) continue;
    if (top % lead != 0) throw Error(ErrorCode::DomainError, "polynomial division is not exact");
    Integer c = top / lead;
    quot[k] = c;
    for (std::size_t j = 0; j <= dd; ++j) rem[k + j] -= c * divisor.coeffs_[j];
  }
  if (std::any_of(rem.begin(), rem.end(), [](const Integer& c) { return c != 0; }))
    throw Error(ErrorCode::DomainError, "polynomial division is not exact");
  return IntPoly(std::move(quot));
}

std::string IntPoly::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    const Integer& c = coeffs_[i];
    if (c == 0) continue;
    Integer mag = c < 0 ? Integer(-c) : c;
    if (!out.empty()) out += c < 0 ? " - " : " + ";
    else if (c < 0) out += "-";
    if (mag != 1 || i == 0) out += mag.get_str();
    if (i >= 1) out += "q";
    if (i >= 2) out += "^" + std::to_string(i);
  }
  return out;
}

}  // namespace macm
