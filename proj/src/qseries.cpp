#include "macm/qseries.hpp"

#include <algorithm>
#include <utility>

#include "macm/error.hpp"

namespace macm {

Rational default_tail_tolerance() { return pow(Rational(1, 2), 40); }

ExactProb operator+(const ExactProb& a, const ExactProb& b) {
  return {a.value + b.value, a.tail_bound + b.tail_bound};
}

ExactProb operator*(const ExactProb& a, const ExactProb& b) {
  // |ab - a'b'| <= |a| e_b + |b| e_a + e_a e_b
  return {a.value * b.value, abs(a.value) * b.tail_bound + abs(b.value) * a.tail_bound + a.tail_bound * b.tail_bound};
}

ExactProb operator*(const Rational& k, const ExactProb& a) { return {k * a.value, abs(k) * a.tail_bound}; }

// ---------------------------------------------------------------------------
// USeries

USeries::USeries(std::size_t degree) : coeffs_(degree + 1, Rational(0)) {}

USeries::USeries(std::vector<Rational> coefficients, std::size_t degree) : coeffs_(std::move(coefficients)) {
  coeffs_.resize(degree + 1, Rational(0));
}

USeries USeries::one(std::size_t degree) {
  USeries s(degree);
  s.coeffs_[0] = 1;
  return s;
}

USeries& USeries::operator+=(const USeries& other) {
  const std::size_t d = std::min(degree(), other.degree());
  coeffs_.resize(d + 1);
  for (std::size_t i = 0; i <= d; ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

USeries& USeries::operator-=(const USeries& other) {
  const std::size_t d = std::min(degree(), other.degree());
  coeffs_.resize(d + 1);
  for (std::size_t i = 0; i <= d; ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

USeries& USeries::operator*=(const USeries& other) {
  const std::size_t d = std::min(degree(), other.degree());
  std::vector<Rational> out(d + 1, Rational(0));
  for (std::size_t i = 0; i <= d; ++i) {
    if (coeffs_[i] == 0) continue;
    for (std::size_t j = 0; i + j <= d; ++j) out[i + j] += coeffs_[i] * other.coeffs_[j];
  }
  coeffs_ = std::move(out);
  return *this;
}

USeries USeries::inverse() const {
  if (coeffs_[0] == 0) throw Error(ErrorCode::ZeroDenominator, "series with zero constant term has no inverse");
  const std::size_t d = degree();
  USeries out(d);
  const Rational inv0 = 1 / coeffs_[0];
  out.coeffs_[0] = inv0;
  for (std::size_t n = 1; n <= d; ++n) {
    Rational acc = 0;
    for (std::size_t k = 1; k <= n; ++k) acc += coeffs_[k] * out.coeffs_[n - k];
    out.coeffs_[n] = -acc * inv0;
  }
  return out;
}

USeries USeries::exp() const {
  if (coeffs_[0] != 0) throw Error(ErrorCode::DomainError, "exp needs a zero constant term");
  const std::size_t d = degree();
  USeries out(d);
  out.coeffs_[0] = 1;
  for (std::size_t n = 1; n <= d; ++n) {
    Rational acc = 0;
    for (std::size_t k = 1; k <= n; ++k) acc += Rational(static_cast<long>(k)) * coeffs_[k] * out.coeffs_[n - k];
    out.coeffs_[n] = acc / static_cast<long>(n);
  }
  return out;
}

USeries USeries::log() const {
  if (coeffs_[0] != 1) throw Error(ErrorCode::DomainError, "log needs constant term 1");
  const std::size_t d = degree();
  USeries out(d);
  for (std::size_t n = 1; n <= d; ++n) {
    Rational acc = Rational(static_cast<long>(n)) * coeffs_[n];
    for (std::size_t k = 1; k < n; ++k) acc -= Rational(static_cast<long>(k)) * out.coeffs_[k] * coeffs_[n - k];
    out.coeffs_[n] = acc / static_cast<long>(n);
  }
  return out;
}

USeries USeries::pow(long exponent) const {
  if (exponent < 0) return inverse().pow(-exponent);
  USeries out = one(degree());
  USeries base = *this;
  while (exponent > 0) {
    if (exponent & 1) out *= base;
    exponent >>= 1;
    if (exponent) base *= base;
  }
  return out;
}

USeries USeries::substitute_power(std::size_t m) const {
  if (m == 0) throw Error(ErrorCode::DomainError, "substitution power must be positive");
  USeries out(degree());
  for (std::size_t i = 0; i * m <= degree(); ++i) out.coeffs_[i * m] = coeffs_[i];
  return out;
}

Rational USeries::evaluate(const Rational& u) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * u + *it;
  return acc;
}

// ---------------------------------------------------------------------------
// VariableSpec

VariableSpec VariableSpec::finite(std::vector<Rational> values) {
  VariableSpec s;
  s.data_ = FiniteList{std::move(values)};
  return s;
}

VariableSpec VariableSpec::geometric(Rational first, Rational ratio) {
  if (abs(ratio) >= 1) throw Error(ErrorCode::DivergentSeries, "geometric specialization needs |ratio| < 1");
  VariableSpec s;
  s.data_ = Geometric{std::move(first), std::move(ratio)};
  return s;
}

Rational VariableSpec::value(std::size_t i) const {
  if (i == 0) throw Error(ErrorCode::DomainError, "variable index is 1-based");
  if (const auto* f = as_finite()) return i <= f->values.size() ? f->values[i - 1] : Rational(0);
  const auto& g = std::get<Geometric>(data_);
  return g.first * macm::pow(g.ratio, static_cast<long>(i - 1));
}

std::size_t VariableSpec::finite_count() const {
  if (const auto* f = as_finite()) return f->values.size();
  throw Error(ErrorCode::DomainError, "geometric specialization has infinitely many entries");
}

bool VariableSpec::all_zero() const {
  if (const auto* f = as_finite())
    return std::all_of(f->values.begin(), f->values.end(), [](const Rational& v) { return v == 0; });
  return std::get<Geometric>(data_).first == 0;
}

bool VariableSpec::nonnegative() const {
  if (const auto* f = as_finite())
    return std::all_of(f->values.begin(), f->values.end(), [](const Rational& v) { return v >= 0; });
  const auto& g = std::get<Geometric>(data_);
  return g.first == 0 || (g.first > 0 && g.ratio >= 0);
}

VariableSpec::PowerSumBound VariableSpec::power_sum_bound() const {
  if (const auto* f = as_finite()) {
    Rational rate = 0;
    for (const auto& v : f->values) rate = std::max(rate, abs(v));
    return {Rational(static_cast<long>(f->values.size())), rate};
  }
  const auto& g = std::get<Geometric>(data_);
  // |first^n / (1 - ratio^n)| <= |first|^n / (1 - |ratio|)
  return {1 / (1 - abs(g.ratio)), abs(g.first)};
}

std::string VariableSpec::to_string() const {
  if (const auto* f = as_finite()) {
    std::string out = "[";
    for (std::size_t i = 0; i < f->values.size(); ++i) out += (i ? "," : "") + macm::to_string(f->values[i]);
    return out + "]";
  }
  const auto& g = std::get<Geometric>(data_);
  return "geometric(" + macm::to_string(g.first) + "," + macm::to_string(g.ratio) + ")";
}

// ---------------------------------------------------------------------------

namespace {

// Rational upper bound for e^r - 1, r >= 0.
Rational expm1_upper(const Rational& r) {
  if (r < 1) return r / (1 - r);
  Integer k = ceil(r);
  return Rational(macm::pow(Integer(3), k.get_ui())) - 1;
}

}  // namespace

ExactProb pochhammer_trunc(const Rational& x, const Rational& q, std::size_t terms) {
  if (abs(q) >= 1) throw Error(ErrorCode::DomainError, "pochhammer_trunc needs |q| < 1");
  if (abs(x) >= 1) throw Error(ErrorCode::DomainError, "pochhammer_trunc needs |x| < 1");
  Rational value = 1;
  Rational qpow = 1;
  for (std::size_t i = 0; i < terms; ++i) {
    value *= 1 - x * qpow;
    qpow *= q;
  }
  if (x == 0 || (q == 0 && terms >= 1)) return {value, 0};
  // Omitted factors (1 + a_i) with Σ|a_i| <= r, so |Π - 1| <= e^r - 1.
  const Rational r = abs(x) * abs(qpow) / (1 - abs(q));
  return {value, abs(value) * expm1_upper(r)};
}

ExactProb pochhammer_infinite(const Rational& x, const Rational& q, const Rational& tol) {
  std::size_t terms = 1;
  for (;;) {
    ExactProb p = pochhammer_trunc(x, q, terms);
    if (p.tail_bound <= tol) return p;
    terms *= 2;
  }
}

USeries euler_series(std::size_t u_degree, const Rational& q, bool inverse) {
  if (abs(q) <= 1) throw Error(ErrorCode::DomainError, "euler_series needs |q| > 1");
  USeries out(u_degree);
  Rational denom = 1;  // (q^n - 1)...(q - 1)
  for (std::size_t n = 0; n <= u_degree; ++n) {
    if (n > 0) denom *= macm::pow(q, static_cast<long>(n)) - 1;
    if (inverse) {
      out[n] = macm::pow(q, static_cast<long>(n * (n - (n ? 1 : 0)) / 2)) / denom;
    } else {
      out[n] = (n % 2 ? Rational(-1) : Rational(1)) / denom;
    }
  }
  return out;
}

Rational power_sum(const VariableSpec& spec, std::size_t n) {
  if (n == 0) throw Error(ErrorCode::DomainError, "power sums start at n = 1");
  const long e = static_cast<long>(n);
  if (const auto* f = spec.as_finite()) {
    Rational acc = 0;
    for (const auto& v : f->values) acc += macm::pow(v, e);
    return acc;
  }
  const auto* g = spec.as_geometric();
  const Rational rn = macm::pow(g->ratio, e);
  if (abs(rn) >= 1) throw Error(ErrorCode::DivergentSeries, "geometric power sum diverges");
  return macm::pow(g->first, e) / (1 - rn);
}

ExactProb log_pi_sum(const VariableSpec& x, const VariableSpec& y, const Rational& q, const Rational& t,
                     const Rational& tol) {
  if (q < 0 || q >= 1 || t < 0 || t >= 1)
    throw Error(ErrorCode::DivergentSeries, "log_pi_sum needs 0 <= q, t < 1");
  if (!x.nonnegative() || !y.nonnegative())
    throw Error(ErrorCode::DivergentSeries, "log_pi_sum needs non-negative specializations");
  if (x.all_zero() || y.all_zero()) return {0, 0};

  const auto bx = x.power_sum_bound();
  const auto by = y.power_sum_bound();
  const Rational rate = bx.rate * by.rate;
  if (rate >= 1) throw Error(ErrorCode::DivergentSeries, "Σ x_i y_j/(1 - x_i y_j) does not converge");
  const Rational scale = bx.scale * by.scale / (1 - q);

  Rational sum = 0;
  Rational rate_pow = rate;  // rate^{n}
  for (std::size_t n = 1;; ++n) {
    const long e = static_cast<long>(n);
    sum += (1 - macm::pow(t, e)) / (1 - macm::pow(q, e)) * power_sum(x, n) * power_sum(y, n) / e;
    rate_pow *= rate;  // rate^{n+1}
    // Terms n' > n are dominated by scale * rate^{n'}.
    const Rational tail = scale * rate_pow / (1 - rate);
    if (tail <= tol) return {sum, tail};
  }
}

Rational coefficient_partial_sum(const USeries& f, std::size_t n) {
  if (n > f.degree()) throw Error(ErrorCode::TruncationTooShort, "series truncated below requested degree");
  Rational acc = 0;
  for (std::size_t i = 0; i <= n; ++i) acc += f[i];
  return acc;
}

}  // namespace macm
