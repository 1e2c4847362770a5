#include "macm/gl_verify.hpp"

#include <functional>
#include <stdexcept>

#include "macm/error.hpp"
#include "macm/kernel.hpp"

namespace macm {

namespace {

int mobius(int n) {
  int out = 1;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    out = -out;
  }
  if (n > 1) out = -out;
  return out;
}

Integer ipow(long base, long e) { return pow(Integer(base), static_cast<unsigned long>(e)); }

// Slots available for classes of GL(n, qf): degree d gets I(d) labels, minus z at d = 1.
std::vector<std::pair<int, int>> slots_up_to(int n, long qf) {
  std::vector<std::pair<int, int>> out;
  for (int d = 1; d <= n; ++d) {
    const long count = irreducible_count(d, qf) - (d == 1 ? 1 : 0);
    for (long s = 1; s <= count; ++s) out.emplace_back(d, static_cast<int>(s));
  }
  return out;
}

void check_field(long qf) {
  if (qf < 2) throw Error(ErrorCode::DomainError, "field size must be at least 2");
}

}  // namespace

Integer gl_order(int n, long qf) {
  check_field(qf);
  if (n < 0) throw Error(ErrorCode::DomainError, "n must be non-negative");
  Integer out = ipow(qf, static_cast<long>(n) * (n - 1) / 2);
  for (int i = 1; i <= n; ++i) out *= ipow(qf, i) - 1;
  return out;
}

long irreducible_count(int d, long qf) {
  check_field(qf);
  if (d < 1) throw Error(ErrorCode::DomainError, "degree must be positive");
  Integer sum = 0;
  for (int e = 1; e <= d; ++e)
    if (d % e == 0) sum += mobius(e) * ipow(qf, d / e);
  return Integer(sum / d).get_si();
}

long d_stat(const Partition& lambda, int i) {
  if (i < 1) throw Error(ErrorCode::DomainError, "d_i needs i >= 1");
  long out = 0;
  for (int h = 1; h < i; ++h) out += static_cast<long>(h) * lambda.multiplicity(h);
  for (int k = i; k <= lambda.part(1); ++k) out += static_cast<long>(i) * lambda.multiplicity(k);
  return out;
}

long d_stat_by_columns(const Partition& lambda, int i) {
  if (i < 1) throw Error(ErrorCode::DomainError, "d_i needs i >= 1");
  long out = 0;
  for (int j = 1; j <= i; ++j) out += lambda.column_length(j);
  return out;
}

long ClassDatum::dimension() const {
  long out = 0;
  for (const auto& s : assignment) out += static_cast<long>(s.degree) * s.shape.size();
  return out;
}

Partition ClassDatum::shape_of(int degree, int slot) const {
  for (const auto& s : assignment)
    if (s.degree == degree && s.slot == slot) return s.shape;
  return {};
}

std::string ClassDatum::to_string() const {
  std::string out;
  for (const auto& s : assignment) {
    if (!out.empty()) out += " ";
    out += "d" + std::to_string(s.degree) + "." + std::to_string(s.slot) + ":" + s.shape.to_string();
  }
  return out.empty() ? "-" : out;
}

Integer kung_factor(const Partition& lambda, int degree, long qf) {
  Integer out = 1;
  const long m = degree;
  for (int i = 1; i <= lambda.part(1); ++i) {
    const long d = d_stat(lambda, i);
    for (int k = 1; k <= lambda.multiplicity(i); ++k) out *= ipow(qf, m * d) - ipow(qf, m * (d - k));
  }
  return out;
}

Integer kung_class_size(int n, long qf, const ClassDatum& datum) {
  if (datum.dimension() != n) throw Error(ErrorCode::InvalidDatum, "Σ deg·|λ| must equal n");
  std::vector<std::pair<int, int>> seen;
  for (const auto& s : datum.assignment) {
    if (s.degree < 1 || s.slot < 1) throw Error(ErrorCode::InvalidDatum, "slot labels start at 1");
    const long available = irreducible_count(s.degree, qf) - (s.degree == 1 ? 1 : 0);
    if (s.slot > available)
      throw Error(ErrorCode::InvalidDatum, "only " + std::to_string(available) + " slots of degree " +
                                               std::to_string(s.degree));
    for (const auto& p : seen)
      if (p == std::make_pair(s.degree, s.slot)) throw Error(ErrorCode::InvalidDatum, "slot listed twice");
    seen.emplace_back(s.degree, s.slot);
  }
  Integer den = 1;
  for (const auto& s : datum.assignment) den *= kung_factor(s.shape, s.degree, qf);
  const Integer order = gl_order(n, qf);
  if (order % den != 0) throw std::logic_error("Kung denominator does not divide |GL|");
  return order / den;
}

std::vector<ClassEntry> enumerate_classes(int n, long qf, int cap) {
  if (n < 0) throw Error(ErrorCode::DomainError, "n must be non-negative");
  if (n > cap || qf > 3) throw Error(ErrorCode::CapExceeded, "enumeration limited to n <= " + std::to_string(cap) + ", qf <= 3");
  check_field(qf);
  const auto slots = slots_up_to(n, qf);
  std::vector<ClassEntry> out;
  ClassDatum current;
  std::function<void(std::size_t, int)> rec = [&](std::size_t idx, int remaining) {
    if (remaining == 0) {
      out.push_back({current, kung_class_size(n, qf, current)});
      return;
    }
    if (idx == slots.size()) return;
    rec(idx + 1, remaining);
    const auto [deg, label] = slots[idx];
    for (int size = 1; deg * size <= remaining; ++size)
      for (const auto& lam : partitions_of(size)) {
        current.assignment.push_back({deg, label, lam});
        rec(idx + 1, remaining - deg * size);
        current.assignment.pop_back();
      }
  };
  rec(0, n);
  Integer total = 0;
  for (const auto& e : out) total += e.size;
  if (total != gl_order(n, qf)) throw std::logic_error("class sizes do not sum to |GL(n, q)|");
  return out;
}

Rational class_shape_weight(const Partition& lambda, const Rational& big_q) {
  Rational out = 1;
  for (int j = 1; j <= lambda.part(1); ++j) {
    const long c = lambda.column_length(j);
    out /= pow(big_q, c * c);
  }
  for (int i = 1; i <= lambda.part(1); ++i)
    for (int k = 1; k <= lambda.multiplicity(i); ++k) out /= 1 - pow(big_q, -k);
  return out;
}

bool MarginalReport::all_match() const {
  for (bool b : matches)
    if (!b) return false;
  return true;
}

MarginalReport marginal_vs_measure(const Partition& lambda, int degree, long qf, int n_max, int cap) {
  if (degree < 1 || n_max < 0) throw Error(ErrorCode::DomainError, "need degree >= 1 and n_max >= 0");
  if (static_cast<long>(degree) * lambda.size() > n_max)
    throw Error(ErrorCode::DomainError, "deg·|λ| exceeds n_max");
  if (irreducible_count(degree, qf) - (degree == 1 ? 1 : 0) < 1)
    throw Error(ErrorCode::DomainError, "no slot of that degree");
  MarginalReport r;
  r.shape = lambda;
  r.degree = degree;
  r.qf = qf;
  r.n_max = n_max;
  const auto deg = static_cast<std::size_t>(n_max);

  for (int n = 0; n <= n_max; ++n) {
    Integer hits = 0;
    for (const auto& e : enumerate_classes(n, qf, cap))
      if (e.datum.shape_of(degree, 1) == lambda) hits += e.size;
    r.group_probability.push_back(Rational(hits) / Rational(gl_order(n, qf)));
    r.group_probability.back().canonicalize();
  }
  r.group_side = USeries(deg);
  for (int n = 0; n <= n_max; ++n)
    r.group_side[static_cast<std::size_t>(n)] =
        r.group_probability[static_cast<std::size_t>(n)] - (n > 0 ? r.group_probability[static_cast<std::size_t>(n - 1)] : Rational(0));

  const Rational big_q = pow(Rational(qf), degree);
  const USeries euler = euler_series(deg, big_q, false).substitute_power(static_cast<std::size_t>(degree));
  const Rational c = class_shape_weight(lambda, big_q);
  const std::size_t shift = static_cast<std::size_t>(degree) * static_cast<std::size_t>(lambda.size());
  r.measure_side = USeries(deg);
  for (std::size_t k = shift; k <= deg; ++k) r.measure_side[k] = euler[k - shift] * c;

  for (std::size_t k = 0; k <= deg; ++k) r.matches.push_back(r.group_side[k] == r.measure_side[k]);
  r.measure_prefix = coefficient_partial_sum(r.measure_side, deg);
  const Rational inv = 1 / big_q;
  r.limit = c * pochhammer_infinite(inv, inv, default_tail_tolerance());
  return r;
}

USeries class_normalization_series(long qf, std::size_t max_degree) {
  USeries out = USeries::one(max_degree);
  for (std::size_t d = 1; d <= max_degree; ++d) {
    const long count = irreducible_count(static_cast<int>(d), qf) - (d == 1 ? 1 : 0);
    const USeries factor = euler_series(max_degree, pow(Rational(qf), static_cast<long>(d)), false).substitute_power(d);
    out *= factor.pow(count);
  }
  return out;
}

KungChain kung_chain(const Partition& lambda, int degree, long qf) {
  const Rational big_q = pow(Rational(qf), degree);
  KungChain out;
  out.product = Rational(kung_factor(lambda, degree, qf));
  out.expanded = pow(big_q, lambda.size() + 2 * n_stat(lambda));
  for (int i = 1; i <= lambda.part(1); ++i)
    for (int k = 1; k <= lambda.multiplicity(i); ++k) out.expanded *= 1 - pow(big_q, -k);
  const Rational t = 1 / big_q;
  const Rational p_lambda = pow(t, lambda.size()) * principal_specialization(lambda, std::nullopt, QTParams{0, t});
  out.via_principal = pow(big_q, n_stat(lambda)) / p_lambda;
  return out;
}

}  // namespace macm
