#include "macm/kernel.hpp"

#include <utility>

#include "macm/error.hpp"

namespace macm {

void FactorProduct::multiply(int q_exp, int t_exp, int power) {
  if (power == 0) return;
  const bool q_zero = params_.q == 0;
  const bool t_zero = params_.t == 0;
  std::pair<int, int> key{q_exp, t_exp};
  if (params_.q == params_.t) {
    key = {0, q_exp + t_exp};
    if (q_zero && key.second > 0) return;
  } else {
    if (q_zero && q_exp > 0) return;
    if (t_zero && t_exp > 0) return;
  }
  int& e = factors_[key];
  e += power;
  if (e == 0) factors_.erase(key);
}

void FactorProduct::monomial(long q_exp, long t_exp) {
  q_mono_ += q_exp;
  t_mono_ += t_exp;
}

Rational FactorProduct::evaluate() const {
  bool numerator_vanishes = false;
  Rational out = scale_;
  for (const auto& [key, power] : factors_) {
    const Rational f = 1 - pow(params_.q, key.first) * pow(params_.t, key.second);
    if (f == 0) {
      if (power < 0) throw Error(ErrorCode::SingularParameter, "vanishing denominator factor");
      numerator_vanishes = true;
      continue;
    }
    out *= pow(f, power);
  }
  if (numerator_vanishes) return 0;
  try {
    if (params_.q == params_.t) {
      out *= pow(params_.q, q_mono_ + t_mono_);
    } else {
      out *= pow(params_.q, q_mono_) * pow(params_.t, t_mono_);
    }
  } catch (const Error&) {
    throw Error(ErrorCode::SingularParameter, "zero parameter raised to a negative power");
  }
  return out;
}

namespace {

// b_μ(s) for every s of μ lying in one of the given columns, with sign ±1.
void add_b_factors(FactorProduct& fp, const Partition& mu, int sign, const std::vector<int>* columns) {
  for (const Cell& s : cells(mu)) {
    if (columns) {
      bool hit = false;
      for (int c : *columns) hit = hit || c == s.col;
      if (!hit) continue;
    }
    const CellStats st = cell_stats(mu, s);
    fp.multiply(st.arm, st.leg + 1, sign);
    fp.multiply(st.arm + 1, st.leg, -sign);
  }
}

std::vector<int> strip_columns(const Partition& big, const Partition& small) {
  std::vector<int> cols;
  for (const Cell& c : strip_cells(big, small)) cols.push_back(c.col);
  return cols;
}

void add_phi_factors(FactorProduct& fp, const Partition& big, const Partition& small) {
  const auto cols = strip_columns(big, small);
  add_b_factors(fp, big, +1, &cols);
  add_b_factors(fp, small, -1, &cols);
}

// Factors of P_λ(1, t, t^2, ...) (n_vars = nullopt) or of its N-variable version,
// raised to the given sign. Caller checks that N >= λ'_1.
void add_principal_factors(FactorProduct& fp, const Partition& lambda, std::optional<int> n_vars, int sign) {
  fp.monomial(0, sign * n_stat(lambda));
  for (const Cell& s : cells(lambda)) {
    const CellStats st = cell_stats(lambda, s);
    if (n_vars) fp.multiply(st.coarm, *n_vars - st.coleg, sign);
    fp.multiply(st.arm, st.leg + 1, -sign);
  }
}

}  // namespace

Rational b_weight(const Partition& lambda, const QTParams& p) {
  FactorProduct fp(p);
  add_b_factors(fp, lambda, +1, nullptr);
  return fp.evaluate();
}

Rational phi_weight(const Partition& big, const Partition& small, const QTParams& p) {
  FactorProduct fp(p);
  add_phi_factors(fp, big, small);
  return fp.evaluate();
}

Rational skew_one_var(const Partition& big, const Partition& small, const Rational& x, const QTParams& p) {
  if (!is_horizontal_strip(big, small)) return 0;
  FactorProduct fp(p);
  add_b_factors(fp, small, +1, nullptr);
  add_b_factors(fp, big, -1, nullptr);
  add_phi_factors(fp, big, small);
  fp.scale(pow(x, big.size() - small.size()));
  return fp.evaluate();
}

Rational principal_specialization(const Partition& lambda, std::optional<int> n_vars, const QTParams& p) {
  if (n_vars && *n_vars < lambda.length()) return 0;
  FactorProduct fp(p);
  add_principal_factors(fp, lambda, n_vars, +1);
  return fp.evaluate();
}

std::vector<Rational> g_coefficients(const VariableSpec& y, const QTParams& p, std::size_t max_degree) {
  if (abs(p.q) >= 1 || abs(p.t) >= 1) throw Error(ErrorCode::DivergentSeries, "g_n needs |q|, |t| < 1");
  USeries logs(max_degree);
  for (std::size_t n = 1; n <= max_degree; ++n) {
    const long e = static_cast<long>(n);
    logs[n] = (1 - pow(p.t, e)) / (1 - pow(p.q, e)) * power_sum(y, n) / e;
  }
  return logs.exp().coefficients();
}

// ---------------------------------------------------------------------------

FiniteEvaluator::FiniteEvaluator(std::vector<Rational> xs, QTParams p) : xs_(std::move(xs)), p_(std::move(p)) {}

Rational FiniteEvaluator::evaluate(const Partition& lambda) { return evaluate(lambda, xs_.size()); }

const Rational& FiniteEvaluator::skew_coefficient(const Partition& big, const Partition& small) {
  auto key = std::make_pair(big, small);
  auto it = skew_memo_.find(key);
  if (it != skew_memo_.end()) return it->second;
  return skew_memo_.emplace(std::move(key), skew_one_var(big, small, Rational(1), p_)).first->second;
}

Rational FiniteEvaluator::evaluate(const Partition& lambda, std::size_t m) {
  if (m > xs_.size()) throw Error(ErrorCode::DomainError, "more variables requested than supplied");
  if (static_cast<std::size_t>(lambda.length()) > m) return 0;
  if (m == 0) return lambda.empty() ? Rational(1) : Rational(0);
  if (lambda.empty()) return 1;
  auto key = std::make_pair(lambda, m);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;

  Rational total = 0;
  const Rational& x = xs_[m - 1];
  for (const Partition& mu : horizontal_strip_removals(lambda)) {
    if (static_cast<std::size_t>(mu.length()) > m - 1) continue;
    const int r = lambda.size() - mu.size();
    if (r > 0 && x == 0) continue;
    const Rational below = evaluate(mu, m - 1);
    if (below == 0) continue;
    total += below * skew_coefficient(lambda, mu) * pow(x, r);
  }
  memo_.emplace(std::move(key), total);
  return total;
}

Rational macdonald_eval_finite(const Partition& lambda, const std::vector<Rational>& xs, const QTParams& p) {
  FiniteEvaluator ev(xs, p);
  return ev.evaluate(lambda);
}

namespace {

bool is_principal(const VariableSpec& y, const QTParams& p) {
  const auto* g = y.as_geometric();
  return g != nullptr && g->ratio == p.t;
}

}  // namespace

Rational evaluate_specialization(const Partition& lambda, const VariableSpec& y, const QTParams& p) {
  if (const auto* f = y.as_finite()) return macdonald_eval_finite(lambda, f->values, p);
  if (!is_principal(y, p))
    throw Error(ErrorCode::UnsupportedSpec, "infinite specialization must be geometric with ratio t");
  return pow(y.as_geometric()->first, lambda.size()) * principal_specialization(lambda, std::nullopt, p);
}

namespace {

// Principal case: φ · P_Λ/P_λ / g_r with every factor collected for cancellation.
// g_r(c, ct, ct^2, ...) = c^r / Π_{i<=r}(1 - q^i), and the c^r cancels P_Λ/P_λ.
Rational principal_pieri(const Partition& small, const Partition& big, const QTParams& p) {
  FactorProduct fp(p);
  add_phi_factors(fp, big, small);
  add_principal_factors(fp, big, std::nullopt, +1);
  add_principal_factors(fp, small, std::nullopt, -1);
  const int r = big.size() - small.size();
  for (int i = 1; i <= r; ++i) fp.multiply(i, 0, +1);
  return fp.evaluate();
}

}  // namespace

Rational pieri_transition(const Partition& small, const Partition& big, const VariableSpec& y, const QTParams& p) {
  if (!is_horizontal_strip(big, small))
    throw Error(ErrorCode::NotAStrip, big.to_string() + " - " + small.to_string() + " is not a horizontal strip");
  const int r = big.size() - small.size();
  if (r == 0) return 1;
  if (is_principal(y, p)) {
    if (y.as_geometric()->first == 0) throw Error(ErrorCode::ZeroDenominator, "P_λ(y) vanishes");
    return principal_pieri(small, big, p);
  }
  if (const auto* f = y.as_finite()) {
    FiniteEvaluator ev(f->values, p);
    const Rational below = ev.evaluate(small);
    if (below == 0) throw Error(ErrorCode::ZeroDenominator, "P_λ(y) vanishes for λ = " + small.to_string());
    const Rational g = g_coefficients(y, p, static_cast<std::size_t>(r))[static_cast<std::size_t>(r)];
    if (g == 0) throw Error(ErrorCode::ZeroDenominator, "g_r(y) vanishes");
    return phi_weight(big, small, p) / g * ev.evaluate(big) / below;
  }
  throw Error(ErrorCode::UnsupportedSpec, "Pieri transition needs a principal or finite y");
}

PieriTable::PieriTable(VariableSpec y, QTParams p, std::optional<int> max_parts)
    : y_(std::move(y)), p_(std::move(p)), max_parts_(max_parts) {
  if (const auto* f = y_.as_finite()) finite_.emplace(f->values, p_);
  else if (!is_principal(y_, p_))
    throw Error(ErrorCode::UnsupportedSpec, "Pieri transition needs a principal or finite y");
}

const PieriTable::Row& PieriTable::row(const Partition& lambda, int strip_size) {
  auto key = std::make_pair(lambda, strip_size);
  if (auto it = rows_.find(key); it != rows_.end()) return it->second;

  Row row;
  row.targets = horizontal_strip_extensions(lambda, strip_size, max_parts_);
  if (finite_) {
    if (g_.size() <= static_cast<std::size_t>(strip_size))
      g_ = g_coefficients(y_, p_, static_cast<std::size_t>(strip_size) + 8);
    const Rational below = finite_->evaluate(lambda);
    if (below == 0) throw Error(ErrorCode::ZeroDenominator, "P_λ(y) vanishes for λ = " + lambda.to_string());
    const Rational& g = g_[static_cast<std::size_t>(strip_size)];
    for (const auto& big : row.targets)
      row.probabilities.push_back(strip_size == 0 ? Rational(1)
                                                  : phi_weight(big, lambda, p_) / g * finite_->evaluate(big) / below);
  } else {
    for (const auto& big : row.targets)
      row.probabilities.push_back(strip_size == 0 ? Rational(1) : principal_pieri(lambda, big, p_));
  }
  return rows_.emplace(std::move(key), std::move(row)).first->second;
}

// ---------------------------------------------------------------------------

namespace {

ExactProb divide_positive(const ExactProb& a, const ExactProb& b) {
  if (b.lower() <= 0) throw Error(ErrorCode::ZeroDenominator, "denominator interval reaches zero");
  const Rational v = a.value / b.value;
  if (a.is_exact() && b.is_exact()) return {v, 0};
  const Rational hi = a.upper() / b.lower();
  const Rational lo = a.lower() / b.upper();
  return {v, std::max(hi - v, v - lo)};
}

}  // namespace

ExactProb interval_normalizer(const Rational& x, const VariableSpec& y, const QTParams& p, const Rational& tol) {
  if (x == 0 || y.all_zero()) return {1, 0};
  if (const auto* g = y.as_geometric()) {
    if (g->ratio != p.t)
      throw Error(ErrorCode::UnsupportedSpec, "interval normalizer needs a finite or principal y");
    // Π_j (x c t^{j-1}; q)_∞ / (x c t^j; q)_∞ telescopes to (x c; q)_∞.
    const Rational xc = x * g->first;
    if (p.q == 0) return {1 - xc, 0};
    return pochhammer_infinite(xc, p.q, tol);
  }
  const auto& ys = y.as_finite()->values;
  if (p.q == 0 || p.q == p.t) {
    Rational v = 1;
    for (const auto& yj : ys) {
      if (p.q == 0) v *= (1 - x * yj) / (1 - p.t * x * yj);
      else v *= 1 - x * yj;
    }
    return {v, 0};
  }
  const Rational share = tol / (2 * static_cast<long>(ys.size()) + 2);
  ExactProb num{1, 0};
  ExactProb den{1, 0};
  for (const auto& yj : ys) {
    num = num * pochhammer_infinite(x * yj, p.q, share);
    den = den * pochhammer_infinite(p.t * x * yj, p.q, share);
  }
  return divide_positive(num, den);
}

}  // namespace macm
