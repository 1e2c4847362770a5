#include "macm/measures.hpp"

#include <map>
#include <mutex>

#include "macm/error.hpp"
#include "macm/tableaux.hpp"

namespace macm {

namespace {

Rational max_entry(const VariableSpec& v) {
  if (const auto* g = v.as_geometric()) return g->first;
  Rational m = 0;
  for (const auto& x : v.as_finite()->values) m = std::max(m, x);
  return m;
}

void validate_named(const Rational& u, const Rational& qf) {
  if (u < 0 || u > 1) throw Error(ErrorCode::DomainError, "u must lie in [0, 1]");
  if (qf <= 1) throw Error(ErrorCode::DomainError, "qf must exceed 1");
}

// Π_{i>=1} 1/(qf^{λ'_i^2} (1/qf)_{m_i(λ)}), the shape factor of the GL measure.
Rational hl_shape_factor(const Partition& lambda, const Rational& qf) {
  Rational out = 1;
  const Rational inv = 1 / qf;
  for (int j = 1; j <= lambda.part(1); ++j) {
    const long c = lambda.column_length(j);
    out /= pow(qf, c * c);
  }
  for (int i = 1; i <= lambda.part(1); ++i)
    for (int k = 1; k <= lambda.multiplicity(i); ++k) out /= 1 - pow(inv, k);
  return out;
}

// (x)_N = (1 - x)(1 - x/qf)...(1 - x/qf^{N-1}).
Rational falling_pochhammer(const Rational& x, const Rational& qf, int n) {
  Rational out = 1;
  for (int i = 0; i < n; ++i) out *= 1 - x / pow(qf, i);
  return out;
}

std::vector<Rational> first_values(const VariableSpec& x, int n) {
  std::vector<Rational> out;
  for (int i = 1; i <= n; ++i) out.push_back(x.value(static_cast<std::size_t>(i)));
  return out;
}

}  // namespace

void validate(const MeasureSpec& spec) {
  if (const auto* hl = std::get_if<HallLittlewoodGL>(&spec)) return validate_named(hl->u, hl->qf);
  if (const auto* sp = std::get_if<SchurQPlancherel>(&spec)) return validate_named(sp->u, sp->qf);
  const auto& g = std::get<GeneralSpec>(spec);
  if (g.p.q < 0 || g.p.q >= 1 || g.p.t < 0 || g.p.t >= 1)
    throw Error(ErrorCode::DomainError, "Macdonald parameters need 0 <= q, t < 1");
  if (!g.x.nonnegative() || !g.y.nonnegative())
    throw Error(ErrorCode::NonPositiveProbability, "specializations must be non-negative");
  if (max_entry(g.x) * max_entry(g.y) >= 1)
    throw Error(ErrorCode::DivergentSeries, "need x_i y_j < 1 for the normalizing product to converge");
}

GeneralSpec to_general(const MeasureSpec& spec) {
  if (const auto* g = std::get_if<GeneralSpec>(&spec)) return *g;
  const bool schur = std::holds_alternative<SchurQPlancherel>(spec);
  const Rational u = schur ? std::get<SchurQPlancherel>(spec).u : std::get<HallLittlewoodGL>(spec).u;
  const Rational qf = schur ? std::get<SchurQPlancherel>(spec).qf : std::get<HallLittlewoodGL>(spec).qf;
  validate_named(u, qf);
  const Rational t = 1 / qf;
  return GeneralSpec{VariableSpec::geometric(u * t, t), VariableSpec::geometric(1, t), QTParams{schur ? t : Rational(0), t}};
}

std::string describe(const MeasureSpec& spec) {
  if (const auto* hl = std::get_if<HallLittlewoodGL>(&spec))
    return "hall-littlewood-gl(u=" + to_string(hl->u) + ", qf=" + to_string(hl->qf) + ")";
  if (const auto* sp = std::get_if<SchurQPlancherel>(&spec))
    return "schur-q-plancherel(u=" + to_string(sp->u) + ", qf=" + to_string(sp->qf) + ")";
  const auto& g = std::get<GeneralSpec>(spec);
  return "general(x=" + g.x.to_string() + ", y=" + g.y.to_string() + ", q=" + to_string(g.p.q) +
         ", t=" + to_string(g.p.t) + ")";
}

Rational hl_gl_pmf_truncated(const Rational& u, const Rational& qf, int n_vars, const Partition& lambda) {
  validate_named(u, qf);
  if (lambda.length() > n_vars) return 0;
  const Rational inv = 1 / qf;
  return pow(u, lambda.size()) * falling_pochhammer(u / qf, qf, n_vars) * falling_pochhammer(inv, qf, n_vars) /
         falling_pochhammer(inv, qf, n_vars - lambda.length()) * hl_shape_factor(lambda, qf);
}

ExactProb pmf_truncated(const MeasureSpec& spec, int n_vars, const Partition& lambda, const Rational& tol) {
  validate(spec);
  if (n_vars < 0) throw Error(ErrorCode::DomainError, "N must be non-negative");
  if (lambda.length() > n_vars) return {0, 0};
  if (const auto* hl = std::get_if<HallLittlewoodGL>(&spec))
    return {hl_gl_pmf_truncated(hl->u, hl->qf, n_vars, lambda), 0};

  const GeneralSpec g = to_general(spec);
  const std::vector<Rational> xs = first_values(g.x, n_vars);
  if (const auto* f = g.y.as_finite(); f && lambda.length() > static_cast<int>(f->values.size())) return {0, 0};

  Rational weight;
  if (std::holds_alternative<SchurQPlancherel>(spec)) {
    // P_λ(u t, ..., u t^N) = (u t)^{|λ|} P_λ(1, ..., t^{N-1}); b_λ = 1 at q = t.
    const auto& sp = std::get<SchurQPlancherel>(spec);
    weight = pow(sp.u / sp.qf, lambda.size()) * principal_specialization(lambda, n_vars, g.p) *
             principal_specialization(lambda, std::nullopt, g.p);
  } else {
    weight = macdonald_eval_finite(lambda, xs, g.p);
    if (weight != 0) weight *= evaluate_specialization(lambda, g.y, g.p) * b_weight(lambda, g.p);
  }

  ExactProb norm{1, 0};
  const Rational share = n_vars > 0 ? tol / n_vars : tol;
  for (const auto& x : xs) norm = norm * interval_normalizer(x, g.y, g.p, share);
  return weight * norm;
}

Rational pmf_ratio(const MeasureSpec& spec, const Partition& lambda, const Partition& mu) {
  validate(spec);
  if (lambda == mu) return 1;
  auto weight = [&](const Partition& nu) -> Rational {
    if (const auto* hl = std::get_if<HallLittlewoodGL>(&spec)) return pow(hl->u, nu.size()) * hl_shape_factor(nu, hl->qf);
    if (const auto* sp = std::get_if<SchurQPlancherel>(&spec)) {
      Rational den = pow(sp->qf, static_cast<long>(nu.size()) * nu.size());
      for (int i = 1; i <= nu.size(); ++i) {
        const Rational f = 1 - 1 / pow(sp->qf, i);
        den *= f * f;
      }
      return pow(sp->u, nu.size()) * j_lambda(nu).evaluate(sp->qf) / den;
    }
    const auto& g = std::get<GeneralSpec>(spec);
    const Rational px = evaluate_specialization(nu, g.x, g.p);
    if (px == 0) return 0;
    return px * evaluate_specialization(nu, g.y, g.p) * b_weight(nu, g.p);
  };
  const Rational den = weight(mu);
  if (den == 0) throw Error(ErrorCode::ZeroDenominator, "P(" + mu.to_string() + ") vanishes");
  return weight(lambda) / den;
}

USeries size_pgf(const MeasureSpec& spec, int n_vars, std::size_t max_degree) {
  validate(spec);
  const GeneralSpec g = to_general(spec);
  USeries out = USeries::one(max_degree);
  if (n_vars <= 0) return out;
  const std::vector<Rational> gk = g_coefficients(g.y, g.p, max_degree);
  for (const auto& x : first_values(g.x, n_vars)) {
    const ExactProb norm = interval_normalizer(x, g.y, g.p, default_tail_tolerance());
    if (!norm.is_exact())
      throw Error(ErrorCode::UnsupportedSpec, "size PGF needs exact interval normalizers (q = 0, or q = t with finite y)");
    USeries factor(max_degree);
    Rational xk = 1;
    for (std::size_t k = 0; k <= max_degree; ++k) {
      factor[k] = norm.value * gk[k] * xk;
      xk *= x;
    }
    out *= factor;
  }
  return out;
}

IntPoly j_lambda(const Partition& lambda) {
  static std::mutex mu;
  static std::map<Partition, IntPoly> memo;
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = memo.find(lambda); it != memo.end()) return it->second;
  }
  const IntPoly k = kostka_foulkes(conjugate(lambda));
  IntPoly j = k * k;
  std::lock_guard<std::mutex> lock(mu);
  return memo.emplace(lambda, std::move(j)).first->second;
}

Rational j_lambda_defining(const Partition& lambda, const Rational& qf) {
  if (qf == 1) throw Error(ErrorCode::SingularParameter, "defining formula is singular at qf = 1");
  const long n = lambda.size();
  Rational out = pow(qf, n * n - n - 2 * n_stat(lambda));
  const Rational inv = 1 / qf;
  for (long i = 1; i <= n; ++i) {
    const Rational f = 1 - pow(inv, i);
    out *= f * f;
  }
  for (const auto& c : cells(lambda)) {
    const Rational f = 1 - pow(inv, cell_stats(lambda, c).hook);
    out /= f * f;
  }
  return out;
}

IntPoly j_n(int n) {
  if (n == 0) return IntPoly::constant(1);
  IntPoly out;
  for (const auto& lam : partitions_of(n)) out += j_lambda(lam);
  return out;
}

PlancherelConditional plancherel_conditional(const Partition& lambda) {
  return {j_lambda(lambda), j_n(lambda.size())};
}

}  // namespace macm
