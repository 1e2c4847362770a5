#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "macm/partition.hpp"
#include "macm/qseries.hpp"
#include "macm/rational.hpp"

namespace macm {

/// Macdonald deformation parameters. q = 0 is the Hall-Littlewood case and
/// q = t the Schur case.
struct QTParams {
  Rational q = 0;
  Rational t = 0;
};

// Product of factors (1 - q^i t^j)^{±1}. Factors are normalized before
// evaluation (q = t merges exponents, a zero parameter kills its factor) so
// that identical numerator and denominator factors cancel symbolically and
// removable singularities never get evaluated.
class FactorProduct {
 public:
  explicit FactorProduct(QTParams params) : params_(std::move(params)) {}

  void multiply(int q_exp, int t_exp, int power = 1);
  void divide(int q_exp, int t_exp) { multiply(q_exp, t_exp, -1); }
  /// Multiplies in the monomial q^a t^b.
  void monomial(long q_exp, long t_exp);
  void scale(const Rational& k) { scale_ *= k; }

  /// Throws SingularParameter if a surviving denominator factor vanishes.
  Rational evaluate() const;

 private:
  QTParams params_;
  std::map<std::pair<int, int>, int> factors_;
  long q_mono_ = 0;
  long t_mono_ = 0;
  Rational scale_ = 1;
};

/// b_λ(q,t) = Π_{s∈λ} (1 - q^{a(s)} t^{l(s)+1}) / (1 - q^{a(s)+1} t^{l(s)}).
Rational b_weight(const Partition& lambda, const QTParams& p);

/// φ_{Λ/λ}(q,t): product of b_Λ(s)/b_λ(s) over the columns meeting Λ − λ.
/// Throws NotAStrip unless Λ − λ is a horizontal strip.
Rational phi_weight(const Partition& big, const Partition& small, const QTParams& p);

/// One-variable skew polynomial P_{Λ/λ}(x); zero when Λ − λ is not a horizontal strip.
Rational skew_one_var(const Partition& big, const Partition& small, const Rational& x, const QTParams& p);

/// P_λ(1, t, ..., t^{N-1}); nullopt N means the infinite principal specialization.
Rational principal_specialization(const Partition& lambda, std::optional<int> n_vars, const QTParams& p);

/// g_0..g_K for the specialization y, by exponentiating the power-sum logarithm.
std::vector<Rational> g_coefficients(const VariableSpec& y, const QTParams& p, std::size_t max_degree);

/// Memoized branching evaluation of P_λ(x_1, ..., x_m) for a fixed variable list.
class FiniteEvaluator {
 public:
  FiniteEvaluator(std::vector<Rational> xs, QTParams p);

  /// P_λ(x_1..x_m) using the first m variables (default: all of them).
  Rational evaluate(const Partition& lambda);
  Rational evaluate(const Partition& lambda, std::size_t m);

  std::size_t variable_count() const { return xs_.size(); }

 private:
  const Rational& skew_coefficient(const Partition& big, const Partition& small);

  std::vector<Rational> xs_;
  QTParams p_;
  std::map<std::pair<Partition, std::size_t>, Rational> memo_;
  std::map<std::pair<Partition, Partition>, Rational> skew_memo_;
};

Rational macdonald_eval_finite(const Partition& lambda, const std::vector<Rational>& xs, const QTParams& p);

/// P_λ(y) for a finite list or a principal-type geometric y (ratio equal to t).
/// Throws UnsupportedSpec for other infinite specializations.
Rational evaluate_specialization(const Partition& lambda, const VariableSpec& y, const QTParams& p);

/// φ_{Λ/λ} / g_r(y) · P_Λ(y) / P_λ(y), the strip-growth probability of the general algorithm.
Rational pieri_transition(const Partition& small, const Partition& big, const VariableSpec& y, const QTParams& p);

/// Reusable Pieri step: all extensions of λ by a strip of size r with their transition probabilities.
class PieriTable {
 public:
  PieriTable(VariableSpec y, QTParams p, std::optional<int> max_parts = std::nullopt);

  struct Row {
    std::vector<Partition> targets;
    std::vector<Rational> probabilities;
  };
  const Row& row(const Partition& lambda, int strip_size);

 private:
  VariableSpec y_;
  QTParams p_;
  std::optional<int> max_parts_;
  std::optional<FiniteEvaluator> finite_;
  std::vector<Rational> g_;
  std::map<std::pair<Partition, int>, Row> rows_;
};

/// Π_j (x y_j; q)_∞ / (t x y_j; q)_∞ = 1 / Σ_k g_k(y) x^k, the probability that an
/// interval with variable x adds no box. Exact when q = 0, or q = t with a finite y.
ExactProb interval_normalizer(const Rational& x, const VariableSpec& y, const QTParams& p, const Rational& tol);

}  // namespace macm
