#pragma once

#include <cstddef>
#include <string>
#include <variant>

#include "macm/kernel.hpp"
#include "macm/partition.hpp"
#include "macm/polynomial.hpp"
#include "macm/qseries.hpp"

namespace macm {

/// Macdonald measure with explicit specializations x, y and parameters (q, t).
struct GeneralSpec {
  VariableSpec x;
  VariableSpec y;
  QTParams p;
};

/// x_i = u/qf^i, y_i = qf^{-(i-1)}, q = 0, t = 1/qf.
struct HallLittlewoodGL {
  Rational u;
  Rational qf;
};

/// x_i = u/qf^i, y_i = qf^{-(i-1)}, q = t = 1/qf.
struct SchurQPlancherel {
  Rational u;
  Rational qf;
};

using MeasureSpec = std::variant<GeneralSpec, HallLittlewoodGL, SchurQPlancherel>;

/// Throws DomainError (or DivergentSeries) when the parameters leave the admissible region.
void validate(const MeasureSpec& spec);

/// The named variants rewritten as a General spec.
GeneralSpec to_general(const MeasureSpec& spec);

std::string describe(const MeasureSpec& spec);

/// P^N(λ): the measure built from x_1..x_N only. Exact (zero tail) whenever the
/// interval normalizers are exact; otherwise the tail bound is certified.
ExactProb pmf_truncated(const MeasureSpec& spec, int n_vars, const Partition& lambda,
                        const Rational& tol = default_tail_tolerance());

/// Closed form for the Hall-Littlewood GL truncation.
Rational hl_gl_pmf_truncated(const Rational& u, const Rational& qf, int n_vars, const Partition& lambda);

/// P(λ)/P(μ) for the untruncated measure; the normalizer cancels.
Rational pmf_ratio(const MeasureSpec& spec, const Partition& lambda, const Partition& mu);

/// Generating function of |λ| under P^N, through z^D. Requires exact interval normalizers.
USeries size_pgf(const MeasureSpec& spec, int n_vars, std::size_t max_degree);

/// J_λ(q) = K_{λ'}(q)^2.
IntPoly j_lambda(const Partition& lambda);
/// J_λ from its defining rational formula, evaluated at qf (qf != 1).
Rational j_lambda_defining(const Partition& lambda, const Rational& qf);
/// J_n(q) = Σ_{|λ|=n} J_λ(q).
IntPoly j_n(int n);

/// J_λ(q)/J_{|λ|}(q) as a ratio of integer polynomials in qf.
struct PlancherelConditional {
  IntPoly numerator;
  IntPoly denominator;
  Rational evaluate(const Rational& qf) const { return numerator.evaluate(qf) / denominator.evaluate(qf); }
};
PlancherelConditional plancherel_conditional(const Partition& lambda);

}  // namespace macm
