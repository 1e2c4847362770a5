#pragma once

#include <vector>

#include "macm/partition.hpp"
#include "macm/qseries.hpp"
#include "macm/rational.hpp"

namespace macm {

/// |GL(n, qf)| = qf^{C(n,2)} Π_{i=1}^n (qf^i - 1).
Integer gl_order(int n, long qf);

/// Number of monic irreducible polynomials of degree d over F_qf (necklace formula).
long irreducible_count(int d, long qf);

/// d_i(λ) = Σ_{h<i} h m_h(λ) + i (m_i(λ) + m_{i+1}(λ) + ...).
long d_stat(const Partition& lambda, int i);
/// Same statistic as the column sum λ'_1 + ... + λ'_i.
long d_stat_by_columns(const Partition& lambda, int i);

/// One abstract irreducible-polynomial slot of the given degree and its partition.
struct SlotShape {
  int degree = 1;
  int slot = 1;  // 1..I(degree), with one degree-1 slot removed for the polynomial z
  Partition shape;

  friend bool operator==(const SlotShape&, const SlotShape&) = default;
};

/// Rational canonical form data of a conjugacy class: the slots with nonempty partitions.
struct ClassDatum {
  std::vector<SlotShape> assignment;

  /// Σ degree · |λ|.
  long dimension() const;
  /// Partition of a slot (empty if it is not listed).
  Partition shape_of(int degree, int slot) const;
  std::string to_string() const;
};

/// Π_i Π_{k=1}^{m_i(λ)} (Q^{d_i(λ)} - Q^{d_i(λ)-k}) with Q = qf^degree, Kung's centralizer factor.
Integer kung_factor(const Partition& lambda, int degree, long qf);

/// Kung's class size |GL(n, qf)| / Π_φ kung_factor(λ_φ, deg φ, qf). Throws InvalidDatum when
/// the datum is not a class of GL(n, qf).
Integer kung_class_size(int n, long qf, const ClassDatum& datum);

struct ClassEntry {
  ClassDatum datum;
  Integer size;
};

/// Every conjugacy class of GL(n, qf) with its size. Throws CapExceeded for n > cap or qf > 3.
std::vector<ClassEntry> enumerate_classes(int n, long qf, int cap = 5);

/// c_λ(Q) = Π_i 1/(Q^{λ'_i^2} (1/Q)_{m_i(λ)}).
Rational class_shape_weight(const Partition& lambda, const Rational& big_q);

struct MarginalReport {
  Partition shape;
  int degree = 1;
  long qf = 2;
  int n_max = 0;
  std::vector<Rational> group_probability;  // Prob_n(λ_φ = λ), n = 0..n_max
  USeries group_side;                       // Σ_n (1-u) u^n Prob_n
  USeries measure_side;                     // Π_r (1 - u^m/Q^r) u^{m|λ|} c_λ(Q), Q = qf^m
  std::vector<bool> matches;                // per coefficient
  Rational measure_prefix;                  // Prob_{n_max} recovered from the measure side
  ExactProb limit;                          // lim_n Prob_n = Π_r (1 - 1/Q^r) c_λ(Q)

  bool all_match() const;
};

/// Compares the law of λ_φ for a fixed slot of degree `degree` under uniform GL(n, qf),
/// n <= n_max, with the Hall-Littlewood measure side.
MarginalReport marginal_vs_measure(const Partition& lambda, int degree, long qf, int n_max, int cap = 5);

/// Π_{d>=1} Π_{r>=1} (1 - u^d/qf^{rd})^{I'(d)} through u^D, where I'(1) = I(1) - 1.
/// Equals 1 - u.
USeries class_normalization_series(long qf, std::size_t max_degree);

/// The three forms of Kung's factor for one slot of degree m:
/// the product itself, Q^{|λ| + 2n(λ)} Π_i (1/Q)_{m_i}, and Q^{n(λ)} / P_λ(1/Q, 1/Q^2, ...; t = 1/Q).
struct KungChain {
  Rational product;
  Rational expanded;
  Rational via_principal;
};
KungChain kung_chain(const Partition& lambda, int degree, long qf);

}  // namespace macm
