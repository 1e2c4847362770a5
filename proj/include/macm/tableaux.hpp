#pragma once

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "macm/partition.hpp"
#include "macm/polynomial.hpp"
#include "macm/rational.hpp"

namespace macm {

/// Standard Young tableau stored row by row; rows()[i][j] is the entry at Cell{i+1, j+1}.
class StandardTableau {
 public:
  StandardTableau() = default;
  /// Throws InvalidDatum unless the rows form a partition shape filled with 1..n,
  /// increasing along rows and columns.
  explicit StandardTableau(std::vector<std::vector<int>> rows);

  /// Builds the tableau whose entry k sits in the box added k-th; col_sequence[k-1]
  /// is the column receiving that box.
  static StandardTableau from_column_sequence(const std::vector<int>& col_sequence);

  const Partition& shape() const { return shape_; }
  const std::vector<std::vector<int>>& rows() const { return rows_; }
  int size() const { return shape_.size(); }
  int entry(Cell s) const;
  /// Cell holding the value k.
  Cell position(int k) const;
  /// Column of each entry 1..n in order: the Young-lattice path of the tableau.
  std::vector<int> column_sequence() const;

  /// One row per line, entries separated by single spaces.
  std::string to_string() const;

  friend bool operator==(const StandardTableau&, const StandardTableau&) = default;
  friend auto operator<=>(const StandardTableau& a, const StandardTableau& b) { return a.rows_ <=> b.rows_; }

 private:
  std::vector<std::vector<int>> rows_;
  Partition shape_;
};

StandardTableau parse_tableau(std::string_view text);

/// One-line notation of a bijection of {1..n}.
class Permutation {
 public:
  Permutation() = default;
  /// Throws InvalidDatum unless the values are a rearrangement of 1..n.
  explicit Permutation(std::vector<int> one_line);
  static Permutation identity(int n);

  int size() const { return static_cast<int>(values_.size()); }
  /// π(i), 1-based.
  int operator()(int i) const { return values_.at(static_cast<std::size_t>(i - 1)); }
  const std::vector<int>& one_line() const { return values_; }
  Permutation inverse() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> values_;
};

/// Number of SYT of shape λ by the hook-length formula.
Integer syt_count(const Partition& lambda);

/// All SYT of shape λ, ordered lexicographically by rows. Throws CapExceeded if |λ| > cap.
std::vector<StandardTableau> enumerate_syt(const Partition& lambda, int cap = 12);

/// A_{(i,j)} and B_{(i,j)} for every box with j >= 2.
struct ABStat {
  int a = 0;
  int b = 0;
};
std::map<Cell, ABStat> tableau_ab_stats(const StandardTableau& t);

/// |GL(m, qf)| = qf^{C(m,2)} Π_{i=1}^m (qf^i - 1) for rational qf.
Rational gl_order_rational(int m, const Rational& qf);

/// Probability that the Young Tableau Algorithm has produced T when coin N comes up tails.
Rational tableau_pmf_truncated(const StandardTableau& t, const Rational& u, const Rational& qf, int n_coins);

int major_index(const Permutation& pi);
/// Sum of the entries i whose successor i+1 lies in a strictly lower row.
int major_index(const StandardTableau& t);

/// q^{n(λ)} [|λ|]! / Π_{s∈λ} [h(s)], by exact polynomial division.
IntPoly kostka_foulkes(const Partition& lambda);
/// Σ_{T ∈ SYT(λ)} q^{maj(T)}.
IntPoly maj_generating_function(const Partition& lambda);

/// Robinson-Schensted row insertion: (insertion tableau P, recording tableau Q).
std::pair<StandardTableau, StandardTableau> rsk(const Permutation& pi);

/// All permutations of {1..n} in lexicographic order.
std::vector<Permutation> all_permutations(int n);

}  // namespace macm
