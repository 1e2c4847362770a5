#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace macm {

/// A box of a Young diagram. Rows grow downward, columns to the right; both 1-based.
struct Cell {
  int row = 1;
  int col = 1;
  friend auto operator<=>(const Cell&, const Cell&) = default;
};

/// Integer partition stored as its weakly decreasing list of positive parts.
class Partition {
 public:
  Partition() = default;
  /// Throws DomainError unless the parts are positive and weakly decreasing.
  explicit Partition(std::vector<int> parts);
  Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}

  const std::vector<int>& parts() const { return parts_; }
  int size() const { return size_; }
  /// Number of nonzero parts (the length of the first column).
  int length() const { return static_cast<int>(parts_.size()); }
  bool empty() const { return parts_.empty(); }

  /// λ_i with the convention λ_i = 0 beyond the last part (1-based).
  int part(int i) const;
  /// λ'_j, the length of column j (1-based).
  int column_length(int j) const;
  /// m_i(λ), the number of parts equal to i.
  int multiplicity(int i) const;

  bool contains(Cell s) const { return s.row >= 1 && s.col >= 1 && s.col <= part(s.row); }
  /// Diagram containment μ ⊆ λ.
  bool contains(const Partition& mu) const;

  std::string to_string() const;

  friend auto operator<=>(const Partition& a, const Partition& b) { return a.parts_ <=> b.parts_; }
  friend bool operator==(const Partition& a, const Partition& b) { return a.parts_ == b.parts_; }

 private:
  std::vector<int> parts_;
  int size_ = 0;
};

std::ostream& operator<<(std::ostream& os, const Partition& p);

struct CellStats {
  int arm = 0;     // boxes to the east
  int leg = 0;     // boxes to the south
  int coarm = 0;   // boxes to the west
  int coleg = 0;   // boxes to the north
  int hook = 0;    // arm + leg + 1
  int content = 0; // coarm - coleg
};

Partition conjugate(const Partition& lambda);

/// Throws CellOutsideShape when s is not a box of λ.
CellStats cell_stats(const Partition& lambda, Cell s);

/// n(λ) = Σ (i-1) λ_i.
long n_stat(const Partition& lambda);
/// n(λ) evaluated as Σ C(λ'_j, 2); kept separate so the two routes can be compared.
long n_stat_by_columns(const Partition& lambda);

/// All boxes in row-major order.
std::vector<Cell> cells(const Partition& lambda);

long hook_sum(const Partition& lambda);

/// True when small ⊆ big and big − small has at most one box per column.
bool is_horizontal_strip(const Partition& big, const Partition& small);

/// Boxes of big − small ordered by column (left to right). Requires a horizontal strip.
std::vector<Cell> strip_cells(const Partition& big, const Partition& small);

/// All Λ ⊇ λ with Λ − λ a horizontal strip of size k and at most max_parts rows,
/// lexicographically largest first.
std::vector<Partition> horizontal_strip_extensions(const Partition& lambda, int k,
                                                   std::optional<int> max_parts = std::nullopt);

/// All μ ⊆ λ with λ − μ a horizontal strip (of any size, including μ = λ).
std::vector<Partition> horizontal_strip_removals(const Partition& lambda);

struct Cover {
  Partition shape;
  int col = 0;
};

/// Every partition obtained by adding one box, lexicographically largest first.
std::vector<Cover> covers(const Partition& lambda);

/// Adds a box to the bottom of column col; throws DomainError if the result is not a partition.
Partition add_to_column(const Partition& lambda, int col);
/// Removes the bottom box of column col; nullopt if that does not leave a partition.
std::optional<Partition> remove_from_column(const Partition& lambda, int col);

/// All partitions of n (optionally with at most max_parts parts), lexicographically largest first.
std::vector<Partition> partitions_of(int n, std::optional<int> max_parts = std::nullopt);

/// Accepts "5 4 4 1", "(5,4,4,1)", "5,4,4,1", and "()" / "" / "∅" for the empty partition.
Partition parse_partition(std::string_view text);

struct PartitionHash {
  std::size_t operator()(const Partition& p) const noexcept;
};

}  // namespace macm
