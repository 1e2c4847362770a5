#include "macm/partition.hpp"

#include <algorithm>
#include <cctype>
#include <utility>

#include "macm/error.hpp"

namespace macm {

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i] <= 0) throw Error(ErrorCode::DomainError, "partition parts must be positive");
    if (i > 0 && parts_[i] > parts_[i - 1])
      throw Error(ErrorCode::DomainError, "partition parts must be weakly decreasing");
    size_ += parts_[i];
  }
}

int Partition::part(int i) const {
  if (i < 1 || i > length()) return 0;
  return parts_[static_cast<std::size_t>(i - 1)];
}

int Partition::column_length(int j) const {
  if (j < 1) return 0;
  int n = 0;
  for (int p : parts_) {
    if (p < j) break;
    ++n;
  }
  return n;
}

int Partition::multiplicity(int i) const {
  return static_cast<int>(std::count(parts_.begin(), parts_.end(), i));
}

bool Partition::contains(const Partition& mu) const {
  if (mu.length() > length()) return false;
  for (int i = 1; i <= mu.length(); ++i)
    if (mu.part(i) > part(i)) return false;
  return true;
}

std::string Partition::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(parts_[i]);
  }
  return out + ")";
}

std::ostream& operator<<(std::ostream& os, const Partition& p) { return os << p.to_string(); }

Partition conjugate(const Partition& lambda) {
  std::vector<int> out;
  const int width = lambda.part(1);
  out.reserve(static_cast<std::size_t>(width));
  for (int j = 1; j <= width; ++j) out.push_back(lambda.column_length(j));
  return Partition(std::move(out));
}

CellStats cell_stats(const Partition& lambda, Cell s) {
  if (!lambda.contains(s))
    throw Error(ErrorCode::CellOutsideShape,
                "cell (" + std::to_string(s.row) + "," + std::to_string(s.col) + ") not in " + lambda.to_string());
  CellStats st;
  st.arm = lambda.part(s.row) - s.col;
  st.leg = lambda.column_length(s.col) - s.row;
  st.coarm = s.col - 1;
  st.coleg = s.row - 1;
  st.hook = st.arm + st.leg + 1;
  st.content = st.coarm - st.coleg;
  return st;
}

long n_stat(const Partition& lambda) {
  long n = 0;
  for (int i = 1; i <= lambda.length(); ++i) n += static_cast<long>(i - 1) * lambda.part(i);
  return n;
}

long n_stat_by_columns(const Partition& lambda) {
  long n = 0;
  for (int j = 1; j <= lambda.part(1); ++j) {
    const long c = lambda.column_length(j);
    n += c * (c - 1) / 2;
  }
  return n;
}

std::vector<Cell> cells(const Partition& lambda) {
  std::vector<Cell> out;
  out.reserve(static_cast<std::size_t>(lambda.size()));
  for (int i = 1; i <= lambda.length(); ++i)
    for (int j = 1; j <= lambda.part(i); ++j) out.push_back({i, j});
  return out;
}

long hook_sum(const Partition& lambda) {
  long total = 0;
  for (const Cell& s : cells(lambda)) total += cell_stats(lambda, s).hook;
  return total;
}

bool is_horizontal_strip(const Partition& big, const Partition& small) {
  if (!big.contains(small)) return false;
  // Interlacing big_{i+1} <= small_i <= big_i is equivalent to one box per column.
  for (int i = 1; i <= big.length(); ++i)
    if (big.part(i + 1) > small.part(i)) return false;
  return true;
}

std::vector<Cell> strip_cells(const Partition& big, const Partition& small) {
  if (!is_horizontal_strip(big, small))
    throw Error(ErrorCode::NotAStrip, big.to_string() + " - " + small.to_string() + " is not a horizontal strip");
  std::vector<Cell> out;
  for (int j = 1; j <= big.part(1); ++j) {
    const int lo = small.column_length(j);
    const int hi = big.column_length(j);
    if (hi > lo) out.push_back({hi, j});
  }
  return out;
}

namespace {

void extend_rows(const Partition& lambda, int row, int remaining, int rows_allowed, std::vector<int>& acc,
                 std::vector<Partition>& out) {
  const int base = lambda.part(row);
  if (row > lambda.length() + 1 || row > rows_allowed) {
    if (remaining == 0) {
      std::vector<int> parts;
      for (int p : acc)
        if (p > 0) parts.push_back(p);
      out.emplace_back(std::move(parts));
    }
    return;
  }
  int cap = remaining;
  if (row > 1) cap = std::min(cap, lambda.part(row - 1) - base);
  for (int add = cap; add >= 0; --add) {
    acc.push_back(base + add);
    extend_rows(lambda, row + 1, remaining - add, rows_allowed, acc, out);
    acc.pop_back();
  }
}

}  // namespace

std::vector<Partition> horizontal_strip_extensions(const Partition& lambda, int k, std::optional<int> max_parts) {
  if (k < 0) throw Error(ErrorCode::DomainError, "strip size must be non-negative");
  std::vector<Partition> out;
  const int rows_allowed = max_parts ? *max_parts : lambda.length() + 1;
  if (lambda.length() > rows_allowed) return out;
  std::vector<int> acc;
  extend_rows(lambda, 1, k, rows_allowed, acc, out);
  return out;
}

std::vector<Partition> horizontal_strip_removals(const Partition& lambda) {
  std::vector<Partition> out;
  std::vector<int> acc;
  const int len = lambda.length();
  std::function<void(int)> rec = [&](int row) {
    if (row > len) {
      std::vector<int> parts;
      for (int p : acc)
        if (p > 0) parts.push_back(p);
      out.emplace_back(std::move(parts));
      return;
    }
    for (int v = lambda.part(row); v >= lambda.part(row + 1); --v) {
      acc.push_back(v);
      rec(row + 1);
      acc.pop_back();
    }
  };
  rec(1);
  return out;
}

std::vector<Cover> covers(const Partition& lambda) {
  std::vector<Cover> out;
  for (int j = lambda.part(1) + 1; j >= 1; --j) {
    if (j == 1 || lambda.column_length(j) < lambda.column_length(j - 1))
      out.push_back({add_to_column(lambda, j), j});
  }
  return out;
}

Partition add_to_column(const Partition& lambda, int col) {
  if (col < 1) throw Error(ErrorCode::DomainError, "column index must be positive");
  const int row = lambda.column_length(col) + 1;
  if (lambda.part(row) != col - 1)
    throw Error(ErrorCode::DomainError, "cannot add a box to column " + std::to_string(col) + " of " +
                                            lambda.to_string());
  std::vector<int> parts = lambda.parts();
  if (row > lambda.length()) parts.push_back(1);
  else parts[static_cast<std::size_t>(row - 1)] += 1;
  return Partition(std::move(parts));
}

std::optional<Partition> remove_from_column(const Partition& lambda, int col) {
  const int row = lambda.column_length(col);
  if (row == 0 || lambda.part(row) != col || lambda.part(row + 1) == col) return std::nullopt;
  std::vector<int> parts = lambda.parts();
  parts[static_cast<std::size_t>(row - 1)] -= 1;
  if (parts.back() == 0) parts.pop_back();
  return Partition(std::move(parts));
}

std::vector<Partition> partitions_of(int n, std::optional<int> max_parts) {
  std::vector<Partition> out;
  if (n < 0) return out;
  const int rows = max_parts ? *max_parts : n;
  std::vector<int> acc;
  std::function<void(int, int)> rec = [&](int remaining, int cap) {
    if (remaining == 0) {
      out.emplace_back(acc);
      return;
    }
    if (static_cast<int>(acc.size()) >= rows) return;
    for (int p = std::min(remaining, cap); p >= 1; --p) {
      acc.push_back(p);
      rec(remaining - p, p);
      acc.pop_back();
    }
  };
  rec(n, n);
  return out;
}

Partition parse_partition(std::string_view text) {
  std::string s(text);
  if (s == "∅") return Partition();
  std::vector<int> parts;
  std::string token;
  auto flush = [&] {
    if (token.empty()) return;
    try {
      std::size_t used = 0;
      const int v = std::stoi(token, &used);
      if (used != token.size()) throw std::invalid_argument(token);
      parts.push_back(v);
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError, "bad partition part '" + token + "'");
    }
    token.clear();
  };
  for (char c : s) {
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '-') {
      token.push_back(c);
    } else if (c == ',' || c == '(' || c == ')' || std::isspace(static_cast<unsigned char>(c))) {
      flush();
    } else {
      throw Error(ErrorCode::ParseError, std::string("unexpected character '") + c + "' in partition");
    }
  }
  flush();
  try {
    return Partition(std::move(parts));
  } catch (const Error& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

std::size_t PartitionHash::operator()(const Partition& p) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (int v : p.parts()) {
    h ^= static_cast<std::size_t>(v);
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace macm
