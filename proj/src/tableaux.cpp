#include "macm/tableaux.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "macm/error.hpp"

namespace macm {

namespace {

Partition shape_of_rows(const std::vector<std::vector<int>>& rows) {
  std::vector<int> parts;
  for (const auto& r : rows) {
    if (r.empty()) throw Error(ErrorCode::InvalidDatum, "tableau rows must be non-empty");
    parts.push_back(static_cast<int>(r.size()));
  }
  for (std::size_t i = 1; i < parts.size(); ++i)
    if (parts[i] > parts[i - 1]) throw Error(ErrorCode::InvalidDatum, "tableau row lengths must weakly decrease");
  return Partition(std::move(parts));
}

}  // namespace

StandardTableau::StandardTableau(std::vector<std::vector<int>> rows) : rows_(std::move(rows)) {
  shape_ = shape_of_rows(rows_);
  const int n = shape_.size();
  std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    for (std::size_t j = 0; j < rows_[i].size(); ++j) {
      const int v = rows_[i][j];
      if (v < 1 || v > n || seen[static_cast<std::size_t>(v)])
        throw Error(ErrorCode::InvalidDatum, "tableau entries must be 1..n, each once");
      seen[static_cast<std::size_t>(v)] = true;
      if (j > 0 && rows_[i][j - 1] >= v) throw Error(ErrorCode::InvalidDatum, "tableau rows must increase");
      if (i > 0 && rows_[i - 1][j] >= v) throw Error(ErrorCode::InvalidDatum, "tableau columns must increase");
    }
  }
}

StandardTableau StandardTableau::from_column_sequence(const std::vector<int>& col_sequence) {
  std::vector<std::vector<int>> rows;
  std::vector<int> col_len;
  int k = 0;
  for (int c : col_sequence) {
    ++k;
    if (c < 1) throw Error(ErrorCode::InvalidDatum, "column index must be positive");
    if (static_cast<std::size_t>(c) > col_len.size()) col_len.resize(static_cast<std::size_t>(c), 0);
    const int row = col_len[static_cast<std::size_t>(c - 1)] + 1;
    if (c > 1 && col_len[static_cast<std::size_t>(c - 2)] < row)
      throw Error(ErrorCode::InvalidDatum, "column sequence leaves the Young lattice");
    col_len[static_cast<std::size_t>(c - 1)] = row;
    if (static_cast<std::size_t>(row) > rows.size()) rows.emplace_back();
    rows[static_cast<std::size_t>(row - 1)].push_back(k);
  }
  return StandardTableau(std::move(rows));
}

int StandardTableau::entry(Cell s) const {
  if (!shape_.contains(s)) throw Error(ErrorCode::CellOutsideShape, "cell not in tableau");
  return rows_[static_cast<std::size_t>(s.row - 1)][static_cast<std::size_t>(s.col - 1)];
}

Cell StandardTableau::position(int k) const {
  for (std::size_t i = 0; i < rows_.size(); ++i)
    for (std::size_t j = 0; j < rows_[i].size(); ++j)
      if (rows_[i][j] == k) return {static_cast<int>(i) + 1, static_cast<int>(j) + 1};
  throw Error(ErrorCode::DomainError, "entry not in tableau");
}

std::vector<int> StandardTableau::column_sequence() const {
  std::vector<int> cols(static_cast<std::size_t>(size()));
  for (const auto& r : rows_)
    for (std::size_t j = 0; j < r.size(); ++j) cols[static_cast<std::size_t>(r[j] - 1)] = static_cast<int>(j) + 1;
  return cols;
}

std::string StandardTableau::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (i) out += "\n";
    for (std::size_t j = 0; j < rows_[i].size(); ++j) {
      if (j) out += " ";
      out += std::to_string(rows_[i][j]);
    }
  }
  return out;
}

StandardTableau parse_tableau(std::string_view text) {
  std::vector<std::vector<int>> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::vector<int> row;
    std::string tok;
    while (ls >> tok) {
      try {
        std::size_t used = 0;
        row.push_back(std::stoi(tok, &used));
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw Error(ErrorCode::ParseError, "bad tableau entry '" + tok + "'");
      }
    }
    if (!row.empty()) rows.push_back(std::move(row));
  }
  return StandardTableau(std::move(rows));
}

Permutation::Permutation(std::vector<int> one_line) : values_(std::move(one_line)) {
  std::vector<bool> seen(values_.size() + 1, false);
  for (int v : values_) {
    if (v < 1 || v > static_cast<int>(values_.size()) || seen[static_cast<std::size_t>(v)])
      throw Error(ErrorCode::InvalidDatum, "not a permutation");
    seen[static_cast<std::size_t>(v)] = true;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 1);
  return Permutation(std::move(v));
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(values_.size());
  for (std::size_t i = 0; i < values_.size(); ++i) inv[static_cast<std::size_t>(values_[i] - 1)] = static_cast<int>(i) + 1;
  return Permutation(std::move(inv));
}

Integer syt_count(const Partition& lambda) {
  Integer num = 1;
  for (int i = 2; i <= lambda.size(); ++i) num *= i;
  Integer den = 1;
  for (const auto& c : cells(lambda)) den *= cell_stats(lambda, c).hook;
  return num / den;
}

namespace {

void grow_syt(const Partition& target, std::vector<std::vector<int>>& rows, int next, std::vector<StandardTableau>& out) {
  if (next > target.size()) {
    out.emplace_back(rows);
    return;
  }
  // Place `next` at the end of each row that can accept it, top row first.
  for (int i = 1; i <= target.length(); ++i) {
    auto& row = rows[static_cast<std::size_t>(i - 1)];
    const int len = static_cast<int>(row.size());
    if (len >= target.part(i)) continue;
    if (i > 1 && static_cast<int>(rows[static_cast<std::size_t>(i - 2)].size()) <= len) continue;
    row.push_back(next);
    grow_syt(target, rows, next + 1, out);
    row.pop_back();
  }
}

}  // namespace

std::vector<StandardTableau> enumerate_syt(const Partition& lambda, int cap) {
  if (lambda.size() > cap)
    throw Error(ErrorCode::CapExceeded, "SYT enumeration capped at size " + std::to_string(cap));
  std::vector<StandardTableau> out;
  std::vector<std::vector<int>> rows(static_cast<std::size_t>(lambda.length()));
  grow_syt(lambda, rows, 1, out);
  std::sort(out.begin(), out.end());
  if (Integer(static_cast<unsigned long>(out.size())) != syt_count(lambda))
    throw Error(ErrorCode::DomainError, "SYT enumeration disagrees with the hook-length formula");
  return out;
}

std::map<Cell, ABStat> tableau_ab_stats(const StandardTableau& t) {
  std::map<Cell, ABStat> out;
  const Partition& lam = t.shape();
  for (const auto& c : cells(lam)) {
    if (c.col < 2) continue;
    const int v = t.entry(c);
    ABStat st;
    // Columns increase downward, so the counts are prefix lengths.
    for (int i = 1; i <= lam.column_length(c.col - 1) && t.entry({i, c.col - 1}) < v; ++i) ++st.a;
    for (int i = 1; i <= lam.column_length(1) && t.entry({i, 1}) < v; ++i) ++st.b;
    out[c] = st;
  }
  return out;
}

Rational gl_order_rational(int m, const Rational& qf) {
  Rational out = pow(qf, static_cast<long>(m) * (m - 1) / 2);
  for (int i = 1; i <= m; ++i) out *= pow(qf, i) - 1;
  return out;
}

Rational tableau_pmf_truncated(const StandardTableau& t, const Rational& u, const Rational& qf, int n_coins) {
  const Partition& lam = t.shape();
  const int l1 = lam.length();
  if (l1 > n_coins) return 0;
  Rational out = pow(u, lam.size()) / gl_order_rational(l1, qf);
  for (int r = 1; r <= n_coins; ++r) out *= (1 - u / pow(qf, r)) * (1 - 1 / pow(qf, r));
  for (int r = 1; r <= n_coins - l1; ++r) out /= 1 - 1 / pow(qf, r);
  for (const auto& [c, st] : tableau_ab_stats(t)) out *= (pow(qf, 1 - c.row) - pow(qf, -st.a)) / (pow(qf, st.b) - 1);
  return out;
}

int major_index(const Permutation& pi) {
  int m = 0;
  for (int i = 1; i < pi.size(); ++i)
    if (pi(i) > pi(i + 1)) m += i;
  return m;
}

int major_index(const StandardTableau& t) {
  int m = 0;
  for (int i = 1; i < t.size(); ++i)
    if (t.position(i + 1).row > t.position(i).row) m += i;
  return m;
}

IntPoly kostka_foulkes(const Partition& lambda) {
  IntPoly den = IntPoly::constant(1);
  for (const auto& c : cells(lambda)) den *= IntPoly::q_integer(static_cast<std::size_t>(cell_stats(lambda, c).hook));
  IntPoly num = IntPoly::q_factorial(static_cast<std::size_t>(lambda.size()));
  return IntPoly::monomial(static_cast<std::size_t>(n_stat(lambda))) * num.exact_divide(den);
}

IntPoly maj_generating_function(const Partition& lambda) {
  IntPoly out;
  for (const auto& t : enumerate_syt(lambda)) out += IntPoly::monomial(static_cast<std::size_t>(major_index(t)));
  return out;
}

std::pair<StandardTableau, StandardTableau> rsk(const Permutation& pi) {
  std::vector<std::vector<int>> p, q;
  for (int i = 1; i <= pi.size(); ++i) {
    int x = pi(i);
    std::size_t r = 0;
    for (;; ++r) {
      if (r == p.size()) {
        p.push_back({x});
        q.push_back({i});
        break;
      }
      auto& row = p[r];
      auto it = std::upper_bound(row.begin(), row.end(), x);
      if (it == row.end()) {
        row.push_back(x);
        q[r].push_back(i);
        break;
      }
      std::swap(*it, x);
    }
  }
  return {StandardTableau(std::move(p)), StandardTableau(std::move(q))};
}

std::vector<Permutation> all_permutations(int n) {
  std::vector<int> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 1);
  std::vector<Permutation> out;
  do {
    out.emplace_back(v);
  } while (std::next_permutation(v.begin(), v.end()));
  return out;
}

}  // namespace macm
