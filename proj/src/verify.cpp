#include "macm/verify.hpp"

#include <algorithm>
#include <functional>

#include "macm/error.hpp"
#include "macm/gl_verify.hpp"
#include "macm/kernel.hpp"
#include "macm/measures.hpp"
#include "macm/samplers.hpp"
#include "macm/tableaux.hpp"

namespace macm {

namespace {

// Accumulates cases of one identity and keeps the first failure.
class Check {
 public:
  explicit Check(std::string name) { item_.name = std::move(name); }

  void expect(bool ok, const std::function<std::string()>& what) {
    ++item_.cases;
    if (!ok && item_.passed) {
      item_.passed = false;
      item_.detail = what();
    }
  }
  CheckItem done() { return std::move(item_); }

 private:
  CheckItem item_;
};

std::vector<Partition> all_up_to(int n) {
  std::vector<Partition> out;
  for (int k = 0; k <= n; ++k)
    for (auto& p : partitions_of(k)) out.push_back(p);
  return out;
}

Integer factorial(int n) {
  Integer f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

Integer binomial(long n, long k) {
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return out;
}

std::string rat(const Rational& r) { return to_string(r); }

const std::vector<std::pair<Rational, Rational>>& named_params() {
  static const std::vector<std::pair<Rational, Rational>> p{{Rational(1, 2), 2}, {Rational(1, 3), 3}};
  return p;
}

}  // namespace

bool SuiteResult::passed() const {
  return std::all_of(items.begin(), items.end(), [](const CheckItem& i) { return i.passed; });
}

namespace checks {

CheckItem conjugation(int max_size) {
  Check c("conjugation is an involution and n(λ) agrees by rows and columns");
  for (const auto& lam : all_up_to(max_size)) {
    c.expect(conjugate(conjugate(lam)) == lam, [&] { return lam.to_string(); });
    c.expect(n_stat(lam) == n_stat_by_columns(lam), [&] { return lam.to_string(); });
    c.expect(conjugate(lam).size() == lam.size(), [&] { return lam.to_string(); });
  }
  return c.done();
}

CheckItem strip_enumeration(int max_size) {
  Check c("horizontal-strip extensions and removals are mutually inverse");
  for (const auto& lam : all_up_to(max_size)) {
    for (int k = 0; k <= 3; ++k)
      for (const auto& big : horizontal_strip_extensions(lam, k)) {
        c.expect(is_horizontal_strip(big, lam) && big.size() == lam.size() + k,
                 [&] { return big.to_string() + "/" + lam.to_string(); });
        const auto back = horizontal_strip_removals(big);
        c.expect(std::find(back.begin(), back.end(), lam) != back.end(),
                 [&] { return big.to_string() + "/" + lam.to_string(); });
      }
  }
  return c.done();
}

CheckItem euler_inverse(int degree) {
  Check c("Euler products: forward times inverse is 1");
  for (const Rational& q : {Rational(2), Rational(3), Rational(5, 2)}) {
    const auto d = static_cast<std::size_t>(degree);
    c.expect(euler_series(d, q, false) * euler_series(d, q, true) == USeries::one(d), [&] { return "q=" + rat(q); });
    c.expect(euler_series(d, q, true) == euler_series(d, q, false).inverse(), [&] { return "q=" + rat(q); });
  }
  return c.done();
}

CheckItem pochhammer_certificate() {
  Check c("(x;q)_∞ truncations stay within their certified tail");
  for (const Rational& q : {Rational(1, 2), Rational(1, 3), Rational(9, 10)})
    for (const Rational& x : {Rational(1, 2), Rational(-1, 3), Rational(1, 7)}) {
      const Rational tol = pow(Rational(1, 2), 30);
      const ExactProb coarse = pochhammer_infinite(x, q, tol);
      const ExactProb fine = pochhammer_infinite(x, q, tol * tol);
      c.expect(coarse.tail_bound <= tol && abs(coarse.value - fine.value) <= coarse.tail_bound + fine.tail_bound,
               [&] { return "x=" + rat(x) + " q=" + rat(q); });
    }
  return c.done();
}

CheckItem pieri_normalization(int max_size, int max_strip) {
  Check c("Pieri transitions from λ by a strip of size r sum to 1");
  const std::vector<QTParams> params{{Rational(1, 2), Rational(1, 3)}, {0, Rational(1, 2)}, {Rational(1, 3), Rational(1, 3)}};
  for (const auto& p : params) {
    const auto y = VariableSpec::geometric(1, p.t);
    for (const auto& lam : all_up_to(max_size))
      for (int r = 1; r <= max_strip; ++r) {
        Rational total = 0;
        for (const auto& big : horizontal_strip_extensions(lam, r)) {
          const Rational pr = pieri_transition(lam, big, y, p);
          c.expect(pr >= 0, [&] { return big.to_string() + "/" + lam.to_string(); });
          total += pr;
        }
        c.expect(total == 1, [&] { return lam.to_string() + " r=" + std::to_string(r) + " q=" + rat(p.q) + " t=" + rat(p.t); });
      }
  }
  return c.done();
}

CheckItem branching_symmetry(int max_size) {
  Check c("P_λ by branching is symmetric and matches the principal closed form");
  const QTParams p{Rational(1, 2), Rational(1, 3)};
  const std::vector<Rational> xs{Rational(1, 2), Rational(1, 5), Rational(2, 7)};
  std::vector<Rational> rev(xs.rbegin(), xs.rend());
  std::vector<Rational> principal{1, p.t, p.t * p.t};
  for (const auto& lam : all_up_to(max_size)) {
    c.expect(macdonald_eval_finite(lam, xs, p) == macdonald_eval_finite(lam, rev, p), [&] { return lam.to_string(); });
    c.expect(macdonald_eval_finite(lam, principal, p) == principal_specialization(lam, 3, p), [&] { return lam.to_string(); });
  }
  return c.done();
}

CheckItem pgf_normalization(const Rational& u, const Rational& qf, int max_k, int max_n) {
  Check c("Σ_{|λ|=k} pmf_truncated equals [z^k] of the size PGF");
  const MeasureSpec spec = HallLittlewoodGL{u, qf};
  for (int n = 0; n <= max_n; ++n) {
    const USeries pgf = size_pgf(spec, n, static_cast<std::size_t>(max_k));
    for (int k = 0; k <= max_k; ++k) {
      Rational total = 0;
      bool exact = true;
      for (const auto& lam : partitions_of(k, n)) {
        const ExactProb pr = pmf_truncated(spec, n, lam);
        exact = exact && pr.is_exact();
        total += pr.value;
      }
      c.expect(exact && total == pgf[static_cast<std::size_t>(k)],
               [&] { return "N=" + std::to_string(n) + " k=" + std::to_string(k); });
    }
  }
  return c.done();
}

CheckItem gl_closing_example() {
  Check c("P^4(2,1,1) for the GL measure at u=1/2, qf=2 equals the displayed product");
  const Rational u(1, 2), q = 2;
  Rational expect = pow(u, 4);
  for (int i = 1; i <= 4; ++i) expect *= 1 - u / pow(q, i);
  expect *= (1 - 1 / pow(q, 3)) * (1 - 1 / pow(q, 4));
  expect /= pow(q, 10) * (1 - 1 / q) * (1 - 1 / q);
  const ExactProb got = pmf_truncated(HallLittlewoodGL{u, q}, 4, Partition{2, 1, 1});
  c.expect(got.is_exact() && got.value == expect, [&] { return rat(got.value) + " vs " + rat(expect); });
  return c.done();
}

CheckItem j_n_properties(int max_n) {
  Check c("J_n(1) = n!, deg J_n = n(n-1), J_n palindromic");
  for (int n = 1; n <= max_n; ++n) {
    const IntPoly jn = j_n(n);
    const auto top = static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1);
    c.expect(jn.evaluate(1) == Rational(factorial(n)), [&] { return "n=" + std::to_string(n); });
    c.expect(jn.degree() == static_cast<long>(top), [&] { return "n=" + std::to_string(n); });
    c.expect(jn.reversed(top) == jn, [&] { return "n=" + std::to_string(n); });
  }
  return c.done();
}

CheckItem laurent_expansion(int max_n, int order) {
  Check c("s^{n^2} J_n(1/s) / Π(1-s^i)^2 = [u^n] Π_m (1 - u s^m)^{-m} through s^L");
  const auto L = static_cast<std::size_t>(order);
  for (int n = 1; n <= max_n; ++n) {
    const auto nn = static_cast<std::size_t>(n);
    // rhs[k][j]: coefficient of u^k s^j.
    std::vector<std::vector<Integer>> rhs(nn + 1, std::vector<Integer>(L + 1, Integer(0)));
    rhs[0][0] = 1;
    for (std::size_t m = 1; m <= L; ++m) {
      std::vector<std::vector<Integer>> next(nn + 1, std::vector<Integer>(L + 1, Integer(0)));
      for (std::size_t i = 0; i <= nn; ++i)
        for (std::size_t j = 0; j <= L; ++j) {
          if (rhs[i][j] == 0) continue;
          for (std::size_t k = 0; i + k <= nn && j + m * k <= L; ++k)
            next[i + k][j + m * k] += rhs[i][j] * binomial(static_cast<long>(m + k - 1), static_cast<long>(k));
        }
      rhs = std::move(next);
    }
    std::vector<Integer> lhs(L + 1, Integer(0));
    const IntPoly jn = j_n(n);
    for (std::size_t k = 0; k < jn.coefficients().size(); ++k) {
      const long e = static_cast<long>(n) * n - static_cast<long>(k);
      if (e >= 0 && e <= order) lhs[static_cast<std::size_t>(e)] += jn.coefficients()[k];
    }
    for (std::size_t i = 1; i <= nn; ++i)
      for (int rep = 0; rep < 2; ++rep)
        for (std::size_t j = i; j <= L; ++j) lhs[j] += lhs[j - i];
    c.expect(lhs == rhs[nn], [&] { return "n=" + std::to_string(n); });
  }
  return c.done();
}

CheckItem plancherel_two_box(const Rational& qf) {
  Check c("q-Plancherel conditional mass of (2) is q^2/(q^2+1)");
  const Rational got = plancherel_conditional(Partition{2}).evaluate(qf);
  c.expect(got == qf * qf / (qf * qf + 1), [&] { return rat(got); });
  return c.done();
}

CheckItem hl_strip_vs_pieri(int max_size, int max_strip) {
  Check c("simplified HL strip law equals the q = 0 Pieri step");
  for (const Rational& t : {Rational(1, 2), Rational(1, 3)}) {
    const auto y = VariableSpec::geometric(1, t);
    for (const auto& lam : all_up_to(max_size))
      for (int k = 1; k <= max_strip; ++k)
        for (const auto& big : horizontal_strip_extensions(lam, k))
          c.expect(hl_strip_probability(lam, big, t) == pieri_transition(lam, big, y, QTParams{0, t}),
                   [&] { return big.to_string() + "/" + lam.to_string() + " t=" + rat(t); });
  }
  return c.done();
}

CheckItem kerov_equivalence(int max_size) {
  Check c("one-box Pieri step at q = t = 1/qf equals the Kerov walk (conjugate shapes at qf); covers sum to 1");
  for (const Rational& qf : {Rational(2), Rational(3)}) {
    const Rational t = 1 / qf;
    const auto y = VariableSpec::geometric(1, t);
    for (const auto& lam : all_up_to(max_size)) {
      Rational total = 0;
      for (const auto& cv : covers(lam)) {
        const Rational pieri = pieri_transition(lam, cv.shape, y, QTParams{t, t});
        c.expect(pieri == kerov_transition(conjugate(lam), conjugate(cv.shape), qf) &&
                     pieri == kerov_transition(lam, cv.shape, t),
                 [&] { return cv.shape.to_string() + "/" + lam.to_string() + " qf=" + rat(qf); });
        total += kerov_transition(lam, cv.shape, qf);
      }
      c.expect(total == 1, [&] { return lam.to_string() + " qf=" + rat(qf); });
    }
  }
  return c.done();
}

CheckItem kerov_two_steps(const Rational& qf) {
  Check c("Kerov walk mass of (2) after two steps is 1/(q+1)");
  const Rational got = kerov_transition(Partition{}, Partition{1}, qf) * kerov_transition(Partition{1}, Partition{2}, qf);
  c.expect(got == 1 / (qf + 1), [&] { return rat(got); });
  return c.done();
}

CheckItem lattice_out_weights(int max_size) {
  Check c("total lattice weight out of λ is uq/(q^{λ'_1+1}-1), and u/(q-1) from ∅");
  for (const auto& [u, q] : named_params())
    for (const auto& lam : all_up_to(max_size)) {
      const Rational expect = lam.empty() ? Rational(u / (q - 1)) : Rational(u * q / (pow(q, lam.column_length(1) + 1) - 1));
      c.expect(lattice_out_weight(lam, u, q) == expect, [&] { return lam.to_string(); });
    }
  return c.done();
}

CheckItem tableau_sums(int max_size, int max_n) {
  Check c("Σ over SYT of shape λ of the tableau law equals P^N(λ)");
  for (const auto& [u, q] : named_params())
    for (int n = 0; n <= max_n; ++n)
      for (const auto& lam : all_up_to(max_size)) {
        Rational total = 0;
        for (const auto& t : enumerate_syt(lam)) total += tableau_pmf_truncated(t, u, q, n);
        c.expect(total == pmf_truncated(HallLittlewoodGL{u, q}, n, lam).value,
                 [&] { return lam.to_string() + " N=" + std::to_string(n); });
      }
  return c.done();
}

CheckItem tableau_example_ratio() {
  Check c("the three SYT of shape (2,1,1) have masses in ratio q^2 : q : 1");
  for (const auto& [u, q] : named_params()) {
    std::vector<Rational> m;
    for (const auto& t : enumerate_syt(Partition{2, 1, 1})) m.push_back(tableau_pmf_truncated(t, u, q, 4));
    std::sort(m.begin(), m.end());
    c.expect(m.size() == 3 && m[2] == q * q * m[0] && m[1] == q * m[0], [&] { return "q=" + rat(q); });
  }
  return c.done();
}

CheckItem j_vs_kostka(int max_size) {
  Check c("J_λ = K_{λ'}^2 with K by the hook formula and by the maj sum");
  for (const auto& lam : all_up_to(max_size)) {
    const Partition conj = conjugate(lam);
    const IntPoly hook = kostka_foulkes(conj);
    const IntPoly maj = maj_generating_function(conj);
    c.expect(hook == maj, [&] { return lam.to_string(); });
    c.expect(j_lambda(lam) == hook * hook, [&] { return lam.to_string(); });
  }
  return c.done();
}

CheckItem maj_pairs(int max_n) {
  Check c("Σ_{shape(π)=λ'} q^{maj(π)+maj(π^{-1})} = J_λ(q) over all of S_n");
  for (int n = 1; n <= max_n; ++n) {
    std::map<Partition, std::vector<Integer>> sums;
    for (const auto& pi : all_permutations(n)) {
      const Partition shape = rsk(pi).first.shape();
      auto& v = sums[shape];
      const auto e = static_cast<std::size_t>(major_index(pi) + major_index(pi.inverse()));
      if (v.size() <= e) v.resize(e + 1, Integer(0));
      v[e] += 1;
    }
    for (const auto& lam : partitions_of(n)) {
      const auto it = sums.find(conjugate(lam));
      const IntPoly got = it == sums.end() ? IntPoly() : IntPoly(it->second);
      c.expect(got == j_lambda(lam), [&] { return lam.to_string(); });
    }
  }
  return c.done();
}

CheckItem rsk_bijection(int max_n) {
  Check c("RSK is a bijection onto pairs of SYT of equal shape");
  for (int n = 1; n <= max_n; ++n) {
    std::map<std::pair<StandardTableau, StandardTableau>, int> seen;
    for (const auto& pi : all_permutations(n)) {
      const auto pq = rsk(pi);
      c.expect(pq.first.shape() == pq.second.shape(), [&] { return "n=" + std::to_string(n); });
      const auto inv = rsk(pi.inverse());
      c.expect(inv.first == pq.second && inv.second == pq.first, [&] { return "inverse swap n=" + std::to_string(n); });
      ++seen[pq];
    }
    Integer pairs = 0;
    for (const auto& lam : partitions_of(n)) pairs += syt_count(lam) * syt_count(lam);
    c.expect(Integer(static_cast<long>(seen.size())) == pairs && pairs == factorial(n), [&] { return "n=" + std::to_string(n); });
  }
  return c.done();
}

CheckItem tableau_recurrences(int max_size, int max_n) {
  Check c("Young Tableau Algorithm recurrences, shape and tableau level, columns 1 and s > 1");
  for (const auto& [u, q] : named_params())
    for (int n = 1; n <= max_n; ++n) {
      const Rational heads = u / pow(q, n), den = pow(q, n) - 1;
      auto coeff = [&](const Partition& lam, int s) -> Rational {
        if (s == 1) return (pow(q, n - lam.column_length(1) + 1) - 1) / den;
        return (pow(q, n - lam.column_length(s) + 1) - pow(q, n - lam.column_length(s - 1))) / den;
      };
      auto shape_law = [&](int m, const Partition& lam) { return hl_gl_pmf_truncated(u, q, m, lam); };
      for (const auto& lam : all_up_to(max_size)) {
        Rational rhs = (1 - heads) * shape_law(n - 1, lam);
        for (int s = 1; s <= lam.part(1); ++s)
          if (auto smaller = remove_from_column(lam, s)) rhs += heads * coeff(lam, s) * shape_law(n, *smaller);
        c.expect(shape_law(n, lam) == rhs, [&] { return lam.to_string() + " N=" + std::to_string(n); });
        if (lam.empty() || lam.length() > n) continue;
        for (const auto& t : enumerate_syt(lam)) {
          auto cols = t.column_sequence();
          const int s = cols.back();
          cols.pop_back();
          const auto smaller = StandardTableau::from_column_sequence(cols);
          const Rational trhs = (1 - heads) * tableau_pmf_truncated(t, u, q, n - 1) +
                                heads * coeff(lam, s) * tableau_pmf_truncated(smaller, u, q, n);
          c.expect(tableau_pmf_truncated(t, u, q, n) == trhs, [&] { return t.to_string() + " N=" + std::to_string(n); });
        }
      }
    }
  return c.done();
}

CheckItem gl_class_sums(int max_n, long qf) {
  Check c("class sizes are positive and sum to |GL(n, q)|");
  for (int n = 0; n <= max_n; ++n) {
    Integer total = 0;
    for (const auto& e : enumerate_classes(n, qf)) {
      c.expect(e.size > 0, [&] { return e.datum.to_string(); });
      total += e.size;
    }
    c.expect(total == gl_order(n, qf), [&] { return "n=" + std::to_string(n) + " q=" + std::to_string(qf); });
  }
  return c.done();
}

CheckItem gl_marginals(int max_n, long qf) {
  Check c("degree-1 slot marginals of GL(n, q) match the Hall-Littlewood u-series");
  for (const auto& lam : all_up_to(max_n)) {
    const auto r = marginal_vs_measure(lam, 1, qf, max_n);
    c.expect(r.all_match(), [&] { return lam.to_string(); });
  }
  return c.done();
}

CheckItem gl_normalization(int degree) {
  Check c("Π_{φ≠z} Π_r (1 - u^{deg φ}/q^{r deg φ}) = 1 - u");
  for (long q : {2L, 3L}) {
    USeries expect = USeries::one(static_cast<std::size_t>(degree));
    expect[1] = -1;
    c.expect(class_normalization_series(q, static_cast<std::size_t>(degree)) == expect, [&] { return "q=" + std::to_string(q); });
  }
  return c.done();
}

CheckItem gl_kung_chain(int max_size) {
  Check c("Kung's factor equals its expanded and principal-specialization forms");
  for (long q : {2L, 3L})
    for (int m : {1, 2})
      for (const auto& lam : all_up_to(max_size)) {
        const auto k = kung_chain(lam, m, q);
        c.expect(k.product == k.expanded && k.product == k.via_principal, [&] { return lam.to_string(); });
      }
  return c.done();
}

}  // namespace checks

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"partitions", "qseries", "kernel", "measures", "samplers", "tableaux", "gl"};
  return names;
}

SuiteResult verify(const std::string& suite) {
  using namespace checks;
  SuiteResult r{suite, {}};
  if (suite == "partitions") {
    r.items = {conjugation(10), strip_enumeration(8)};
  } else if (suite == "qseries") {
    r.items = {euler_inverse(12), pochhammer_certificate()};
  } else if (suite == "kernel") {
    r.items = {pieri_normalization(6, 3), branching_symmetry(5)};
  } else if (suite == "measures") {
    r.items = {pgf_normalization(Rational(1, 2), 2, 8, 4), gl_closing_example(), j_n_properties(8),
               laurent_expansion(5, 20), plancherel_two_box(2)};
  } else if (suite == "samplers") {
    r.items = {hl_strip_vs_pieri(6, 3), kerov_equivalence(8), kerov_two_steps(2), lattice_out_weights(7)};
  } else if (suite == "tableaux") {
    r.items = {tableau_sums(7, 6), tableau_example_ratio(), j_vs_kostka(8), maj_pairs(6), rsk_bijection(6),
               tableau_recurrences(6, 6)};
  } else if (suite == "gl") {
    r.items = {gl_class_sums(4, 2), gl_class_sums(3, 3), gl_marginals(4, 2), gl_normalization(8), gl_kung_chain(6)};
  } else {
    throw Error(ErrorCode::UnknownSuite, "unknown suite '" + suite + "'");
  }
  return r;
}

}  // namespace macm
