#pragma once

#include <string>
#include <vector>

#include "macm/rational.hpp"

namespace macm {

/// Outcome of one exact identity, checked over a family of cases.
struct CheckItem {
  std::string name;
  bool passed = true;
  long cases = 0;
  std::string detail;  // first failing case, if any
};

struct SuiteResult {
  std::string suite;
  std::vector<CheckItem> items;
  bool passed() const;
};

/// partitions, qseries, kernel, measures, samplers, tableaux, gl.
const std::vector<std::string>& suite_names();

/// Runs every exact-identity check of a suite. Throws UnknownSuite.
SuiteResult verify(const std::string& suite);

namespace checks {

// partitions
CheckItem conjugation(int max_size);
CheckItem strip_enumeration(int max_size);
// qseries
CheckItem euler_inverse(int degree);
CheckItem pochhammer_certificate();
// kernel
CheckItem pieri_normalization(int max_size, int max_strip);
CheckItem branching_symmetry(int max_size);
// measures
CheckItem pgf_normalization(const Rational& u, const Rational& qf, int max_k, int max_n);
CheckItem gl_closing_example();
CheckItem j_n_properties(int max_n);
CheckItem laurent_expansion(int max_n, int order);
CheckItem plancherel_two_box(const Rational& qf);
// samplers
CheckItem hl_strip_vs_pieri(int max_size, int max_strip);
CheckItem kerov_equivalence(int max_size);
CheckItem kerov_two_steps(const Rational& qf);
CheckItem lattice_out_weights(int max_size);
// tableaux
CheckItem tableau_sums(int max_size, int max_n);
CheckItem tableau_example_ratio();
CheckItem j_vs_kostka(int max_size);
CheckItem maj_pairs(int max_n);
CheckItem rsk_bijection(int max_n);
CheckItem tableau_recurrences(int max_size, int max_n);
// gl
CheckItem gl_class_sums(int max_n, long qf);
CheckItem gl_marginals(int max_n, long qf);
CheckItem gl_normalization(int degree);
CheckItem gl_kung_chain(int max_size);

}  // namespace checks

}  // namespace macm
