#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "macm/kernel.hpp"
#include "macm/measures.hpp"
#include "macm/partition.hpp"
#include "macm/tableaux.hpp"

namespace macm {

/// Seedable 64-bit stream. A source is identified by its seed and spawn path;
/// equal paths give equal sequences.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed);

  /// Independent child stream for replica `index`.
  RandomSource spawn(std::uint64_t index) const;

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform in [0, 1) with 53 bits.
  double uniform();

  const std::vector<std::uint64_t>& path() const { return path_; }

 private:
  explicit RandomSource(std::vector<std::uint64_t> path);

  std::vector<std::uint64_t> path_;
  std::mt19937_64 engine_;
};

/// Inverse-CDF table for a finite law given by exact probabilities. Index i is
/// chosen when a 64-bit uniform U satisfies ceil(F(i-1) 2^64) <= U < ceil(F(i) 2^64).
class CdfTable {
 public:
  CdfTable() = default;
  /// Throws NonPositiveProbability on a negative entry. If the entries sum to less
  /// than one, draws landing past the end return size().
  explicit CdfTable(const std::vector<Rational>& probabilities);

  std::size_t draw(std::uint64_t u) const;
  std::size_t draw(RandomSource& rng) const { return draw(rng.next_u64()); }
  std::size_t size() const { return thresholds_.size(); }

 private:
  std::vector<unsigned __int128> thresholds_;
};

/// Biased coin with exact heads probability p, resolved at 64 bits.
class Coin {
 public:
  Coin() = default;
  explicit Coin(const Rational& heads_probability);
  bool flip(RandomSource& rng) const { return static_cast<unsigned __int128>(rng.next_u64()) < threshold_; }

 private:
  unsigned __int128 threshold_ = 0;
};

struct IntervalEvent {
  int interval = 0;
  std::vector<Cell> boxes;  // in creation order
};

struct GrowthTrace {
  Partition final_shape;
  std::vector<IntervalEvent> events;  // intervals that added at least one box
  int intervals = 0;                  // intervals (or steps) simulated
  std::optional<StandardTableau> tableau;
  Rational truncation_bias = 0;
};

/// Replays the events from the empty partition.
Partition replay(const GrowthTrace& trace);

/// General strip-growth algorithm for a General spec with principal or finite y.
class GeneralSampler {
 public:
  GeneralSampler(GeneralSpec spec, Rational tail_tol = default_tail_tolerance());

  GrowthTrace sample(RandomSource& rng);

  /// Last interval simulated; the sampler's output law is exactly P^M at this M
  /// up to the normalizer error folded into truncation_bias().
  int stop_interval() const { return stop_; }
  const Rational& truncation_bias() const { return bias_; }

 private:
  const CdfTable& strip_table(const Partition& lambda, int k);

  GeneralSpec spec_;
  int stop_ = 0;
  Rational bias_ = 0;
  std::vector<CdfTable> size_tables_;  // per interval
  PieriTable pieri_;
  std::map<std::pair<Partition, int>, CdfTable> strip_tables_;
};

GrowthTrace sample_general(const GeneralSpec& spec, RandomSource& rng, const Rational& tail_tol = default_tail_tolerance());

/// Certified bound on P(some interval after M adds a box) for the general algorithm.
Rational general_tail_bound(const GeneralSpec& spec, int m);

/// Column law of one head in the simplified Hall-Littlewood algorithm: entry s-1 is
/// the probability of column s, for s = 1..λ_1+1. j is the last column grown this interval.
std::vector<Rational> hl_column_probabilities(const Partition& lambda, int j, const Rational& t);

/// Probability that one interval of the simplified algorithm turns λ into Λ, given its strip size.
Rational hl_strip_probability(const Partition& small, const Partition& big, const Rational& t);

class HLSimplifiedSampler {
 public:
  HLSimplifiedSampler(VariableSpec x, Rational t, Rational tail_tol = default_tail_tolerance());
  GrowthTrace sample(RandomSource& rng);
  int stop_interval() const { return stop_; }
  const Rational& truncation_bias() const { return bias_; }

 private:
  const CdfTable& column_table(const Partition& lambda, int j);

  VariableSpec x_;
  Rational t_;
  int stop_ = 0;
  Rational bias_ = 0;
  std::vector<Coin> coins_;
  std::map<std::pair<Partition, int>, CdfTable> tables_;
};

GrowthTrace sample_hl_simplified(const VariableSpec& x, const Rational& t, RandomSource& rng,
                                 const Rational& tail_tol = default_tail_tolerance());

/// Column law of a head of coin N in the Young Tableau Algorithm (columns 1..λ_1+1).
std::vector<Rational> tableau_column_probabilities(const Partition& lambda, int n_coin, const Rational& qf);

class YoungTableauSampler {
 public:
  YoungTableauSampler(Rational u, Rational qf, Rational tail_tol = default_tail_tolerance());
  GrowthTrace sample(RandomSource& rng);
  int stop_interval() const { return stop_; }
  const Rational& truncation_bias() const { return bias_; }

 private:
  const CdfTable& column_table(const Partition& lambda, int n_coin);

  Rational u_;
  Rational qf_;
  int stop_ = 0;
  Rational bias_ = 0;
  std::vector<Coin> coins_;
  std::map<std::pair<Partition, int>, CdfTable> tables_;
};

GrowthTrace sample_young_tableau_alg(const Rational& u, const Rational& qf, RandomSource& rng,
                                     const Rational& tail_tol = default_tail_tolerance());

enum class WeightVariant {
  Unsigned,
  UnitarySelfDual,  // (u, q) -> (-u, -q)
  UnitaryPaired,    // (u, q) -> (u^2, q^2)
};

/// m_{λ,Λ} for Λ = λ plus a box in column col (zero if that is not a partition).
Rational lattice_weight(const Partition& lambda, int col, const Rational& u, const Rational& qf);
/// Total outgoing weight from λ.
Rational lattice_out_weight(const Partition& lambda, const Rational& u, const Rational& qf);
/// Product of edge weights along the lattice path of T.
Rational weight_of_path(const StandardTableau& t, const Rational& u, const Rational& qf,
                        WeightVariant variant = WeightVariant::Unsigned);

class LatticeWeightSampler {
 public:
  LatticeWeightSampler(Rational u, Rational qf, bool is_signed = false);
  GrowthTrace sample(RandomSource& rng);

 private:
  // Column choices (0 = halt) and their law.
  const std::pair<std::vector<int>, CdfTable>& table(const Partition& lambda);

  Rational u_;
  Rational qf_;
  std::map<Partition, std::pair<std::vector<int>, CdfTable>> tables_;
};

GrowthTrace sample_lattice_weights(const Rational& u, const Rational& qf, bool is_signed, RandomSource& rng);

/// Kerov's one-box transition q^{n(Λ)} Π_{λ}[h] / (q^{n(λ)} Π_{Λ}[h]) at parameter q.
Rational kerov_transition(const Partition& small, const Partition& big, const Rational& q);

class KerovSampler {
 public:
  KerovSampler(Rational qf, int steps);
  GrowthTrace sample(RandomSource& rng);

 private:
  const std::pair<std::vector<int>, CdfTable>& table(const Partition& lambda);

  Rational qf_;
  int steps_;
  std::map<Partition, std::pair<std::vector<int>, CdfTable>> tables_;
};

GrowthTrace sample_kerov_walk(const Rational& qf, int steps, RandomSource& rng);

}  // namespace macm
