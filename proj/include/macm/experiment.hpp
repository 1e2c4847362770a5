#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "macm/measures.hpp"
#include "macm/samplers.hpp"

namespace macm {

enum class SamplerKind { General, HLSimplified, YoungTableau, LatticeWeights, Kerov };

std::string to_string(SamplerKind kind);
/// Accepts general, hl_simplified, young_tableau, lattice_weights, kerov. Throws ConfigError.
SamplerKind parse_sampler_kind(const std::string& name);

struct ExperimentConfig {
  MeasureSpec spec = HallLittlewoodGL{Rational(1, 2), 2};
  SamplerKind sampler = SamplerKind::YoungTableau;
  std::size_t n_samples = 10000;
  std::uint64_t seed = 1;
  Rational tail_tol = default_tail_tolerance();
  int max_tracked_size = 12;
  int kerov_steps = 0;   // kerov only
  unsigned threads = 0;  // 0: hardware concurrency
  std::string format = "json";
  std::string out_path;  // empty: stdout
};

/// A ready sampler together with the law its output follows exactly.
struct SamplerHandle {
  std::function<GrowthTrace(RandomSource&)> draw;
  int stop_interval = 0;  // intervals or steps simulated
  Rational truncation_bias = 0;
};

/// Builds the sampler described by cfg. Throws ConfigError when the sampler does not fit the spec.
SamplerHandle make_sampler(const ExperimentConfig& cfg);

/// Exact law of the sampler's final shape on |λ| <= max_size. Entries carry a certified tail.
std::map<Partition, ExactProb> exact_law(const ExperimentConfig& cfg, int stop_interval, int max_size);

struct ComparisonRow {
  Partition shape;
  std::size_t count = 0;
  double empirical = 0;
  ExactProb exact;
  double contribution = 0;  // |empirical - exact| / 2
};

struct ComparisonReport {
  std::string sampler;
  std::string spec;
  std::size_t n_samples = 0;
  std::uint64_t seed = 0;
  int stop_interval = 0;
  int max_tracked_size = 0;
  std::vector<ComparisonRow> rows;  // tracked support, by size then shape
  std::size_t untracked_count = 0;
  Rational untracked_mass = 0;      // exact mass off the tracked support
  Rational exact_tail_bound = 0;    // Σ of the per-shape certified tails
  std::optional<double> tv;         // undefined for an empty run
  Rational truncation_bias = 0;
  std::optional<double> chi_square;
  int degrees_of_freedom = 0;
  std::optional<double> p_value;
};

struct Tally {
  std::map<Partition, std::size_t> counts;  // |λ| <= max_tracked_size
  std::size_t untracked = 0;
};

/// Draws cfg.n_samples shapes. Replica i always uses RandomSource(seed).spawn(i), so the
/// tally does not depend on the thread count.
Tally tabulate(const ExperimentConfig& cfg);

/// Chi-square statistic with cells pooled (smallest expected first) until every
/// expected count is at least 5; the pooled cell always holds the untracked mass.
struct ChiSquare {
  double statistic = 0;
  int dof = 0;
  double p_value = 1;
};
std::optional<ChiSquare> pooled_chi_square(const std::vector<double>& observed, const std::vector<double>& expected,
                                           double observed_rest, double expected_rest);

/// Draws, tabulates, and compares against the exact law. Throws ConfigError.
ComparisonReport run_experiment(const ExperimentConfig& cfg);

}  // namespace macm
