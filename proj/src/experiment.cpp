#include "macm/experiment.hpp"

#include <algorithm>
#include <memory>
#include <numeric>
#include <thread>

#include <boost/math/distributions/chi_squared.hpp>

#include "macm/error.hpp"

namespace macm {

namespace {

[[noreturn]] void config_error(const std::string& msg) { throw Error(ErrorCode::ConfigError, msg); }

const HallLittlewoodGL& need_hl(const ExperimentConfig& cfg) {
  const auto* hl = std::get_if<HallLittlewoodGL>(&cfg.spec);
  if (!hl) config_error(to_string(cfg.sampler) + " sampler needs the hall-littlewood-gl spec");
  return *hl;
}

// (x, t) for the simplified Hall-Littlewood algorithm.
std::pair<VariableSpec, Rational> hl_inputs(const ExperimentConfig& cfg) {
  if (std::holds_alternative<HallLittlewoodGL>(cfg.spec)) {
    const GeneralSpec g = to_general(cfg.spec);
    return {g.x, g.p.t};
  }
  const auto* g = std::get_if<GeneralSpec>(&cfg.spec);
  const auto* y = g ? g->y.as_geometric() : nullptr;
  if (!g || g->p.q != 0 || !y || y->first != 1 || y->ratio != g->p.t)
    config_error("hl_simplified needs q = 0 and y = (1, t, t^2, ...)");
  return {g->x, g->p.t};
}

template <class Sampler>
SamplerHandle wrap(std::shared_ptr<Sampler> s, int stop, Rational bias) {
  return {[s](RandomSource& rng) { return s->sample(rng); }, stop, std::move(bias)};
}

std::vector<Partition> shapes_up_to(int n) {
  std::vector<Partition> out;
  for (int k = 0; k <= n; ++k)
    for (auto& p : partitions_of(k)) out.push_back(p);
  return out;
}

}  // namespace

std::string to_string(SamplerKind kind) {
  switch (kind) {
    case SamplerKind::General: return "general";
    case SamplerKind::HLSimplified: return "hl_simplified";
    case SamplerKind::YoungTableau: return "young_tableau";
    case SamplerKind::LatticeWeights: return "lattice_weights";
    case SamplerKind::Kerov: return "kerov";
  }
  return "unknown";
}

SamplerKind parse_sampler_kind(const std::string& name) {
  for (auto k : {SamplerKind::General, SamplerKind::HLSimplified, SamplerKind::YoungTableau, SamplerKind::LatticeWeights,
                 SamplerKind::Kerov})
    if (to_string(k) == name) return k;
  config_error("unknown sampler '" + name + "'");
}

SamplerHandle make_sampler(const ExperimentConfig& cfg) {
  try {
    validate(cfg.spec);
    switch (cfg.sampler) {
      case SamplerKind::General: {
        auto s = std::make_shared<GeneralSampler>(to_general(cfg.spec), cfg.tail_tol);
        return wrap(s, s->stop_interval(), s->truncation_bias());
      }
      case SamplerKind::HLSimplified: {
        auto [x, t] = hl_inputs(cfg);
        auto s = std::make_shared<HLSimplifiedSampler>(x, t, cfg.tail_tol);
        return wrap(s, s->stop_interval(), s->truncation_bias());
      }
      case SamplerKind::YoungTableau: {
        const auto& hl = need_hl(cfg);
        auto s = std::make_shared<YoungTableauSampler>(hl.u, hl.qf, cfg.tail_tol);
        return wrap(s, s->stop_interval(), s->truncation_bias());
      }
      case SamplerKind::LatticeWeights: {
        const auto& hl = need_hl(cfg);
        return wrap(std::make_shared<LatticeWeightSampler>(hl.u, hl.qf), 0, Rational(0));
      }
      case SamplerKind::Kerov: {
        const auto* sp = std::get_if<SchurQPlancherel>(&cfg.spec);
        if (!sp) config_error("kerov sampler needs the schur-q-plancherel spec");
        if (cfg.kerov_steps <= 0) config_error("kerov sampler needs a positive step count");
        return wrap(std::make_shared<KerovSampler>(sp->qf, cfg.kerov_steps), cfg.kerov_steps, Rational(0));
      }
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ConfigError) throw;
    config_error(e.what());
  }
  config_error("unknown sampler");
}

std::map<Partition, ExactProb> exact_law(const ExperimentConfig& cfg, int stop_interval, int max_size) {
  std::map<Partition, ExactProb> law;
  const auto shapes = shapes_up_to(max_size);
  if (cfg.sampler == SamplerKind::LatticeWeights) {
    // Path weights summed over shapes, then the halting probability.
    const auto& hl = need_hl(cfg);
    std::map<Partition, Rational> reach;
    reach[Partition{}] = 1;
    for (const auto& lam : shapes) {
      const Rational w = reach[lam];
      law[lam] = {w * (1 - lattice_out_weight(lam, hl.u, hl.qf)), 0};
      if (lam.size() == max_size) continue;
      for (const auto& cv : covers(lam)) reach[cv.shape] += w * lattice_weight(lam, cv.col, hl.u, hl.qf);
    }
    return law;
  }
  if (cfg.sampler == SamplerKind::Kerov) {
    const Rational qf = std::get<SchurQPlancherel>(cfg.spec).qf;
    std::map<Partition, Rational> reach;
    reach[Partition{}] = 1;
    for (const auto& lam : shapes) {
      const Rational w = reach[lam];
      if (lam.size() == cfg.kerov_steps) law[lam] = {w, 0};
      else if (lam.size() < cfg.kerov_steps) law[lam] = {0, 0};
      if (lam.size() >= std::min(max_size, cfg.kerov_steps)) continue;
      for (const auto& cv : covers(lam)) reach[cv.shape] += w * kerov_transition(lam, cv.shape, qf);
    }
    for (const auto& lam : shapes) law.try_emplace(lam, ExactProb{0, 0});
    return law;
  }
  const Rational share = cfg.tail_tol / static_cast<long>(std::max<std::size_t>(shapes.size(), 1));
  for (const auto& lam : shapes) law[lam] = pmf_truncated(cfg.spec, stop_interval, lam, share);
  return law;
}

Tally tabulate(const ExperimentConfig& cfg) {
  const std::size_t n = cfg.n_samples;
  unsigned threads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n / 256, 1)));
  std::vector<Tally> parts(threads);
  const RandomSource root(cfg.seed);
  auto work = [&](unsigned w) {
    SamplerHandle h = make_sampler(cfg);
    Tally& t = parts[w];
    const std::size_t lo = n * w / threads, hi = n * (w + 1) / threads;
    for (std::size_t i = lo; i < hi; ++i) {
      RandomSource rng = root.spawn(i);
      const Partition shape = h.draw(rng).final_shape;
      if (shape.size() <= cfg.max_tracked_size) ++t.counts[shape];
      else ++t.untracked;
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w);
    for (auto& th : pool) th.join();
  }
  Tally out;
  for (const auto& t : parts) {
    for (const auto& [k, v] : t.counts) out.counts[k] += v;
    out.untracked += t.untracked;
  }
  return out;
}

std::optional<ChiSquare> pooled_chi_square(const std::vector<double>& observed, const std::vector<double>& expected,
                                           double observed_rest, double expected_rest) {
  std::vector<std::size_t> order(expected.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return expected[a] < expected[b]; });
  double pool_o = observed_rest, pool_e = expected_rest;
  std::size_t next = 0;
  while (next < order.size() && (expected[order[next]] < 5 || pool_e < 5)) {
    pool_o += observed[order[next]];
    pool_e += expected[order[next]];
    ++next;
  }
  if (pool_e <= 0) return std::nullopt;
  ChiSquare out;
  out.statistic = (pool_o - pool_e) * (pool_o - pool_e) / pool_e;
  for (std::size_t i = next; i < order.size(); ++i) {
    const double o = observed[order[i]], e = expected[order[i]];
    out.statistic += (o - e) * (o - e) / e;
  }
  out.dof = static_cast<int>(order.size() - next);
  if (out.dof < 1) return std::nullopt;
  const boost::math::chi_squared dist(out.dof);
  out.p_value = boost::math::cdf(boost::math::complement(dist, out.statistic));
  return out;
}

ComparisonReport run_experiment(const ExperimentConfig& cfg) {
  if (cfg.max_tracked_size < 0) config_error("max tracked size must be non-negative");
  if (cfg.tail_tol <= 0) config_error("tail tolerance must be positive");
  const SamplerHandle handle = make_sampler(cfg);
  ComparisonReport r;
  r.sampler = to_string(cfg.sampler);
  r.spec = describe(cfg.spec);
  r.n_samples = cfg.n_samples;
  r.seed = cfg.seed;
  r.stop_interval = handle.stop_interval;
  r.max_tracked_size = cfg.max_tracked_size;
  r.truncation_bias = handle.truncation_bias;

  const auto law = exact_law(cfg, handle.stop_interval, cfg.max_tracked_size);
  Rational tracked = 0;
  for (const auto& [lam, p] : law) {
    tracked += p.value;
    r.exact_tail_bound += p.tail_bound;
  }
  r.untracked_mass = 1 - tracked;

  const Tally tally = cfg.n_samples ? tabulate(cfg) : Tally{};
  r.untracked_count = tally.untracked;
  const double n = static_cast<double>(cfg.n_samples);
  std::vector<double> observed, expected;
  double tv = 0;
  for (const auto& [lam, p] : law) {
    ComparisonRow row;
    row.shape = lam;
    row.exact = p;
    if (auto it = tally.counts.find(lam); it != tally.counts.end()) row.count = it->second;
    if (row.count == 0 && p.value == 0) continue;
    row.empirical = n > 0 ? static_cast<double>(row.count) / n : 0;
    row.contribution = std::abs(row.empirical - to_double(p.value)) / 2;
    tv += row.contribution;
    observed.push_back(static_cast<double>(row.count));
    expected.push_back(n * to_double(p.value));
    r.rows.push_back(std::move(row));
  }
  std::stable_sort(r.rows.begin(), r.rows.end(), [](const ComparisonRow& a, const ComparisonRow& b) {
    return a.shape.size() != b.shape.size() ? a.shape.size() < b.shape.size() : b.shape < a.shape;
  });
  if (cfg.n_samples == 0) return r;

  const double rest = to_double(r.untracked_mass);
  tv += std::abs(static_cast<double>(tally.untracked) / n - rest) / 2;
  r.tv = tv;
  if (auto chi = pooled_chi_square(observed, expected, static_cast<double>(tally.untracked), n * std::max(rest, 0.0))) {
    r.chi_square = chi->statistic;
    r.degrees_of_freedom = chi->dof;
    r.p_value = chi->p_value;
  }
  return r;
}

}  // namespace macm
