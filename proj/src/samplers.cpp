#include "macm/samplers.hpp"

#include <algorithm>

#include "macm/error.hpp"

namespace macm {

namespace {

constexpr unsigned __int128 kTwo64 = static_cast<unsigned __int128>(1) << 64;

unsigned __int128 scaled_threshold(const Rational& cum) {
  static const Rational two64 = [] {
    Integer t = 1;
    t <<= 64;
    return Rational(t);
  }();
  if (cum <= 0) return 0;
  const Integer t = ceil(cum * two64);
  if (t >= two64) return kTwo64;
  return static_cast<unsigned __int128>(t.get_ui());
}

std::vector<std::uint64_t> seed_words(const std::vector<std::uint64_t>& path) {
  std::vector<std::uint64_t> out = path;
  out.push_back(path.size());
  return out;
}

// Adds a box at the bottom of column col and returns the new cell.
Cell grow(Partition& lambda, int col) {
  const Cell c{lambda.column_length(col) + 1, col};
  lambda = add_to_column(lambda, col);
  return c;
}

void finish_tableau(GrowthTrace& trace) {
  std::vector<int> cols;
  for (const auto& ev : trace.events)
    for (const auto& c : ev.boxes) cols.push_back(c.col);
  trace.tableau = StandardTableau::from_column_sequence(cols);
}

int last_nonzero(const VariableSpec& x) {
  const auto& v = x.as_finite()->values;
  int last = 0;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) last = static_cast<int>(i) + 1;
  return last;
}

constexpr int kMaxIntervals = 100000;

}  // namespace

RandomSource::RandomSource(std::uint64_t seed) : RandomSource(std::vector<std::uint64_t>{seed}) {}

RandomSource::RandomSource(std::vector<std::uint64_t> path) : path_(std::move(path)) {
  std::vector<std::uint32_t> words;
  for (auto w : seed_words(path_)) {
    words.push_back(static_cast<std::uint32_t>(w));
    words.push_back(static_cast<std::uint32_t>(w >> 32));
  }
  std::seed_seq seq(words.begin(), words.end());
  engine_.seed(seq);
}

RandomSource RandomSource::spawn(std::uint64_t index) const {
  auto child = path_;
  child.push_back(index);
  return RandomSource(std::move(child));
}

double RandomSource::uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

CdfTable::CdfTable(const std::vector<Rational>& probabilities) {
  Rational cum = 0;
  thresholds_.reserve(probabilities.size());
  for (const auto& p : probabilities) {
    if (p < 0) throw Error(ErrorCode::NonPositiveProbability, "negative probability " + to_string(p));
    cum += p;
    thresholds_.push_back(scaled_threshold(cum));
  }
}

std::size_t CdfTable::draw(std::uint64_t u) const {
  const auto it = std::upper_bound(thresholds_.begin(), thresholds_.end(), static_cast<unsigned __int128>(u));
  return static_cast<std::size_t>(it - thresholds_.begin());
}

Coin::Coin(const Rational& heads_probability) {
  if (heads_probability < 0 || heads_probability > 1)
    throw Error(ErrorCode::NonPositiveProbability, "coin probability outside [0, 1]");
  threshold_ = scaled_threshold(heads_probability);
}

Partition replay(const GrowthTrace& trace) {
  Partition lambda;
  for (const auto& ev : trace.events)
    for (const auto& c : ev.boxes) {
      if (c.row != lambda.column_length(c.col) + 1)
        throw Error(ErrorCode::InvalidDatum, "event box is not at the bottom of its column");
      lambda = add_to_column(lambda, c.col);
    }
  return lambda;
}

// ---------------------------------------------------------------------------
// General algorithm

Rational general_tail_bound(const GeneralSpec& spec, int m) {
  const auto& p = spec.p;
  // q = 0 with principal y: the interval is active with probability exactly x_i c.
  if (p.q == 0 && spec.y.as_geometric() && spec.y.as_geometric()->ratio == p.t) {
    const Rational c = spec.y.as_geometric()->first;
    if (const auto* g = spec.x.as_geometric()) return c * g->first * pow(g->ratio, m) / (1 - g->ratio);
    Rational s = 0;
    for (std::size_t i = static_cast<std::size_t>(m) + 1; i <= spec.x.finite_count(); ++i) s += c * spec.x.value(i);
    return s;
  }
  // Otherwise P(active_i) <= exp(w_i) - 1 <= w_i e^{w_i} with w_i = a z_i/(1 - z_i),
  // z_i = ρ x_i and a = C/(1 - q), from |p_n(y)| <= C ρ^n.
  const auto bound = spec.y.power_sum_bound();
  const Rational a = bound.scale / (1 - p.q);
  const Rational rho = bound.rate;
  auto one_interval = [&](const Rational& x) -> std::optional<Rational> {
    const Rational z = rho * x;
    if (z >= 1) return std::nullopt;
    const Rational w = a * z / (1 - z);
    if (w >= 1) return std::nullopt;
    return w / (1 - w);
  };
  if (const auto* g = spec.x.as_geometric()) {
    const Rational x_next = g->first * pow(g->ratio, m);
    const Rational z = rho * x_next;
    if (z >= 1) return Rational(1);
    const Rational w = a * z / (1 - z);
    if (w >= 1) return Rational(1);
    const Rational bound_sum = a / (1 - z) * rho * x_next / (1 - g->ratio) / (1 - w);
    return std::min(bound_sum, Rational(1));
  }
  Rational s = 0;
  for (std::size_t i = static_cast<std::size_t>(m) + 1; i <= spec.x.finite_count(); ++i) {
    auto b = one_interval(spec.x.value(i));
    if (!b) return Rational(1);
    s += *b;
  }
  return std::min(s, Rational(1));
}

GeneralSampler::GeneralSampler(GeneralSpec spec, Rational tail_tol)
    : spec_(std::move(spec)), pieri_(spec_.y, spec_.p) {
  validate(MeasureSpec{spec_});
  if (tail_tol <= 0) throw Error(ErrorCode::DomainError, "tail tolerance must be positive");
  if (spec_.x.is_finite()) {
    stop_ = last_nonzero(spec_.x);
  } else {
    while (general_tail_bound(spec_, stop_) > tail_tol) {
      if (++stop_ > kMaxIntervals) throw Error(ErrorCode::DivergentSeries, "tail bound does not reach tolerance");
    }
    bias_ = general_tail_bound(spec_, stop_);
  }

  // g_k = c^k/(q;q)_k when y = (c, ct, ct^2, ...).
  const auto* principal = spec_.y.as_geometric();
  if (principal && principal->ratio != spec_.p.t) principal = nullptr;
  const Rational norm_tol = stop_ > 0 ? tail_tol / (256 * stop_) : tail_tol;
  const Rational leftover_cut = pow(Rational(1, 2), 70);
  std::vector<Rational> g;
  for (int i = 1; i <= stop_; ++i) {
    const Rational x = spec_.x.value(static_cast<std::size_t>(i));
    const ExactProb norm = interval_normalizer(x, spec_.y, spec_.p, norm_tol);
    // Relative normalizer error turns into a TV error of the same size.
    if (!norm.is_exact()) bias_ += norm.tail_bound / norm.lower();

    std::vector<Rational> probs;
    Rational cum = 0, xk = 1;
    for (std::size_t k = 0;; ++k) {
      if (k >= g.size()) {
        const std::size_t want = std::max<std::size_t>(64, 2 * g.size());
        if (want > 4096) break;
        if (principal) {
          g.assign(want + 1, Rational(0));
          Rational acc = 1;
          for (std::size_t n = 0; n <= want; ++n) {
            if (n > 0) acc = acc * principal->first / (1 - pow(spec_.p.q, static_cast<long>(n)));
            g[n] = acc;
          }
        } else {
          g = g_coefficients(spec_.y, spec_.p, want);
        }
      }
      const Rational pk = norm.value * g[k] * xk;
      probs.push_back(pk);
      cum += pk;
      xk *= x;
      if (1 - cum < leftover_cut) break;
      if (xk == 0) break;
    }
    if (cum < 1) bias_ += 1 - cum;
    size_tables_.emplace_back(probs);
  }
}

const CdfTable& GeneralSampler::strip_table(const Partition& lambda, int k) {
  auto key = std::make_pair(lambda, k);
  if (auto it = strip_tables_.find(key); it != strip_tables_.end()) return it->second;
  const auto& row = pieri_.row(lambda, k);
  return strip_tables_.emplace(std::move(key), CdfTable(row.probabilities)).first->second;
}

GrowthTrace GeneralSampler::sample(RandomSource& rng) {
  GrowthTrace trace;
  Partition lambda;
  for (int n = 1; n <= stop_; ++n) {
    const CdfTable& sizes = size_tables_[static_cast<std::size_t>(n - 1)];
    const int k = static_cast<int>(std::min(sizes.draw(rng), sizes.size() - 1));
    if (k == 0) continue;
    const auto& row = pieri_.row(lambda, k);
    const CdfTable& strips = strip_table(lambda, k);
    const std::size_t idx = std::min(strips.draw(rng), strips.size() - 1);
    const Partition& big = row.targets[idx];
    trace.events.push_back({n, strip_cells(big, lambda)});
    lambda = big;
  }
  trace.final_shape = lambda;
  trace.intervals = stop_;
  trace.truncation_bias = bias_;
  finish_tableau(trace);
  return trace;
}

GrowthTrace sample_general(const GeneralSpec& spec, RandomSource& rng, const Rational& tail_tol) {
  GeneralSampler s(spec, tail_tol);
  return s.sample(rng);
}

// ---------------------------------------------------------------------------
// Simplified Hall-Littlewood algorithm

std::vector<Rational> hl_column_probabilities(const Partition& lambda, int j, const Rational& t) {
  const int width = std::max(lambda.part(1) + 1, j + 1);
  std::vector<Rational> out(static_cast<std::size_t>(width), Rational(0));
  out[static_cast<std::size_t>(j)] = pow(t, lambda.column_length(j + 1));
  for (int s = j + 2; s <= width; ++s)
    out[static_cast<std::size_t>(s - 1)] = pow(t, lambda.column_length(s)) - pow(t, lambda.column_length(s - 1));
  return out;
}

Rational hl_strip_probability(const Partition& small, const Partition& big, const Rational& t) {
  const auto boxes = strip_cells(big, small);
  std::vector<int> cols;
  for (const auto& c : boxes) cols.push_back(c.col);
  Rational out = 1;
  for (int a : cols) {
    const bool follows = a == 1 || std::find(cols.begin(), cols.end(), a - 1) != cols.end();
    if (follows) out *= pow(t, small.column_length(a));
    else out *= pow(t, small.column_length(a)) - pow(t, small.column_length(a - 1));
  }
  return out;
}

HLSimplifiedSampler::HLSimplifiedSampler(VariableSpec x, Rational t, Rational tail_tol)
    : x_(std::move(x)), t_(std::move(t)) {
  if (t_ <= 0 || t_ >= 1) throw Error(ErrorCode::DomainError, "need 0 < t < 1");
  if (tail_tol <= 0) throw Error(ErrorCode::DomainError, "tail tolerance must be positive");
  if (const auto* g = x_.as_geometric()) {
    if (g->first <= 0 || g->first >= 1 || g->ratio < 0) throw Error(ErrorCode::DomainError, "need 0 < x_i < 1");
    if (g->first / (1 - g->ratio) >= 1) throw Error(ErrorCode::DomainError, "need Σ x_i < 1");
    while (g->first * pow(g->ratio, stop_) / (1 - g->ratio) > tail_tol) {
      if (++stop_ > kMaxIntervals) throw Error(ErrorCode::DivergentSeries, "tail bound does not reach tolerance");
    }
    bias_ = g->first * pow(g->ratio, stop_) / (1 - g->ratio);
  } else {
    Rational sum = 0;
    for (const auto& v : x_.as_finite()->values) {
      if (v <= 0 || v >= 1) throw Error(ErrorCode::DomainError, "need 0 < x_i < 1");
      sum += v;
    }
    if (sum >= 1) throw Error(ErrorCode::DomainError, "need Σ x_i < 1");
    stop_ = static_cast<int>(x_.finite_count());
  }
  for (int i = 1; i <= stop_; ++i) coins_.emplace_back(x_.value(static_cast<std::size_t>(i)));
}

const CdfTable& HLSimplifiedSampler::column_table(const Partition& lambda, int j) {
  auto key = std::make_pair(lambda, j);
  if (auto it = tables_.find(key); it != tables_.end()) return it->second;
  return tables_.emplace(std::move(key), CdfTable(hl_column_probabilities(lambda, j, t_))).first->second;
}

GrowthTrace HLSimplifiedSampler::sample(RandomSource& rng) {
  GrowthTrace trace;
  Partition lambda;
  for (int n = 1; n <= stop_; ++n) {
    const Coin& coin = coins_[static_cast<std::size_t>(n - 1)];
    const Partition before = lambda;
    IntervalEvent ev{n, {}};
    int j = 0;
    while (coin.flip(rng)) {
      const CdfTable& table = column_table(lambda, j);
      const int s = static_cast<int>(std::min(table.draw(rng), table.size() - 1)) + 1;
      ev.boxes.push_back(grow(lambda, s));
      j = s;
    }
    if (ev.boxes.empty()) continue;
    if (!is_horizontal_strip(lambda, before))
      throw Error(ErrorCode::DomainError, "interval did not add a horizontal strip");
    trace.events.push_back(std::move(ev));
  }
  trace.final_shape = lambda;
  trace.intervals = stop_;
  trace.truncation_bias = bias_;
  finish_tableau(trace);
  return trace;
}

GrowthTrace sample_hl_simplified(const VariableSpec& x, const Rational& t, RandomSource& rng, const Rational& tail_tol) {
  HLSimplifiedSampler s(x, t, tail_tol);
  return s.sample(rng);
}

// ---------------------------------------------------------------------------
// Young Tableau Algorithm

std::vector<Rational> tableau_column_probabilities(const Partition& lambda, int n_coin, const Rational& qf) {
  if (lambda.length() > n_coin) throw Error(ErrorCode::DomainError, "more parts than the coin index");
  const Rational den = pow(qf, n_coin) - 1;
  const int width = lambda.part(1) + 1;
  std::vector<Rational> out(static_cast<std::size_t>(width));
  out[0] = (pow(qf, n_coin - lambda.column_length(1)) - 1) / den;
  for (int s = 2; s <= width; ++s)
    out[static_cast<std::size_t>(s - 1)] =
        (pow(qf, n_coin - lambda.column_length(s)) - pow(qf, n_coin - lambda.column_length(s - 1))) / den;
  return out;
}

YoungTableauSampler::YoungTableauSampler(Rational u, Rational qf, Rational tail_tol)
    : u_(std::move(u)), qf_(std::move(qf)) {
  if (u_ <= 0 || u_ >= 1) throw Error(ErrorCode::DomainError, "need 0 < u < 1");
  if (qf_ <= 1) throw Error(ErrorCode::DomainError, "need qf > 1");
  if (tail_tol <= 0) throw Error(ErrorCode::DomainError, "tail tolerance must be positive");
  // P(any coin beyond M shows heads) <= Σ_{i>M} u/qf^i = u / (qf^M (qf - 1)).
  auto tail = [&](int m) -> Rational { return u_ / (pow(qf_, m) * (qf_ - 1)); };
  while (tail(stop_) > tail_tol) {
    if (++stop_ > kMaxIntervals) throw Error(ErrorCode::DivergentSeries, "tail bound does not reach tolerance");
  }
  bias_ = tail(stop_);
  for (int i = 1; i <= stop_; ++i) coins_.emplace_back(u_ / pow(qf_, i));
}

const CdfTable& YoungTableauSampler::column_table(const Partition& lambda, int n_coin) {
  auto key = std::make_pair(lambda, n_coin);
  if (auto it = tables_.find(key); it != tables_.end()) return it->second;
  return tables_.emplace(std::move(key), CdfTable(tableau_column_probabilities(lambda, n_coin, qf_))).first->second;
}

GrowthTrace YoungTableauSampler::sample(RandomSource& rng) {
  GrowthTrace trace;
  Partition lambda;
  for (int n = 1; n <= stop_; ++n) {
    const Coin& coin = coins_[static_cast<std::size_t>(n - 1)];
    IntervalEvent ev{n, {}};
    while (coin.flip(rng)) {
      const CdfTable& table = column_table(lambda, n);
      const int s = static_cast<int>(std::min(table.draw(rng), table.size() - 1)) + 1;
      ev.boxes.push_back(grow(lambda, s));
    }
    if (!ev.boxes.empty()) trace.events.push_back(std::move(ev));
  }
  trace.final_shape = lambda;
  trace.intervals = stop_;
  trace.truncation_bias = bias_;
  finish_tableau(trace);
  return trace;
}

GrowthTrace sample_young_tableau_alg(const Rational& u, const Rational& qf, RandomSource& rng, const Rational& tail_tol) {
  YoungTableauSampler s(u, qf, tail_tol);
  return s.sample(rng);
}

// ---------------------------------------------------------------------------
// Young-lattice weights

Rational lattice_weight(const Partition& lambda, int col, const Rational& u, const Rational& qf) {
  if (col < 1) return 0;
  const long c1 = lambda.column_length(1);
  if (col == 1) return u / (pow(qf, c1) * (pow(qf, c1 + 1) - 1));
  if (lambda.empty()) return 0;
  return u * (pow(qf, -static_cast<long>(lambda.column_length(col))) -
              pow(qf, -static_cast<long>(lambda.column_length(col - 1)))) /
         (pow(qf, c1) - 1);
}

Rational lattice_out_weight(const Partition& lambda, const Rational& u, const Rational& qf) {
  Rational total = 0;
  for (int s = 1; s <= lambda.part(1) + 1; ++s) total += lattice_weight(lambda, s, u, qf);
  return total;
}

Rational weight_of_path(const StandardTableau& t, const Rational& u, const Rational& qf, WeightVariant variant) {
  Rational uu = u, qq = qf;
  if (variant == WeightVariant::UnitarySelfDual) {
    uu = -u;
    qq = -qf;
  } else if (variant == WeightVariant::UnitaryPaired) {
    uu = u * u;
    qq = qf * qf;
  }
  Rational out = 1;
  Partition lambda;
  for (int col : t.column_sequence()) {
    out *= lattice_weight(lambda, col, uu, qq);
    lambda = add_to_column(lambda, col);
  }
  return out;
}

LatticeWeightSampler::LatticeWeightSampler(Rational u, Rational qf, bool is_signed)
    : u_(std::move(u)), qf_(std::move(qf)) {
  if (is_signed) throw Error(ErrorCode::DomainError, "signed weights are evaluation-only; use weight_of_path");
  if (u_ <= 0 || u_ >= 1) throw Error(ErrorCode::DomainError, "need 0 < u < 1");
  if (qf_ <= 1) throw Error(ErrorCode::DomainError, "need qf > 1");
  // Outgoing weight is u/(qf-1) at ∅ and at most u qf/(qf^2 - 1) elsewhere.
  if (u_ / (qf_ - 1) >= 1 || u_ * qf_ / (qf_ * qf_ - 1) >= 1)
    throw Error(ErrorCode::DomainError, "outgoing weights must stay below 1 for halting");
}

const std::pair<std::vector<int>, CdfTable>& LatticeWeightSampler::table(const Partition& lambda) {
  if (auto it = tables_.find(lambda); it != tables_.end()) return it->second;
  std::vector<int> choices{0};
  std::vector<Rational> probs{1 - lattice_out_weight(lambda, u_, qf_)};
  for (int s = 1; s <= lambda.part(1) + 1; ++s) {
    choices.push_back(s);
    probs.push_back(lattice_weight(lambda, s, u_, qf_));
  }
  return tables_.emplace(lambda, std::make_pair(std::move(choices), CdfTable(probs))).first->second;
}

GrowthTrace LatticeWeightSampler::sample(RandomSource& rng) {
  GrowthTrace trace;
  Partition lambda;
  int step = 0;
  for (;;) {
    const auto& [choices, cdf] = table(lambda);
    const int col = choices[std::min(cdf.draw(rng), cdf.size() - 1)];
    if (col == 0) break;
    ++step;
    trace.events.push_back({step, {grow(lambda, col)}});
  }
  trace.final_shape = lambda;
  trace.intervals = step;
  finish_tableau(trace);
  return trace;
}

GrowthTrace sample_lattice_weights(const Rational& u, const Rational& qf, bool is_signed, RandomSource& rng) {
  LatticeWeightSampler s(u, qf, is_signed);
  return s.sample(rng);
}

// ---------------------------------------------------------------------------
// Kerov's q hook walk

namespace {

Rational q_number(long m, const Rational& q) {
  if (q == 1) return m;
  return (pow(q, m) - 1) / (q - 1);
}

Rational hook_product(const Partition& lambda, const Rational& q) {
  Rational out = 1;
  for (const auto& c : cells(lambda)) out *= q_number(cell_stats(lambda, c).hook, q);
  return out;
}

}  // namespace

Rational kerov_transition(const Partition& small, const Partition& big, const Rational& q) {
  if (q <= 0) throw Error(ErrorCode::DomainError, "Kerov walk needs q > 0");
  if (big.size() != small.size() + 1 || !big.contains(small))
    throw Error(ErrorCode::DomainError, big.to_string() + " does not cover " + small.to_string());
  return pow(q, n_stat(big) - n_stat(small)) * hook_product(small, q) / hook_product(big, q);
}

KerovSampler::KerovSampler(Rational qf, int steps) : qf_(std::move(qf)), steps_(steps) {
  if (qf_ <= 0) throw Error(ErrorCode::DomainError, "Kerov walk needs qf > 0");
  if (steps_ < 0) throw Error(ErrorCode::DomainError, "step count must be non-negative");
}

const std::pair<std::vector<int>, CdfTable>& KerovSampler::table(const Partition& lambda) {
  if (auto it = tables_.find(lambda); it != tables_.end()) return it->second;
  std::vector<int> cols;
  std::vector<Rational> probs;
  for (const auto& cv : covers(lambda)) {
    cols.push_back(cv.col);
    probs.push_back(kerov_transition(lambda, cv.shape, qf_));
  }
  return tables_.emplace(lambda, std::make_pair(std::move(cols), CdfTable(probs))).first->second;
}

GrowthTrace KerovSampler::sample(RandomSource& rng) {
  GrowthTrace trace;
  Partition lambda;
  for (int step = 1; step <= steps_; ++step) {
    const auto& [cols, cdf] = table(lambda);
    const int col = cols[std::min(cdf.draw(rng), cdf.size() - 1)];
    trace.events.push_back({step, {grow(lambda, col)}});
  }
  trace.final_shape = lambda;
  trace.intervals = steps_;
  finish_tableau(trace);
  return trace;
}

GrowthTrace sample_kerov_walk(const Rational& qf, int steps, RandomSource& rng) {
  KerovSampler s(qf, steps);
  return s.sample(rng);
}

}  // namespace macm
