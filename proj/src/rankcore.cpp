#include "swctl/rankcore.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace swctl {

int RankReport::trials_at(int value) const {
  return static_cast<int>(std::count_if(trials.begin(), trials.end(), [&](const RankTrial& t) { return t.dim == value; }));
}

namespace {

template <typename Basis, typename Matrix, typename Apply>
RankTrial run_fixpoint(int n, const std::vector<Matrix>& a, const std::vector<Matrix>& b, Basis basis, Apply apply_fn) {
  RankTrial trial;
  for (const auto& bm : b)
    for (int c = 0; c < bm.cols(); ++c) basis.insert(bm.column(c));
  trial.rank_history.push_back(static_cast<int>(basis.rank()));
  const int rank0 = trial.rank_history.front();

  for (;;) {
    const auto current = basis.vectors();
    for (const auto& am : a)
      for (const auto& v : current) basis.insert(apply_fn(am, v));
    const int rank = static_cast<int>(basis.rank());
    if (rank == trial.rank_history.back()) break;
    assert(rank > trial.rank_history.back());
    trial.rank_history.push_back(rank);
    if (rank == n) {
      // One more step cannot grow a full basis.
      break;
    }
  }
  trial.dim = trial.rank_history.back();
  trial.layers_used = static_cast<int>(trial.rank_history.size()) - 1;
  if (trial.layers_used > n - rank0) throw std::logic_error("W_j fixpoint exceeded n - rank(Gamma_0) steps");
  return trial;
}

std::vector<double> real_apply(const RealMatrix& m, const std::vector<double>& v) {
  std::vector<double> out(m.rows(), 0.0);
  for (int i = 0; i < m.rows(); ++i)
    for (int k = 0; k < m.cols(); ++k) out[i] += m(i, k) * v[k];
  return out;
}

}  // namespace

RankTrial controllable_dim_trial(const SwitchedStructure& sys, const Realization& r) {
  const int n = sys.n();
  RankTrial trial;
  if (r.field.is_finite()) {
    const PrimeField f(r.field.prime);
    const DenseSystem d = dense_ff(sys, r);
    trial = run_fixpoint(n, d.a, d.b, FieldBasis(n, f),
                         [&](const FieldMatrix& m, const std::vector<std::uint64_t>& v) { return apply(m, v, f); });
  } else {
    const DenseRealSystem d = dense_real(sys, r);
    trial = run_fixpoint(n, d.a, d.b, RealBasis(n), real_apply);
  }
  trial.seed = r.seed;
  return trial;
}

namespace {

RankReport collect(std::vector<RankTrial> trials, FieldTag field) {
  RankReport report;
  report.field = field;
  report.trials = std::move(trials);
  const auto best = std::max_element(report.trials.begin(), report.trials.end(),
                                     [](const RankTrial& x, const RankTrial& y) { return x.dim < y.dim; });
  report.dim = best->dim;
  report.layers_used = best->layers_used;
  return report;
}

}  // namespace

RankReport controllable_dim(const SwitchedStructure& sys, std::span<const std::uint64_t> seeds, std::uint64_t p) {
  if (seeds.empty()) throw std::invalid_argument("controllable_dim needs at least one seed");
  if (!is_prime(p)) throw std::invalid_argument("modulus " + std::to_string(p) + " is not prime");
  std::vector<RankTrial> trials;
  for (std::uint64_t seed : seeds) {
    trials.push_back(controllable_dim_trial(sys, sample_realization(sys, FieldTag::finite(p), seed)));
  }
  return collect(std::move(trials), FieldTag::finite(p));
}

RankReport controllable_dim_real(const SwitchedStructure& sys, std::span<const std::uint64_t> seeds, double rel_tol) {
  if (seeds.empty()) throw std::invalid_argument("controllable_dim needs at least one seed");
  std::vector<RankTrial> trials;
  for (std::uint64_t seed : seeds) {
    const Realization r = sample_realization(sys, FieldTag::real(), seed);
    const DenseRealSystem d = dense_real(sys, r);
    RankTrial t = run_fixpoint(sys.n(), d.a, d.b, RealBasis(sys.n(), rel_tol),
                               real_apply);
    t.seed = seed;
    trials.push_back(std::move(t));
  }
  return collect(std::move(trials), FieldTag::real());
}

int lti_reduction_rank(const SwitchedStructure& sys, std::span<const std::uint64_t> weights, std::uint64_t seed,
                       std::uint64_t p) {
  if (static_cast<int>(weights.size()) != sys.num_subsystems()) {
    throw std::invalid_argument("need one weight per subsystem");
  }
  const PrimeField f(p);
  const DenseSystem d = dense_ff(sys, sample_realization(sys, FieldTag::finite(p), seed));
  const int n = sys.n();
  const int m = sys.num_subsystems() > 0 ? std::max_element(d.b.begin(), d.b.end(), [](const auto& x, const auto& y) {
                                             return x.cols() < y.cols();
                                           })->cols()
                                         : 0;
  // Inputs of different subsystems share columns by index, as in sum w_i B_i.
  FieldMatrix combined(n, n + m);
  for (int i = 0; i < sys.num_subsystems(); ++i) {
    const std::uint64_t w = weights[i] % p;
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) combined(r, c) = f.add(combined(r, c), f.mul(w, d.a[i](r, c)));
      for (int c = 0; c < d.b[i].cols(); ++c) combined(r, n + c) = f.add(combined(r, n + c), f.mul(w, d.b[i](r, c)));
    }
  }
  return static_cast<int>(rank_ff(std::move(combined), f));
}

ReductionScan lti_reduction_scan(const SwitchedStructure& sys, int samples, int realizations, std::uint64_t seed,
                                 std::uint64_t p) {
  if (samples < 0 || realizations < 1) throw std::invalid_argument("need samples >= 0 and realizations >= 1");
  ReductionScan scan{samples, realizations, 0, {}};
  Rng rng(seed);
  std::vector<std::uint64_t> weights(sys.num_subsystems());
  for (int s = 0; s < samples; ++s) {
    for (auto& w : weights) w = 1 + rng.below(p - 1);
    for (int r = 0; r < realizations; ++r) {
      const int rank = lti_reduction_rank(sys, weights, rng.next(), p);
      ++scan.rank_counts[rank];
      scan.max_rank = std::max(scan.max_rank, rank);
    }
  }
  return scan;
}

std::vector<std::uint64_t> trial_seeds(std::uint64_t base, int trials) {
  std::vector<std::uint64_t> seeds;
  std::uint64_t s = base;
  for (int t = 0; t < trials; ++t) {
    s = mix_seed(s);
    seeds.push_back(s);
  }
  return seeds;
}

}  // namespace swctl
