#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "chipopt/cost.hpp"
#include "chipopt/errors.hpp"
#include "chipopt/rng.hpp"

namespace chipopt {

struct GaParams {
  int population = 200;
  int elitism = 30;
  int tournament = 30;
  double mutation_prob = 0.5;

  void validate() const {
    if (population < 2) throw Error(Errc::DegeneratePopulation, "population must be at least 2");
    if (elitism < 0 || elitism >= population)
      throw Error(Errc::ConfigError, "elitism must satisfy 0 <= E < P");
    if (tournament < 1 || tournament > population)
      throw Error(Errc::ConfigError, "tournament must satisfy 1 <= T <= P");
    if (mutation_prob < 0.0 || mutation_prob > 1.0)
      throw Error(Errc::ConfigError, "mutation_prob must lie in [0, 1]");
  }
};

enum class CoolingSchedule { ExpMult, LogMult, LinMult, QuadMult };

struct SaParams {
  double initial_temp = 40.0;
  int iterations_per_round = 250;  // L
  double alpha = 1.0;
  double beta = 5.0;
  CoolingSchedule schedule = CoolingSchedule::LinMult;

  void validate() const {
    if (!(initial_temp > 0.0)) throw Error(Errc::ConfigError, "initial_temp must be > 0");
    if (iterations_per_round < 1)
      throw Error(Errc::ConfigError, "iterations_per_round must be >= 1");
    if (alpha < 0.0) throw Error(Errc::ConfigError, "alpha must be >= 0");
    if (beta < 0.0) throw Error(Errc::ConfigError, "beta must be >= 0");
  }
};

// Round temperature of the selected cooling schedule; k is the round index
// starting at 0. Throws Error{NonPositiveTemperature} when a schedule decays
// to a non-positive value.
inline double schedule_temperature(const SaParams& p, std::uint64_t k) {
  double kd = static_cast<double>(k);
  double t = 0.0;
  switch (p.schedule) {
    case CoolingSchedule::ExpMult: t = p.initial_temp * std::pow(p.alpha, kd); break;
    case CoolingSchedule::LogMult: t = p.initial_temp / (1.0 + p.alpha * std::log(1.0 + kd)); break;
    case CoolingSchedule::LinMult: t = p.initial_temp / (1.0 + p.alpha * kd); break;
    case CoolingSchedule::QuadMult: t = p.initial_temp / (1.0 + p.alpha * kd * kd); break;
  }
  if (!(t > 0.0))
    throw Error(Errc::NonPositiveTemperature, "cooling schedule produced a non-positive temperature");
  return t;
}

// Non-monotonic adaptive factor: current solutions far away from the best
// one raise the effective temperature, helping escapes from local optima.
inline double adaptive_factor(double current_cost, double best_cost, double beta) {
  return std::pow(1.0 + (current_cost - best_cost) / current_cost, beta);
}

inline bool metropolis_accept(double delta, double temperature, Rng& rng) {
  return rng.uniform01() < std::exp(-delta / temperature);
}

// Either a wall-clock budget or an evaluation-count budget; exactly one.
// Wall-clock is checked between evaluations, so an in-flight evaluation
// always completes; evaluation counts are respected exactly.
struct Budget {
  std::optional<double> seconds;
  std::optional<std::uint64_t> evaluations;

  static Budget evals(std::uint64_t n) { return Budget{std::nullopt, n}; }
  static Budget wall_clock(double s) { return Budget{s, std::nullopt}; }

  void validate() const {
    if (seconds.has_value() == evaluations.has_value())
      throw Error(Errc::ConfigError, "budget needs exactly one of seconds or evaluations");
    if (seconds && !(*seconds > 0.0)) throw Error(Errc::ConfigError, "time budget must be > 0");
    if (evaluations && *evaluations == 0)
      throw Error(Errc::ConfigError, "evaluation budget must be > 0");
  }
};

class BudgetMeter {
 public:
  explicit BudgetMeter(const Budget& b) : budget_(b), start_(std::chrono::steady_clock::now()) {}

  bool exhausted(std::uint64_t evals_done) const {
    if (budget_.evaluations) return evals_done >= *budget_.evaluations;
    std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start_;
    return elapsed.count() >= *budget_.seconds;
  }

 private:
  Budget budget_;
  std::chrono::steady_clock::time_point start_;
};

struct TracePoint {
  std::uint64_t eval = 0;      // 1-based evaluation index
  double best_cost = 0.0;      // best-so-far, non-increasing

  friend bool operator==(const TracePoint&, const TracePoint&) = default;
};

template <class Candidate>
struct RunResult {
  std::vector<TracePoint> trace;
  Candidate best;
  CostReport best_report;
  std::uint64_t evaluations = 0;
};

namespace opt_detail {

template <class Candidate>
struct BestTracker {
  std::optional<Candidate> best;
  CostReport report;
  std::vector<TracePoint> trace;
  std::uint64_t evals = 0;

  double offer(const Candidate& c, const CostReport& r) {
    ++evals;
    if (!best || r.total < report.total) {
      best = c;
      report = r;
    }
    trace.push_back({evals, report.total});
    return r.total;
  }

  RunResult<Candidate> finish() && {
    if (!best) throw Error(Errc::ConfigError, "budget allowed no evaluation");
    return {std::move(trace), std::move(*best), report, evals};
  }
};

}  // namespace opt_detail

// Samples random placements and keeps the cheapest one.
template <class Problem>
RunResult<typename Problem::Candidate> best_random(const Problem& prob, Budget budget, Rng& rng) {
  budget.validate();
  BudgetMeter meter(budget);
  opt_detail::BestTracker<typename Problem::Candidate> track;
  while (!meter.exhausted(track.evals)) {
    auto c = prob.random(rng);
    CostReport r = prob.evaluate(c);
    track.offer(c, r);
  }
  return std::move(track).finish();
}

// Generational evolution: the E cheapest individuals survive as elites, the
// remaining P-E slots are children of two distinct tournament-selected
// parents, each mutated with probability p_m. Cost ties resolve by insertion
// order everywhere.
template <class Problem>
RunResult<typename Problem::Candidate> genetic_algorithm(const Problem& prob, GaParams params,
                                                         Budget budget, Rng& rng) {
  params.validate();
  budget.validate();
  using Candidate = typename Problem::Candidate;

  struct Individual {
    Candidate cand;
    double cost;
    std::uint64_t tick;  // creation order, tie-break
  };

  BudgetMeter meter(budget);
  opt_detail::BestTracker<Candidate> track;
  std::uint64_t tick = 0;

  std::vector<Individual> pop;
  pop.reserve(params.population);
  for (int i = 0; i < params.population && !meter.exhausted(track.evals); ++i) {
    auto c = prob.random(rng);
    CostReport r = prob.evaluate(c);
    track.offer(c, r);
    pop.push_back({std::move(c), r.total, tick++});
  }

  auto better = [](const Individual& a, const Individual& b) {
    if (a.cost != b.cost) return a.cost < b.cost;
    return a.tick < b.tick;
  };

  // Winner of one tournament: T uniform draws with replacement, cheapest
  // wins, first drawn wins ties.
  auto tournament = [&]() {
    std::size_t winner = rng.uniform_index(pop.size());
    for (int t = 1; t < params.tournament; ++t) {
      std::size_t i = rng.uniform_index(pop.size());
      if (pop[i].cost < pop[winner].cost) winner = i;
    }
    return winner;
  };

  while (!meter.exhausted(track.evals)) {
    std::vector<std::size_t> order(pop.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return better(pop[a], pop[b]); });

    std::vector<Individual> next;
    next.reserve(params.population);
    for (int e = 0; e < params.elitism && e < static_cast<int>(order.size()); ++e)
      next.push_back(pop[order[e]]);

    while (static_cast<int>(next.size()) < params.population && !meter.exhausted(track.evals)) {
      std::size_t p1 = tournament();
      std::size_t p2 = p1;
      for (int guard = 0; p2 == p1; ++guard) {
        if (guard > 1000000)
          throw Error(Errc::DegeneratePopulation, "tournament cannot find two distinct parents");
        p2 = tournament();
      }
      auto child = prob.merge(pop[p1].cand, pop[p2].cand, rng);
      if (rng.bernoulli(params.mutation_prob)) child = prob.mutate(child, rng);
      CostReport r = prob.evaluate(child);
      track.offer(child, r);
      next.push_back({std::move(child), r.total, tick++});
    }
    if (static_cast<int>(next.size()) < params.population) break;  // budget ran out mid-generation
    pop = std::move(next);
  }
  return std::move(track).finish();
}

// Single-solution local search with the Metropolis acceptance rule; cooling
// advances every L evaluations, scaled by the adaptive factor.
template <class Problem>
RunResult<typename Problem::Candidate> simulated_annealing(const Problem& prob, SaParams params,
                                                           Budget budget, Rng& rng) {
  params.validate();
  budget.validate();
  using Candidate = typename Problem::Candidate;

  BudgetMeter meter(budget);
  opt_detail::BestTracker<Candidate> track;

  Candidate current = prob.random(rng);
  CostReport current_rep = prob.evaluate(current);
  track.offer(current, current_rep);

  std::uint64_t round = 0;
  double round_temp = schedule_temperature(params, round);
  int iter_in_round = 0;

  while (!meter.exhausted(track.evals)) {
    Candidate neighbor = prob.mutate(current, rng);
    CostReport rep = prob.evaluate(neighbor);
    double best_before = track.report.total;
    track.offer(neighbor, rep);

    double delta = rep.total - current_rep.total;
    bool accept = delta <= 0.0;
    if (!accept) {
      double t_eff = round_temp * adaptive_factor(current_rep.total, best_before, params.beta);
      accept = metropolis_accept(delta, t_eff, rng);
    }
    if (accept) {
      current = std::move(neighbor);
      current_rep = rep;
    }
    if (++iter_in_round == params.iterations_per_round) {
      iter_in_round = 0;
      round_temp = schedule_temperature(params, ++round);
    }
  }
  return std::move(track).finish();
}

}  // namespace chipopt
