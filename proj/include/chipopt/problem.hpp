#pragma once

#include "chipopt/cost.hpp"
#include "chipopt/genome.hpp"
#include "chipopt/grid_placement.hpp"

namespace chipopt {

// Adapters binding one placement representation to the optimizer interface:
// random/mutate/merge produce connectivity-checked candidates, evaluate
// scores them against the stored normalizers.

class HomogeneousProblem {
 public:
  using Candidate = GridCandidate;

  HomogeneousProblem(const Architecture& arch, CostWeights weights, MutationMode mode)
      : arch_(&arch), weights_(weights), mode_(mode) {
    validate_grid_architecture(arch);
    weights_.validate();
  }

  Candidate random(Rng& rng) const { return random_grid_candidate(*arch_, rng); }
  Candidate mutate(const Candidate& c, Rng& rng) const {
    return mutate_grid(*arch_, c.placement, mode_, rng);
  }
  Candidate merge(const Candidate& a, const Candidate& b, Rng& rng) const {
    return merge_grids(*arch_, a.placement, b.placement, rng);
  }
  double area_of(const Candidate& c) const { return grid_area_mm2(*arch_, c.placement); }
  RawProxies raw_proxies(const Candidate& c) const {
    return compute_proxies(*arch_, c.topology, area_of(c));
  }
  CostReport evaluate(const Candidate& c) const {
    return make_cost_report(raw_proxies(c), weights_, norm_);
  }

  // Samples are generated sequentially from the stream, then evaluated in
  // parallel and reduced in sample order, so the result is thread-count
  // independent.
  void estimate_normalizers(int samples, Rng& rng);
  void set_normalizers(const Normalizers& n) { norm_ = n; }
  const Normalizers& normalizers() const { return norm_; }
  const CostWeights& weights() const { return weights_; }
  const Architecture& architecture() const { return *arch_; }

 private:
  const Architecture* arch_;
  CostWeights weights_;
  MutationMode mode_;
  Normalizers norm_;
};

class HeterogeneousProblem {
 public:
  using Candidate = HeteroCandidate;

  HeterogeneousProblem(const Architecture& arch, CostWeights weights, MutationMode mode)
      : arch_(&arch), weights_(weights), mode_(mode) {
    weights_.validate();
  }

  Candidate random(Rng& rng) const { return random_hetero_candidate(*arch_, rng); }
  Candidate mutate(const Candidate& c, Rng& rng) const {
    return mutate_hetero(*arch_, c.genome, mode_, rng);
  }
  Candidate merge(const Candidate& a, const Candidate& b, Rng& rng) const {
    return merge_hetero(*arch_, a.genome, b.genome, rng);
  }
  double area_of(const Candidate& c) const { return layout_area_mm2(c.layout); }
  RawProxies raw_proxies(const Candidate& c) const {
    return compute_proxies(*arch_, c.topology, area_of(c));
  }
  CostReport evaluate(const Candidate& c) const {
    return make_cost_report(raw_proxies(c), weights_, norm_);
  }

  void estimate_normalizers(int samples, Rng& rng);
  void set_normalizers(const Normalizers& n) { norm_ = n; }
  const Normalizers& normalizers() const { return norm_; }
  const CostWeights& weights() const { return weights_; }
  const Architecture& architecture() const { return *arch_; }

 private:
  const Architecture* arch_;
  CostWeights weights_;
  MutationMode mode_;
  Normalizers norm_;
};

}  // namespace chipopt
