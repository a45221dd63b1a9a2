#include "chipopt/problem.hpp"

#include <iostream>

namespace chipopt {

namespace {

template <class Problem>
Normalizers estimate(const Problem& prob, int samples, Rng& rng) {
  if (samples < 1)
    throw Error(Errc::ConfigError, "norm_samples must be >= 1");
  std::vector<typename Problem::Candidate> cands;
  cands.reserve(samples);
  for (int i = 0; i < samples; ++i) cands.push_back(prob.random(rng));

  std::vector<RawProxies> raw(samples);
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < samples; ++i) raw[i] = prob.raw_proxies(cands[i]);

  Normalizers n = normalizers_from_samples(raw);
  for (int c = 0; c < 4; ++c)
    if (!n.has_pairs[c])
      std::cerr << "warning: traffic class " << to_string(kTrafficClasses[c])
                << " has no chiplet pairs; its cost components are zero\n";
  return n;
}

}  // namespace

void HomogeneousProblem::estimate_normalizers(int samples, Rng& rng) {
  norm_ = estimate(*this, samples, rng);
}

void HeterogeneousProblem::estimate_normalizers(int samples, Rng& rng) {
  norm_ = estimate(*this, samples, rng);
}

}  // namespace chipopt
