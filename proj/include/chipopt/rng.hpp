#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace chipopt {

// Deterministic random source. All distribution mapping is done by hand so
// that results do not depend on the standard library's distribution
// implementations; two builds with the same seed produce the same stream.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Independent child stream derived by mixing the tag words into the seed.
  static Rng substream(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0) {
    std::uint64_t s = splitmix(master ^ splitmix(a + 0x9e3779b97f4a7c15ull));
    s = splitmix(s ^ splitmix(b + 0xbf58476d1ce4e5b9ull));
    return Rng(s);
  }

  std::uint64_t next_u64() { return engine_(); }

  // Uniform integer in [0, n); n must be > 0. Rejection sampling keeps the
  // mapping exactly uniform.
  std::size_t uniform_index(std::size_t n) {
    std::uint64_t span = static_cast<std::uint64_t>(n);
    std::uint64_t limit = std::uint64_t(-1) - std::uint64_t(-1) % span;
    std::uint64_t v;
    do {
      v = next_u64();
    } while (v >= limit);
    return static_cast<std::size_t>(v % span);
  }

  // Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform01() < p; }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = uniform_index(i);
      std::swap(v[i - 1], v[j]);
    }
  }

  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[uniform_index(v.size())];
  }

 private:
  static std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
  }

  std::mt19937_64 engine_;
};

}  // namespace chipopt
