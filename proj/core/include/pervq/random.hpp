#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "pervq/exactnum.hpp"
#include "pervq/quiver.hpp"

namespace pervq {

// Pseudo-random valid data for property suites. Only the raw 64-bit output of
// the engine is used, so sequences are identical across standard libraries.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed, long max_abs = 7) : engine_(seed), max_abs_(max_abs) {}

  std::uint64_t next() { return engine_(); }
  std::size_t uniform(std::size_t lo, std::size_t hi);  // inclusive
  bool chance(unsigned percent) { return uniform(1, 100) <= percent; }

  // Numerator in [-max_abs, max_abs], denominator in [1, max_abs].
  Rational rational();
  GaussRational gauss(bool complex_part);
  Matrix matrix(std::size_t rows, std::size_t cols, bool complex_entries);
  Matrix invertible(std::size_t n, bool complex_entries);
  Frame frame();

 private:
  std::mt19937_64 engine_;
  long max_abs_;
};

// nodes points, psi and each phi dimension drawn from 0..max_dim.
Quiver random_quiver(Sampler& rng, std::size_t nodes, std::size_t max_dim);
LocalSystem random_local_system(Sampler& rng, std::size_t points, std::size_t max_rank);

struct Gauge {
  Matrix psi;
  std::vector<Matrix> phi;
};
Gauge random_gauge(Sampler& rng, const Quiver& q);

}  // namespace pervq
