#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace scenesim {

// Deterministic stream derivation. Every randomized subsystem pulls from its
// own generator seeded by hashing (run seed, subsystem tag, indices). Draw
// order between unrelated subsystems never couples, so parallel kernels and
// reordered message delivery cannot perturb the sampled values.
uint64_t splitmix64(uint64_t x);
uint64_t hash_combine(uint64_t seed, uint64_t value);
uint64_t tag64(std::string_view s);

class RngStream {
 public:
  explicit RngStream(uint64_t seed) : gen_(seed) {}

  double uniform(double lo, double hi);
  // Zero-mean normal draw; sigma == 0 short-circuits to 0 so noise-free
  // configurations stay bit-exact.
  double gauss(double sigma);
  bool bernoulli(double p);
  uint64_t next_u64() { return gen_(); }

 private:
  std::mt19937_64 gen_;
};

// Stream keyed by (seed, tag, a, b), e.g. (run seed, "sensor", node id, tick).
RngStream substream(uint64_t seed, uint64_t tag, uint64_t a = 0, uint64_t b = 0);

}  // namespace scenesim
