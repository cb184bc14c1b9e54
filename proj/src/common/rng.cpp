#include "scenesim/common/rng.hpp"

namespace scenesim {

uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

uint64_t hash_combine(uint64_t seed, uint64_t value) {
  return splitmix64(seed ^ (value + 0x9e3779b97f4a7c15ull + (seed << 6) + (seed >> 2)));
}

uint64_t tag64(std::string_view s) {
  // FNV-1a, good enough to key subsystem streams.
  uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

double RngStream::uniform(double lo, double hi) {
  std::uniform_real_distribution<double> d(lo, hi);
  return d(gen_);
}

double RngStream::gauss(double sigma) {
  if (sigma == 0.0) return 0.0;
  std::normal_distribution<double> d(0.0, sigma);
  return d(gen_);
}

bool RngStream::bernoulli(double p) {
  if (p <= 0.0) return false;
  if (p >= 1.0) return true;
  std::bernoulli_distribution d(p);
  return d(gen_);
}

RngStream substream(uint64_t seed, uint64_t tag, uint64_t a, uint64_t b) {
  uint64_t h = hash_combine(seed, tag);
  h = hash_combine(h, a);
  h = hash_combine(h, b);
  return RngStream(h);
}

}  // namespace scenesim
