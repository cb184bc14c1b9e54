#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace scenesim {

// FNV-1a over the byte stream. Traces hash every line they emit, so two runs
// agree on the digest iff they agree on every byte of the trace.
class Fnv1a64 {
 public:
  void update(std::string_view bytes);
  uint64_t value() const { return h_; }
  std::string hex() const;

 private:
  uint64_t h_ = 0xcbf29ce484222325ull;
};

}  // namespace scenesim
