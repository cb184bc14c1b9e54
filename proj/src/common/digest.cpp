#include "scenesim/common/digest.hpp"

#include <cstdio>

namespace scenesim {

void Fnv1a64::update(std::string_view bytes) {
  for (unsigned char c : bytes) {
    h_ ^= c;
    h_ *= 0x100000001b3ull;
  }
}

std::string Fnv1a64::hex() const {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h_));
  return std::string(buf);
}

}  // namespace scenesim
