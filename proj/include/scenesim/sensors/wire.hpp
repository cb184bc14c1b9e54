#pragma once

#include <string>

#include "scenesim/sensors/sensor.hpp"

namespace scenesim::sensors {

// Canonical line format for a percept message: space-separated tokens, all
// doubles printed with %.17g so serialize/parse round-trips bit-exactly.
// Throws std::invalid_argument("bad percept line") on malformed input.
std::string to_wire(const PerceptMsg& msg);
PerceptMsg from_wire(const std::string& line);

}  // namespace scenesim::sensors
