#include "scenesim/sensors/channel.hpp"

#include "scenesim/sensors/sensor.hpp"

namespace scenesim::sensors {

// The transport is a header-only template; instantiate the common payload
// here so misuse shows up as a normal compile error in this translation unit.
template class Channel<PerceptMsg>;

}  // namespace scenesim::sensors
