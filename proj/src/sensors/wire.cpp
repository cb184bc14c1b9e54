#include "scenesim/sensors/wire.hpp"

#include <sstream>
#include <stdexcept>

#include "scenesim/common/strfmt.hpp"

namespace scenesim::sensors {

namespace {

void put(std::string& s, double v) {
  s += ' ';
  s += fmt_g17(v);
}

void put(std::string& s, long v) {
  s += ' ';
  s += std::to_string(v);
}

class TokenReader {
 public:
  explicit TokenReader(const std::string& line) : in_(line) {}

  std::string next() {
    std::string tok;
    if (!(in_ >> tok)) throw std::invalid_argument("bad percept line");
    return tok;
  }

  double real() {
    try {
      return parse_g17(next());
    } catch (const std::exception&) {
      throw std::invalid_argument("bad percept line");
    }
  }

  long integer() {
    try {
      return std::stol(next());
    } catch (const std::exception&) {
      throw std::invalid_argument("bad percept line");
    }
  }

  size_t count() {
    const long n = integer();
    if (n < 0 || n > 1000000) throw std::invalid_argument("bad percept line");
    return static_cast<size_t>(n);
  }

  bool done() {
    std::string tok;
    return !(in_ >> tok);
  }

 private:
  std::istringstream in_;
};

}  // namespace

std::string to_wire(const PerceptMsg& msg) {
  std::string s = "P";
  put(s, static_cast<long>(msg.node_id));
  put(s, msg.seq);
  put(s, msg.stamp);
  put(s, static_cast<long>(msg.robot ? 1 : 0));
  if (msg.robot) {
    put(s, msg.robot->x);
    put(s, msg.robot->y);
    put(s, msg.robot->theta);
  }
  put(s, static_cast<long>(msg.persons.size()));
  for (const auto& p : msg.persons) {
    put(s, p.root.x);
    put(s, p.root.y);
    put(s, static_cast<long>(p.keypoints.size()));
    for (const auto& k : p.keypoints) {
      put(s, k.x);
      put(s, k.y);
    }
  }
  put(s, static_cast<long>(msg.objects.size()));
  for (const auto& o : msg.objects) {
    put(s, static_cast<long>(o.cls == world::ObjectClass::chair ? 1 : 0));
    put(s, o.pose.x);
    put(s, o.pose.y);
    put(s, o.pose.theta);
    put(s, static_cast<long>(o.contour.v.size()));
    for (const auto& v : o.contour.v) {
      put(s, v.x);
      put(s, v.y);
    }
  }
  return s;
}

PerceptMsg from_wire(const std::string& line) {
  TokenReader r(line);
  if (r.next() != "P") throw std::invalid_argument("bad percept line");
  PerceptMsg msg;
  msg.node_id = static_cast<int>(r.integer());
  msg.seq = r.integer();
  msg.stamp = r.real();
  if (r.integer() != 0) {
    geom::Pose2 rp;
    rp.x = r.real();
    rp.y = r.real();
    rp.theta = r.real();
    msg.robot = rp;
  }
  const size_t np = r.count();
  msg.persons.resize(np);
  for (auto& p : msg.persons) {
    p.root.x = r.real();
    p.root.y = r.real();
    p.keypoints.resize(r.count());
    for (auto& k : p.keypoints) {
      k.x = r.real();
      k.y = r.real();
    }
  }
  const size_t no = r.count();
  msg.objects.resize(no);
  for (auto& o : msg.objects) {
    o.cls = r.integer() == 1 ? world::ObjectClass::chair : world::ObjectClass::table;
    o.pose.x = r.real();
    o.pose.y = r.real();
    o.pose.theta = r.real();
    o.contour.v.resize(r.count());
    for (auto& v : o.contour.v) {
      v.x = r.real();
      v.y = r.real();
    }
  }
  if (!r.done()) throw std::invalid_argument("bad percept line");
  return msg;
}

}  // namespace scenesim::sensors
