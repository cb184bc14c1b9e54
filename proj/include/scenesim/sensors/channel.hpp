#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "scenesim/common/rng.hpp"

namespace scenesim::sensors {

struct ChannelParams {
  double latency = 0.05;    // s, nominal one-way delay
  double jitter = 0.02;     // s, uniform half-width added to latency
  double drop_prob = 0.02;  // independent per message
};

// Lossy delayed transport between the edge and the backend. Drop and jitter
// for a message are keyed by (seed, tag, source, seq), so its fate never
// depends on what else is in flight. Arrivals are forced non-decreasing per
// source (the link is FIFO) and delivery is ordered by (arrival, source, seq)
// for a deterministic merge across sources.
template <typename Msg>
class Channel {
 public:
  Channel() = default;
  Channel(ChannelParams params, uint64_t seed, const std::string& tag)
      : params_(params), seed_(seed), tag_(tag64(tag)) {}

  void submit(Msg msg, int source, long seq, double stamp) {
    RngStream rng =
        substream(seed_, tag_, static_cast<uint64_t>(source), static_cast<uint64_t>(seq));
    if (rng.bernoulli(params_.drop_prob)) {
      ++dropped_;
      return;
    }
    double arrival = stamp + params_.latency + rng.uniform(-params_.jitter, params_.jitter);
    auto [it, fresh] = last_arrival_.try_emplace(source, arrival);
    if (!fresh) arrival = std::max(arrival, it->second);
    it->second = arrival;
    in_flight_.push_back(Entry{arrival, source, seq, std::move(msg)});
  }

  // Everything with arrival <= now, in delivery order.
  std::vector<Msg> deliver(double now) {
    std::vector<Entry> due;
    auto split = std::partition(in_flight_.begin(), in_flight_.end(),
                                [now](const Entry& e) { return e.arrival > now; });
    std::move(split, in_flight_.end(), std::back_inserter(due));
    in_flight_.erase(split, in_flight_.end());
    std::sort(due.begin(), due.end(), [](const Entry& a, const Entry& b) {
      if (a.arrival != b.arrival) return a.arrival < b.arrival;
      if (a.source != b.source) return a.source < b.source;
      return a.seq < b.seq;
    });
    std::vector<Msg> out;
    out.reserve(due.size());
    for (auto& e : due) out.push_back(std::move(e.msg));
    return out;
  }

  long dropped() const { return dropped_; }
  size_t pending() const { return in_flight_.size(); }

 private:
  struct Entry {
    double arrival;
    int source;
    long seq;
    Msg msg;
  };

  ChannelParams params_;
  uint64_t seed_ = 0;
  uint64_t tag_ = 0;
  long dropped_ = 0;
  std::vector<Entry> in_flight_;
  std::map<int, double> last_arrival_;
};

}  // namespace scenesim::sensors
