#ifndef RAMPSIM_RNG_HPP
#define RAMPSIM_RNG_HPP

#include <cstdint>
#include <span>
#include <string_view>

namespace rampsim {

// Deterministic, platform-independent random stream.  Each (seed, purpose,
// index) triple names an independent stream, so runs can be replayed and
// individual consumers (arrivals at ramp 2, destination draws, ...) can be
// re-seeded without disturbing the others.
class RngStream {
 public:
  RngStream() : state_(0x9e3779b97f4a7c15ull) {}
  RngStream(std::uint64_t seed, std::string_view purpose, std::uint64_t index = 0);

  std::uint64_t next_u64();
  // uniform in [0, 1)
  double next_double();
  bool bernoulli(double p);
  // index into a normalized weight vector
  int categorical(std::span<const double> weights);
  // uniform integer in [0, n)
  std::uint64_t next_below(std::uint64_t n);
  // standard normal via Box-Muller (no cached spare: keeps replay simple)
  double next_normal();

 private:
  std::uint64_t state_;
};

}  // namespace rampsim

#endif
