#include "rampsim/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace rampsim {
namespace {

std::uint64_t splitmix(std::uint64_t& x) {
  x += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ull;
  }
  return h;
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::string_view purpose, std::uint64_t index) {
  std::uint64_t s = seed;
  state_ = splitmix(s) ^ fnv1a(purpose);
  state_ ^= 0x5851f42d4c957f2dull * (index + 1);
  // burn in so that similar names do not yield correlated openings
  std::uint64_t t = state_;
  state_ = splitmix(t);
}

std::uint64_t RngStream::next_u64() { return splitmix(state_); }

double RngStream::next_double() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

bool RngStream::bernoulli(double p) { return next_double() < p; }

int RngStream::categorical(std::span<const double> weights) {
  double u = next_double();
  double acc = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    acc += weights[i];
    if (u < acc) return static_cast<int>(i);
  }
  return static_cast<int>(weights.size()) - 1;
}

std::uint64_t RngStream::next_below(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("next_below(0)");
  // rejection sampling keeps the draw exactly uniform
  std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t v;
  do {
    v = next_u64();
  } while (v >= limit);
  return v % n;
}

double RngStream::next_normal() {
  double u1 = 0.0;
  while (u1 == 0.0) u1 = next_double();
  double u2 = next_double();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
}

}  // namespace rampsim
