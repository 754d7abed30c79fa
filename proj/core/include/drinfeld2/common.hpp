#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace d2 {

using BigInt = boost::multiprecision::cpp_int;

/// Thrown when a computation would need more p-adic digits than are carried.
struct PrecisionError : std::runtime_error {
  explicit PrecisionError(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown by the fixed-point solver when the extension ladder is exhausted
/// before the fixed module reaches full rank.
struct InsufficientExtension : std::runtime_error {
  explicit InsufficientExtension(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid input: mismatched parameters, excluded locus, malformed data.
struct DomainError : std::runtime_error {
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

inline int64_t ipow(int64_t b, int e) {
  int64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

inline int64_t mod_pos(int64_t a, int64_t n) {
  int64_t r = a % n;
  return r < 0 ? r + n : r;
}

/// v_p of an int64, capped at `cap` (v_p(0) = cap).
inline int val_p(int64_t a, int64_t p, int cap) {
  if (a == 0) return cap;
  int v = 0;
  while (v < cap && a % p == 0) { a /= p; ++v; }
  return v;
}

/// Deterministic RNG used by all sampled checks. mt19937_64 output is
/// pinned by the standard, so reports are byte-stable across platforms.
class Rng {
 public:
  explicit Rng(uint64_t seed) : g_(seed) {}
  uint64_t next() { return g_(); }
  uint64_t uniform(uint64_t n) { return n ? g_() % n : 0; }
  int64_t range(int64_t lo, int64_t hi) {  // inclusive
    return lo + static_cast<int64_t>(uniform(static_cast<uint64_t>(hi - lo + 1)));
  }

 private:
  std::mt19937_64 g_;
};

}  // namespace d2
