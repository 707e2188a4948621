#pragma once

// Small shared utilities: checked 64-bit combinatorics, an exact rational for
// the expected block degree d, and a deterministic RNG wrapper whose draw
// sequence does not depend on the standard library implementation.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace ramsey {

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

namespace detail {
// shortest round-trippable rendering, shared by text output and JSON
inline std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}
}  // namespace detail

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_mul_overflow(a, b, &out)) throw Error("integer overflow in checked_mul");
  return out;
}

inline std::int64_t checked_pow(std::int64_t base, int exp) {
  std::int64_t acc = 1;
  for (int i = 0; i < exp; ++i) acc = checked_mul(acc, base);
  return acc;
}

// C(n, r), exact; 0 when out of range, error on 64-bit overflow.
inline std::int64_t binom(std::int64_t n, std::int64_t r) {
  if (n < 0 || r < 0 || r > n) return 0;
  r = std::min(r, n - r);
  std::int64_t acc = 1;
  for (std::int64_t i = 1; i <= r; ++i) {
    // acc holds C(n-r+i-1, i-1); multiplying by (n-r+i) and dividing by i is exact
    __int128 wide = static_cast<__int128>(acc) * (n - r + i);
    wide /= i;
    if (wide > std::numeric_limits<std::int64_t>::max()) throw Error("binomial overflow");
    acc = static_cast<std::int64_t>(wide);
  }
  return acc;
}

inline std::int64_t factorial(int n) {
  std::int64_t acc = 1;
  for (int i = 2; i <= n; ++i) acc = checked_mul(acc, i);
  return acc;
}

// Exact rational with 64-bit parts, always reduced, denominator positive.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t n, std::int64_t d) : num(n), den(d) { reduce(); }
  explicit Rational(std::int64_t n) : num(n), den(1) {}

  void reduce() {
    if (den == 0) throw Error("rational with zero denominator");
    if (den < 0) { num = -num; den = -den; }
    std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) { num /= g; den /= g; }
    if (num == 0) den = 1;
  }

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  bool operator==(const Rational&) const = default;

  std::string str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
  }
};

// One splitmix64 step; used to derive per-stage seeds from a root seed.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// mt19937_64 plus explicit rejection sampling: uniform_int_distribution's
// output sequence is implementation-defined, which would break bit-identical
// seeded runs across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t raw() { return gen_(); }

  // uniform draw from [0, bound)
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) throw Error("Rng::below: bound must be positive");
    std::uint64_t mask = bound - 1;
    mask |= mask >> 1;  mask |= mask >> 2;  mask |= mask >> 4;
    mask |= mask >> 8;  mask |= mask >> 16; mask |= mask >> 32;
    std::uint64_t v;
    do { v = gen_() & mask; } while (v >= bound);
    return v;
  }

  // r distinct values from [0, n), ascending (Floyd's sampling)
  std::vector<int> subset(int n, int r) {
    if (r > n) throw Error("Rng::subset: r exceeds n");
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(r));
    for (int j = n - r; j < n; ++j) {
      int t = static_cast<int>(below(static_cast<std::uint64_t>(j) + 1));
      if (std::find(out.begin(), out.end(), t) != out.end()) out.push_back(j);
      else out.push_back(t);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace ramsey
