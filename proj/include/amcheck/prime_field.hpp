#pragma once

#include <cstdint>

namespace amc {

// Arithmetic in the prime field F_p for a word-sized prime p.
class PrimeField {
 public:
  explicit PrimeField(uint32_t p) : p_(p) {}

  uint32_t modulus() const { return p_; }

  uint32_t add(uint32_t a, uint32_t b) const {
    uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  uint32_t sub(uint32_t a, uint32_t b) const {
    return a >= b ? a - b : a + (p_ - b);
  }
  uint32_t neg(uint32_t a) const { return a ? p_ - a : 0; }
  uint32_t mul(uint32_t a, uint32_t b) const {
    return static_cast<uint32_t>(static_cast<uint64_t>(a) * b % p_);
  }
  uint32_t pow(uint32_t a, uint64_t e) const;
  uint32_t inv(uint32_t a) const;  // Fermat inverse; requires a != 0
  // Least nonnegative residue of an integer.
  uint32_t reduce(long long v) const {
    long long r = v % static_cast<long long>(p_);
    if (r < 0) r += p_;
    return static_cast<uint32_t>(r);
  }

 private:
  uint32_t p_;
};

bool is_prime(uint32_t n);

// Smallest prime p with p > lower and p == 1 (mod m).
uint32_t next_prime_1_mod(uint32_t m, uint32_t lower);

// Smallest generator of the multiplicative group of F_p.
uint32_t smallest_primitive_root(uint32_t p);

}  // namespace amc
