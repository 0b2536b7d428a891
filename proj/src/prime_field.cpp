#include "amcheck/prime_field.hpp"

#include <vector>

#include "amcheck/errors.hpp"

namespace amc {

uint32_t PrimeField::pow(uint32_t a, uint64_t e) const {
  uint32_t r = 1 % p_;
  uint32_t b = a % p_;
  while (e) {
    if (e & 1) r = mul(r, b);
    b = mul(b, b);
    e >>= 1;
  }
  return r;
}

uint32_t PrimeField::inv(uint32_t a) const {
  if (a % p_ == 0) throw InternalError("division by zero in F_p");
  return pow(a, p_ - 2);
}

bool is_prime(uint32_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (uint64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

uint32_t next_prime_1_mod(uint32_t m, uint32_t lower) {
  // p == 1 (mod m), p > lower; walk the arithmetic progression.
  uint64_t p = lower / m * static_cast<uint64_t>(m) + 1;
  if (p <= lower) p += m;
  while (p < (1ull << 31)) {
    if (is_prime(static_cast<uint32_t>(p))) return static_cast<uint32_t>(p);
    p += m;
  }
  throw InternalError("no suitable prime below 2^31");
}

uint32_t smallest_primitive_root(uint32_t p) {
  if (p == 2) return 1;
  // Factor p-1 by trial division.
  std::vector<uint32_t> primes;
  uint32_t m = p - 1;
  for (uint32_t d = 2; static_cast<uint64_t>(d) * d <= m; ++d) {
    if (m % d == 0) {
      primes.push_back(d);
      while (m % d == 0) m /= d;
    }
  }
  if (m > 1) primes.push_back(m);
  PrimeField F(p);
  for (uint32_t g = 2; g < p; ++g) {
    bool ok = true;
    for (uint32_t q : primes) {
      if (F.pow(g, (p - 1) / q) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  throw InternalError("no primitive root found; modulus not prime?");
}

}  // namespace amc
