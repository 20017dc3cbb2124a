#pragma once

// Arithmetic modulo p = 2^64 - 2^32 + 1 and univariate polynomials over F_p.
// Used for randomized non-vanishing certificates and degree sequences along lines.

#include <cstdint>
#include <random>
#include <vector>

#include "ddeg/polynomial.hpp"

namespace ddeg::modp {

constexpr std::uint64_t P = 0xFFFFFFFF00000001ULL;
constexpr std::uint64_t EPS = 0xFFFFFFFFULL;  // 2^64 mod P

inline std::uint64_t reduce128(unsigned __int128 x) {
  std::uint64_t lo = static_cast<std::uint64_t>(x);
  std::uint64_t hi = static_cast<std::uint64_t>(x >> 64);
  std::uint64_t hh = hi >> 32, hl = hi & EPS;
  std::uint64_t t0 = lo - hh;
  if (lo < hh) t0 -= EPS;
  std::uint64_t t1 = hl * EPS;
  std::uint64_t res = t0 + t1;
  if (res < t0) res += EPS;
  if (res >= P) res -= P;
  return res;
}

inline std::uint64_t add(std::uint64_t a, std::uint64_t b) {
  unsigned __int128 s = static_cast<unsigned __int128>(a) + b;
  if (s >= P) s -= P;
  return static_cast<std::uint64_t>(s);
}
inline std::uint64_t sub(std::uint64_t a, std::uint64_t b) { return a >= b ? a - b : a - b + P; }
inline std::uint64_t mul(std::uint64_t a, std::uint64_t b) {
  return reduce128(static_cast<unsigned __int128>(a) * b);
}
std::uint64_t power(std::uint64_t a, std::uint64_t e);
std::uint64_t inverse(std::uint64_t a);
std::uint64_t from_rational(const mpq_class& q);
inline std::uint64_t random_element(std::mt19937_64& rng) { return rng() % P; }

std::uint64_t eval(const Polynomial& p, const std::vector<std::uint64_t>& pt);
std::uint64_t determinant(std::vector<std::vector<std::uint64_t>> m);

using UPoly = std::vector<std::uint64_t>;  // lowest first, trimmed
void trim(UPoly& p);
UPoly multiply(const UPoly& a, const UPoly& b);
inline long degree(const UPoly& p) { return static_cast<long>(p.size()) - 1; }

// An endomorphism with coefficients reduced mod p.
struct ModEndo {
  struct T {
    Monomial mono;
    std::uint64_t c;
  };
  std::size_t n = 0;
  std::vector<std::vector<T>> comps;
  explicit ModEndo(const Endomorphism& f);
};

std::vector<std::uint64_t> apply_point(const ModEndo& f, const std::vector<std::uint64_t>& pt);
// Substitutes univariate polynomials; throws ResourceError once a result would exceed max_len coefficients.
std::vector<UPoly> apply_upoly(const ModEndo& f, const std::vector<UPoly>& args, std::size_t max_len);

}  // namespace ddeg::modp
