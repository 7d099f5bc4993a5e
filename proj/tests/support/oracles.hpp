#pragma once

// Test-only brute-force references. Nothing here calls into the library.

#include <cstdint>
#include <functional>
#include <optional>
#include <map>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

inline std::int64_t mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

inline std::int64_t powmod(std::int64_t b, std::int64_t e, std::int64_t m) {
  std::int64_t r = 1 % m;
  b = mod(b, m);
  while (e > 0) {
    if (e & 1) r = static_cast<std::int64_t>(static_cast<__int128>(r) * b % m);
    b = static_cast<std::int64_t>(static_cast<__int128>(b) * b % m);
    e >>= 1;
  }
  return r;
}

// Solve a*x = 1 mod m by exhaustive search (small m only).
inline std::int64_t inverse_by_search(std::int64_t a, std::int64_t m) {
  for (std::int64_t x = 0; x < m; ++x) {
    if (mod(a * x, m) == 1) return x;
  }
  return -1;
}

using Point2 = std::pair<std::int64_t, std::int64_t>;
using Map2 = std::function<Point2(Point2)>;

// Cycle-length histogram of a permutation of (Z/m)^2, following each orbit
// from scratch.
inline std::map<std::uint64_t, std::uint64_t> cycle_histogram(const Map2& f, std::int64_t m) {
  std::set<Point2> seen;
  std::map<std::uint64_t, std::uint64_t> hist;
  for (std::int64_t x = 0; x < m; ++x) {
    for (std::int64_t y = 0; y < m; ++y) {
      Point2 s{x, y};
      if (seen.count(s)) continue;
      std::uint64_t n = 0;
      Point2 cur = s;
      do {
        seen.insert(cur);
        cur = f(cur);
        ++n;
      } while (cur != s && n <= static_cast<std::uint64_t>(m * m));
      ++hist[n];
    }
  }
  return hist;
}

// Henon map (x, y) -> (x^2 + c - a y, x) on (Z/m)^2.
inline Map2 henon_mod(std::int64_t c, std::int64_t a, std::int64_t m) {
  return [=](Point2 p) { return Point2{mod(p.first * p.first + c - a * p.second, m), p.first}; };
}

// Cycle length through a point under f.
inline std::uint64_t orbit_length(const Map2& f, Point2 s) {
  std::uint64_t n = 0;
  Point2 cur = s;
  do {
    cur = f(cur);
    ++n;
  } while (cur != s);
  return n;
}


// Integer arithmetic modulo m = p^K for large K.
struct BigMod {
  std::int64_t p;
  int K;
  std::int64_t m;

  BigMod(std::int64_t p_, int K_) : p(p_), K(K_), m(1) {
    for (int i = 0; i < K; ++i) m *= p;
  }
  std::int64_t mul(std::int64_t a, std::int64_t b) const {
    return mod(static_cast<std::int64_t>(static_cast<__int128>(mod(a, m)) * mod(b, m) % m), m);
  }
  int val(std::int64_t a) const {
    a = mod(a, m);
    if (a == 0) return K;
    int v = 0;
    while (a % p == 0) {
      a /= p;
      ++v;
    }
    return v;
  }
  // Inverse of a unit by the extended Euclidean algorithm.
  std::int64_t inv(std::int64_t a, std::int64_t modulus) const {
    __int128 r0 = modulus, r1 = mod(a, modulus), s0 = 0, s1 = 1;
    while (r1 != 0) {
      __int128 q = r0 / r1;
      __int128 t = r0 - q * r1;
      r0 = r1;
      r1 = t;
      t = s0 - q * s1;
      s0 = s1;
      s1 = t;
    }
    return mod(static_cast<std::int64_t>(s0 % modulus), modulus);
  }
};

// Henon map (x, y) -> (x^2 + c - a y, x) iterated n times modulo p^K,
// together with the Jacobian of the iterate.
struct HenonIterate {
  Point2 image;
  std::int64_t j[2][2];
};

inline HenonIterate henon_iterate(const BigMod& R, std::int64_t c, std::int64_t a, Point2 s, std::uint64_t n) {
  HenonIterate out{s, {{1, 0}, {0, 1}}};
  for (std::uint64_t k = 0; k < n; ++k) {
    auto [x, y] = out.image;
    std::int64_t A[2][2] = {{mod(2 * x, R.m), mod(-a, R.m)}, {1, 0}};
    std::int64_t J[2][2];
    for (int i = 0; i < 2; ++i) {
      for (int l = 0; l < 2; ++l) J[i][l] = mod(R.mul(A[i][0], out.j[0][l]) + R.mul(A[i][1], out.j[1][l]), R.m);
    }
    for (int i = 0; i < 2; ++i) {
      for (int l = 0; l < 2; ++l) out.j[i][l] = J[i][l];
    }
    out.image = {mod(R.mul(x, x) + c - R.mul(a, y), R.m), x};
  }
  return out;
}

// Newton iteration for g^n(P) = P modulo p^K from s. Returns the refined
// point when it is fixed by g^n modulo p^(K - 4 v(det)).
inline std::optional<Point2> henon_periodic_refine(const BigMod& R, std::int64_t c, std::int64_t a, Point2 s,
                                                   std::uint64_t n) {
  Point2 x = {mod(s.first, R.m), mod(s.second, R.m)};
  int vd = 0;
  for (int it = 0; it < 3 * R.K; ++it) {
    HenonIterate h = henon_iterate(R, c, a, x, n);
    const std::int64_t f0 = mod(h.image.first - x.first, R.m), f1 = mod(h.image.second - x.second, R.m);
    if (f0 == 0 && f1 == 0) return x;
    const std::int64_t m00 = h.j[0][0] - 1, m01 = h.j[0][1], m10 = h.j[1][0], m11 = h.j[1][1] - 1;
    const std::int64_t det = mod(R.mul(m00, m11) - R.mul(m01, m10), R.m);
    vd = R.val(det);
    if (vd >= R.K / 4) return std::nullopt;
    std::int64_t pv = 1;
    for (int i = 0; i < vd; ++i) pv *= R.p;
    // adj(M) F divided by det.
    const std::int64_t u0 = mod(R.mul(m11, f0) - R.mul(m01, f1), R.m);
    const std::int64_t u1 = mod(R.mul(m00, f1) - R.mul(m10, f0), R.m);
    if (u0 % pv != 0 || u1 % pv != 0) return std::nullopt;
    const std::int64_t q = R.m / pv;
    const std::int64_t di = R.inv(det / pv, q);
    x = {mod(x.first - R.mul(u0 / pv, di) % q, R.m), mod(x.second - R.mul(u1 / pv, di) % q, R.m)};
  }
  HenonIterate h = henon_iterate(R, c, a, x, n);
  std::int64_t keep = 1;
  for (int i = 0; i < R.K - 4 * vd; ++i) keep *= R.p;
  if (mod(h.image.first - x.first, keep) == 0 && mod(h.image.second - x.second, keep) == 0) return x;
  return std::nullopt;
}

// Least m with g^m(P) = P modulo p^k, up to limit; 0 if none.
inline std::uint64_t henon_period_mod(const BigMod& R, std::int64_t c, std::int64_t a, Point2 s, int k,
                                      std::uint64_t limit) {
  std::int64_t q = 1;
  for (int i = 0; i < k; ++i) q *= R.p;
  Point2 x = s;
  for (std::uint64_t m = 1; m <= limit; ++m) {
    x = henon_iterate(R, c, a, x, 1).image;
    if (mod(x.first - s.first, q) == 0 && mod(x.second - s.second, q) == 0) return m;
  }
  return 0;
}

}  // namespace oracle
