// Irreducibility over Q for the moderate degrees that occur in towers.
// Factor degrees modulo many primes rule out most splittings; whatever
// survives is searched numerically and each candidate factor is confirmed
// or rejected by exact division.

#include <algorithm>
#include <bitset>
#include <cmath>
#include <complex>
#include <cstdint>

#include "arith.hpp"

namespace tsurf::detail {

namespace {

using ModPoly = std::vector<std::uint64_t>;
using u64 = std::uint64_t;
using u128 = unsigned __int128;

constexpr std::size_t kMaxDegree = 128;

void mtrim(ModPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

u64 mpow(u64 b, u64 e, u64 p) {
  u64 r = 1;
  b %= p;
  while (e) {
    if (e & 1) r = static_cast<u64>(static_cast<u128>(r) * b % p);
    b = static_cast<u64>(static_cast<u128>(b) * b % p);
    e >>= 1;
  }
  return r;
}

u64 minv(u64 a, u64 p) { return mpow(a, p - 2, p); }

ModPoly mrem(ModPoly a, const ModPoly& b, u64 p) {
  mtrim(a);
  const std::size_t db = b.size() - 1;
  const u64 inv = minv(b.back(), p);
  while (a.size() > db) {
    const u64 c = static_cast<u64>(static_cast<u128>(a.back()) * inv % p);
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t j = 0; j <= db; ++j)
      a[shift + j] = (a[shift + j] + p - static_cast<u64>(static_cast<u128>(c) * b[j] % p)) % p;
    mtrim(a);
  }
  return a;
}

ModPoly mquo(ModPoly a, const ModPoly& b, u64 p) {
  mtrim(a);
  const std::size_t db = b.size() - 1;
  if (a.size() <= db) return {};
  ModPoly q(a.size() - db, 0);
  const u64 inv = minv(b.back(), p);
  for (std::size_t k = a.size(); k-- > db;) {
    const u64 c = static_cast<u64>(static_cast<u128>(a[k]) * inv % p);
    q[k - db] = c;
    for (std::size_t j = 0; j <= db; ++j)
      a[k - db + j] = (a[k - db + j] + p - static_cast<u64>(static_cast<u128>(c) * b[j] % p)) % p;
  }
  mtrim(q);
  return q;
}

ModPoly mmulmod(const ModPoly& a, const ModPoly& b, const ModPoly& f, u64 p) {
  if (a.empty() || b.empty()) return {};
  ModPoly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      out[i + j] = static_cast<u64>((out[i + j] + static_cast<u128>(a[i]) * b[j]) % p);
  return mrem(std::move(out), f, p);
}

ModPoly mgcd(ModPoly a, ModPoly b, u64 p) {
  mtrim(a);
  mtrim(b);
  while (!b.empty()) {
    ModPoly r = mrem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const u64 inv = minv(a.back(), p);
    for (auto& c : a) c = static_cast<u64>(static_cast<u128>(c) * inv % p);
  }
  return a;
}

ModPoly mpowpoly(const ModPoly& b0, u64 e, const ModPoly& f, u64 p) {
  ModPoly result{1}, base = b0;
  while (e) {
    if (e & 1) result = mmulmod(result, base, f, p);
    base = mmulmod(base, base, f, p);
    e >>= 1;
  }
  return result;
}

// Degrees of the irreducible factors of a squarefree monic f mod p.
std::vector<std::size_t> factor_degrees(ModPoly f, u64 p) {
  std::vector<std::size_t> out;
  ModPoly h{0, 1};
  for (std::size_t i = 1; 2 * i <= f.size() - 1; ++i) {
    h = mpowpoly(mrem(h, f, p), p, f, p);
    ModPoly hx = h;
    if (hx.size() < 2) hx.resize(2, 0);
    hx[1] = (hx[1] + p - 1) % p;
    mtrim(hx);
    ModPoly g = mgcd(f, hx, p);
    if (g.size() > 1) {
      for (std::size_t k = 0; k < (g.size() - 1) / i; ++k) out.push_back(i);
      f = mquo(f, g, p);
      h = mrem(h, f, p);
    }
  }
  if (f.size() > 1) out.push_back(f.size() - 1);
  return out;
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<Integer> primitive_integer(const QPoly& f) {
  Integer den(1);
  for (const auto& c : f) den = lcm(den, denominator(c));
  std::vector<Integer> out;
  Integer g(0);
  for (const auto& c : f) {
    Integer v = numerator(c) * (den / denominator(c));
    out.push_back(v);
    g = boost::multiprecision::gcd(g, v);
  }
  for (auto& c : out) c /= g;
  if (out.back() < 0)
    for (auto& c : out) c = -c;
  return out;
}

// Exact test whether the monic integer polynomial `d` divides monic `g`.
bool divides(const std::vector<Integer>& g, const std::vector<Integer>& d) {
  std::vector<Integer> r = g;
  const std::size_t dd = d.size() - 1;
  for (std::size_t k = r.size(); k-- > dd;) {
    const Integer c = r[k];
    if (c == 0) continue;
    for (std::size_t j = 0; j <= dd; ++j) r[k - dd + j] -= c * d[j];
  }
  for (std::size_t i = 0; i < dd; ++i)
    if (r[i] != 0) return false;
  return true;
}

using cplx = std::complex<long double>;

std::vector<cplx> roots(const std::vector<long double>& c) {
  const std::size_t n = c.size() - 1;
  long double bound = 0;
  for (std::size_t i = 0; i < n; ++i) bound = std::max(bound, std::fabs(c[i] / c[n]));
  bound += 1;
  std::vector<cplx> z(n);
  for (std::size_t k = 0; k < n; ++k)
    z[k] = std::polar(bound, static_cast<long double>(2 * M_PI * k / n + 0.4));
  for (int iter = 0; iter < 2000; ++iter) {
    long double worst = 0;
    for (std::size_t k = 0; k < n; ++k) {
      cplx pv = c[n], dv = 0;
      for (std::size_t i = n; i-- > 0;) {
        dv = dv * z[k] + pv;
        pv = pv * z[k] + c[i];
      }
      if (std::abs(pv) == 0) continue;
      const cplx ratio = pv / dv;
      cplx s = 0;
      for (std::size_t j = 0; j < n; ++j)
        if (j != k) s += 1.0L / (z[k] - z[j]);
      const cplx w = ratio / (1.0L - ratio * s);
      z[k] -= w;
      worst = std::max(worst, std::abs(w) / (1 + std::abs(z[k])));
    }
    if (worst < 1e-17L) break;
  }
  return z;
}

bool numeric_factor_search(const std::vector<Integer>& f, const std::bitset<kMaxDegree + 1>& allowed) {
  // Monic integer transform g(y) = lc^(n-1) f(y / lc).
  const std::size_t n = f.size() - 1;
  const Integer lc = f.back();
  std::vector<Integer> g(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    g[i] = i == n ? Integer(1) : f[i] * boost::multiprecision::pow(lc, static_cast<unsigned>(n - 1 - i));
  }
  std::vector<long double> gc(n + 1);
  for (std::size_t i = 0; i <= n; ++i) gc[i] = g[i].convert_to<long double>();
  const std::vector<cplx> z = roots(gc);

  for (std::size_t k = 1; 2 * k <= n; ++k) {
    if (!allowed[k]) continue;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
      std::vector<cplx> prod{1};
      for (std::size_t i : idx) {
        std::vector<cplx> next(prod.size() + 1, 0);
        for (std::size_t j = 0; j < prod.size(); ++j) {
          next[j + 1] += prod[j];
          next[j] -= prod[j] * z[i];
        }
        prod = std::move(next);
      }
      bool plausible = true;
      std::vector<Integer> cand(k + 1);
      for (std::size_t j = 0; j <= k && plausible; ++j) {
        const long double re = prod[j].real(), im = prod[j].imag();
        const long double tol = 1e-6L * (1 + std::fabs(re));
        if (std::fabs(im) > tol) plausible = false;
        const long double r = std::round(re);
        if (std::fabs(re - r) > tol || std::fabs(r) > 9e18L) plausible = false;
        if (plausible) cand[j] = Integer(static_cast<long long>(r));
      }
      if (plausible && divides(g, cand)) return true;
      std::size_t pos = k;
      while (pos > 0 && idx[pos - 1] == n - k + pos - 1) --pos;
      if (pos == 0) break;
      ++idx[pos - 1];
      for (std::size_t i = pos; i < k; ++i) idx[i] = idx[i - 1] + 1;
    }
  }
  return false;
}

}  // namespace

bool is_irreducible_over_q(const QPoly& fq) {
  const std::vector<Integer> f = primitive_integer(fq);
  const std::size_t n = f.size() - 1;
  if (n <= 1) return n == 1;
  if (n > kMaxDegree) throw Error(ErrorCode::constraint_violation, "degree too large for irreducibility test");

  std::bitset<kMaxDegree + 1> possible;
  possible.set();
  int good = 0;
  for (u64 p = 101; good < 40 && p < 100000; p += 2) {
    if (!is_prime(p)) continue;
    const Integer pp(p);
    Integer lc_mod = f.back() % pp;
    if (lc_mod == 0) continue;
    ModPoly fm(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
      Integer r = f[i] % pp;
      if (r < 0) r += pp;
      fm[i] = r.convert_to<u64>();
    }
    const u64 inv = minv(fm.back(), p);
    for (auto& c : fm) c = static_cast<u64>(static_cast<u128>(c) * inv % p);
    ModPoly deriv;
    for (std::size_t i = 1; i <= n; ++i) deriv.push_back(static_cast<u64>(static_cast<u128>(fm[i]) * i % p));
    mtrim(deriv);
    if (mgcd(fm, deriv, p).size() != 1) continue;
    ++good;
    std::bitset<kMaxDegree + 1> sums;
    sums.set(0);
    for (std::size_t d : factor_degrees(fm, p)) sums |= sums << d;
    possible &= sums;
    bool any = false;
    for (std::size_t k = 1; k < n; ++k) any = any || possible[k];
    if (!any) return true;
  }
  if (good == 0) throw Error(ErrorCode::constraint_violation, "no usable prime for irreducibility test");
  return !numeric_factor_search(f, possible);
}

}  // namespace tsurf::detail
