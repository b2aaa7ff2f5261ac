#include "perdyn/ffield.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>

#include "perdyn/error.hpp"

namespace perdyn {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;
using Poly = std::vector<u64>;  // over F_p, constant term first

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod(u64 a, u64 k, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (k > 0) {
    if (k & 1U) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    k >>= 1U;
  }
  return r;
}

u64 invmod(u64 a, u64 m) {
  // extended Euclid on signed 128-bit values
  __int128 t = 0, new_t = 1;
  __int128 r = m, new_r = a % m;
  while (new_r != 0) {
    const __int128 q = r / new_r;
    t -= q * new_t;
    std::swap(t, new_t);
    r -= q * new_r;
    std::swap(r, new_r);
  }
  if (r != 1) throw InvalidInput("element is not invertible");
  if (t < 0) t += m;
  return static_cast<u64>(t);
}

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mul(const Poly& a, const Poly& b, u64 p) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = (out[i + j] + mulmod(a[i], b[j], p)) % p;
  }
  trim(out);
  return out;
}

// Remainder modulo a polynomial g with nonzero leading coefficient.
Poly poly_mod(Poly a, const Poly& g, u64 p) {
  trim(a);
  const std::size_t dg = g.size() - 1;
  const u64 lead_inv = invmod(g.back(), p);
  while (a.size() > dg) {
    const u64 coef = mulmod(a.back(), lead_inv, p);
    const std::size_t shift = a.size() - 1 - dg;
    for (std::size_t k = 0; k <= dg; ++k) {
      a[shift + k] = (a[shift + k] + p - mulmod(coef, g[k], p)) % p;
    }
    trim(a);
  }
  return a;
}

Poly poly_sub(Poly a, const Poly& b, u64 p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
  trim(a);
  return a;
}

Poly poly_gcd(Poly a, Poly b, u64 p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const u64 inv = invmod(a.back(), p);
    for (auto& c : a) c = mulmod(c, inv, p);
  }
  return a;
}

Poly poly_powmod(Poly base, u64 k, const Poly& g, u64 p) {
  Poly result{1};
  base = poly_mod(std::move(base), g, p);
  while (k > 0) {
    if (k & 1U) result = poly_mod(poly_mul(result, base, p), g, p);
    k >>= 1U;
    if (k > 0) base = poly_mod(poly_mul(base, base, p), g, p);
  }
  return result;
}

u64 checked_pow(u64 p, unsigned f) {
  u64 q = 1;
  for (unsigned i = 0; i < f; ++i) {
    if (q > (std::numeric_limits<u64>::max() >> 2) / p) {
      throw CapExceeded("field order " + std::to_string(p) + "^" + std::to_string(f) + " too large");
    }
    q *= p;
  }
  return q;
}

} // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (u64 d : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % d == 0) return n == d;
  }
  // deterministic Miller-Rabin for 64-bit inputs
  u64 dd = n - 1;
  unsigned s = 0;
  while ((dd & 1U) == 0) {
    dd >>= 1U;
    ++s;
  }
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    u64 x = powmod(a, dd, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<u64> out;
  for (u64 d = 2; d * d <= n; ++d) {
    if (n % d != 0) continue;
    out.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) out.push_back(n);
  return out;
}

unsigned multiplicative_order(std::uint64_t a, std::uint64_t n) {
  if (n == 1) return 1;
  if (std::gcd(a % n, n) != 1) throw InvalidInput("order undefined: gcd(a, n) != 1");
  u64 x = a % n;
  unsigned k = 1;
  while (x != 1) {
    x = mulmod(x, a, n);
    ++k;
  }
  return k;
}

unsigned normalized_conductor(unsigned e) {
  if (e == 0) throw InvalidInput("conductor must be positive");
  return e % 4 == 2 ? e / 2 : e;
}

bool is_irreducible(std::uint64_t p, const std::vector<std::uint64_t>& monic) {
  if (monic.size() < 2 || monic.back() != 1) throw InvalidInput("is_irreducible expects a monic polynomial");
  const std::size_t n = monic.size() - 1;
  if (n == 1) return true;
  const Poly x{0, 1};
  std::vector<Poly> frob(n + 1);  // frob[k] = x^(p^k) mod g
  frob[0] = x;
  for (std::size_t k = 1; k <= n; ++k) frob[k] = poly_powmod(frob[k - 1], p, monic, p);
  if (poly_sub(frob[n], x, p) != Poly{}) return false;
  for (u64 r : prime_factors(n)) {
    const Poly g = poly_gcd(poly_sub(frob[n / r], x, p), monic, p);
    if (g.size() != 1) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

ResidueField::ResidueField(std::uint64_t p, unsigned f, std::vector<std::uint64_t> modulus)
    : p_(p), f_(f), q_(checked_pow(p, f)), modulus_(std::move(modulus)) {}

ResidueField make_field(std::uint64_t p, unsigned f) {
  if (!is_prime(p)) throw InvalidInput(std::to_string(p) + " is not prime");
  if (f < 1) throw InvalidInput("extension degree must be at least 1");
  if (p > (1ULL << 32)) throw CapExceeded("characteristic above 2^32 not supported");
  const u64 lower_count = checked_pow(p, f);
  if (f == 1) return ResidueField(p, 1, {0, 1});
  for (u64 idx = 0; idx < lower_count; ++idx) {
    Poly g(f + 1, 0);
    u64 rest = idx;
    for (unsigned i = 0; i < f; ++i) {
      g[i] = rest % p;
      rest /= p;
    }
    g[f] = 1;
    if (g[0] == 0) continue;  // divisible by x
    if (is_irreducible(p, g)) return ResidueField(p, f, std::move(g));
  }
  throw Error("no irreducible polynomial found");  // unreachable
}

FieldElement ResidueField::zero() const { return FieldElement{Poly(f_, 0)}; }

FieldElement ResidueField::one() const {
  FieldElement r = zero();
  r.coeffs[0] = 1 % p_;
  return r;
}

FieldElement ResidueField::from_int(std::int64_t n) const {
  FieldElement r = zero();
  const auto m = static_cast<std::int64_t>(p_);
  r.coeffs[0] = static_cast<u64>(((n % m) + m) % m);
  return r;
}

FieldElement ResidueField::from_bigint(const BigInt& n) const {
  FieldElement r = zero();
  BigInt m = n % p_;
  if (m < 0) m += p_;
  r.coeffs[0] = m.convert_to<u64>();
  return r;
}

FieldElement ResidueField::from_coeffs(std::vector<std::uint64_t> coeffs) const {
  for (auto& c : coeffs) c %= p_;
  Poly reduced = poly_mod(std::move(coeffs), modulus_, p_);
  reduced.resize(f_, 0);
  return FieldElement{std::move(reduced)};
}

FieldElement ResidueField::from_index(std::uint64_t index) const {
  if (index >= q_) throw InvalidInput("field index out of range");
  FieldElement r = zero();
  for (unsigned i = 0; i < f_; ++i) {
    r.coeffs[i] = index % p_;
    index /= p_;
  }
  return r;
}

std::uint64_t ResidueField::index(const FieldElement& a) const {
  u64 idx = 0;
  for (unsigned i = f_; i-- > 0;) idx = idx * p_ + a.coeffs[i];
  return idx;
}

bool ResidueField::is_zero(const FieldElement& a) const {
  return std::all_of(a.coeffs.begin(), a.coeffs.end(), [](u64 c) { return c == 0; });
}

FieldElement ResidueField::add(const FieldElement& a, const FieldElement& b) const {
  FieldElement r = a;
  for (unsigned i = 0; i < f_; ++i) r.coeffs[i] = (a.coeffs[i] + b.coeffs[i]) % p_;
  return r;
}

FieldElement ResidueField::sub(const FieldElement& a, const FieldElement& b) const {
  FieldElement r = a;
  for (unsigned i = 0; i < f_; ++i) r.coeffs[i] = (a.coeffs[i] + p_ - b.coeffs[i]) % p_;
  return r;
}

FieldElement ResidueField::neg(const FieldElement& a) const { return sub(zero(), a); }

FieldElement ResidueField::mul(const FieldElement& a, const FieldElement& b) const {
  if (f_ == 1) return FieldElement{{mulmod(a.coeffs[0], b.coeffs[0], p_)}};
  Poly prod = poly_mod(poly_mul(a.coeffs, b.coeffs, p_), modulus_, p_);
  prod.resize(f_, 0);
  return FieldElement{std::move(prod)};
}

FieldElement ResidueField::pow(const FieldElement& a, std::uint64_t k) const {
  FieldElement result = one();
  FieldElement base = a;
  while (k > 0) {
    if (k & 1U) result = mul(result, base);
    k >>= 1U;
    if (k > 0) base = mul(base, base);
  }
  return result;
}

FieldElement ResidueField::inv(const FieldElement& a) const {
  if (is_zero(a)) throw InvalidInput("zero has no inverse");
  if (f_ == 1) return FieldElement{{invmod(a.coeffs[0], p_)}};
  return pow(a, q_ - 2);
}

std::uint64_t ResidueField::element_order(const FieldElement& a) const {
  if (is_zero(a)) throw InvalidInput("zero has no multiplicative order");
  u64 ord = q_ - 1;
  for (u64 r : prime_factors(q_ - 1)) {
    while (ord % r == 0 && pow(a, ord / r) == one()) ord /= r;
  }
  return ord;
}

FieldElement ResidueField::primitive_element() const {
  for (u64 idx = 1; idx < q_; ++idx) {
    FieldElement g = from_index(idx);
    if (element_order(g) == q_ - 1) return g;
  }
  throw Error("no primitive element found");  // unreachable for a field
}

std::string ResidueField::to_string(const FieldElement& a) const {
  std::string out = "(";
  for (unsigned i = 0; i < f_; ++i) {
    if (i > 0) out += ",";
    out += std::to_string(a.coeffs[i]);
  }
  return out + ")";
}

// ---------------------------------------------------------------------------

FieldElement PrimeOfK::zeta_e_image() const {
  if (e == e_prime) return zeta_image;
  // e = 2e' with e' odd: -zeta^((e'+1)/2) is a primitive e-th root squaring to zeta.
  return field.neg(field.pow(zeta_image, (e_prime + 1) / 2));
}

std::vector<PrimeOfK> primes_above(std::uint64_t p, unsigned e) {
  if (!is_prime(p)) throw InvalidInput(std::to_string(p) + " is not prime");
  const unsigned ep = normalized_conductor(e);
  if (ep % p == 0) {
    throw RamifiedPrime(std::to_string(p) + " ramifies in Q(zeta_" + std::to_string(e) + ")");
  }
  const unsigned f = multiplicative_order(p, ep);
  ResidueField field = make_field(p, f);
  if (ep == 1) return {PrimeOfK{p, e, ep, field, field.one()}};

  const FieldElement g = field.primitive_element();
  const FieldElement root = field.pow(g, (field.order() - 1) / ep);

  // Group exponents k coprime to e' into Frobenius orbits {k p^i mod e'}.
  std::vector<bool> assigned(ep, false);
  std::vector<PrimeOfK> out;
  for (unsigned k = 1; k < ep; ++k) {
    if (assigned[k] || std::gcd(k, ep) != 1) continue;
    u64 best_index = std::numeric_limits<u64>::max();
    FieldElement best = field.zero();
    u64 kk = k;
    for (unsigned i = 0; i < f; ++i) {
      assigned[kk] = true;
      FieldElement z = field.pow(root, kk);
      const u64 idx = field.index(z);
      if (idx < best_index) {
        best_index = idx;
        best = std::move(z);
      }
      kk = kk * p % ep;
    }
    out.push_back(PrimeOfK{p, e, ep, field, std::move(best)});
  }
  std::sort(out.begin(), out.end(), [&](const PrimeOfK& a, const PrimeOfK& b) {
    return field.index(a.zeta_image) < field.index(b.zeta_image);
  });
  return out;
}

std::vector<PrimeOfK> prime_stream(unsigned e, std::uint64_t norm_bound) {
  if (norm_bound < 2) throw InvalidInput("norm bound must be at least 2");
  const unsigned ep = normalized_conductor(e);
  std::vector<bool> composite(norm_bound + 1, false);
  std::vector<PrimeOfK> out;
  for (u64 p = 2; p <= norm_bound; ++p) {
    if (composite[p]) continue;
    for (u64 m = p * p; m <= norm_bound; m += p) composite[m] = true;
    if (ep % p == 0) continue;
    const unsigned f = multiplicative_order(p, ep);
    // p^f <= norm_bound
    u64 norm = 1;
    bool within = true;
    for (unsigned i = 0; i < f && within; ++i) {
      if (norm > norm_bound / p) within = false;
      else norm *= p;
    }
    if (!within) continue;
    for (auto& prime : primes_above(p, e)) out.push_back(std::move(prime));
  }
  std::stable_sort(out.begin(), out.end(), [](const PrimeOfK& a, const PrimeOfK& b) {
    if (a.norm() != b.norm()) return a.norm() < b.norm();
    if (a.p != b.p) return a.p < b.p;
    return a.field.index(a.zeta_image) < b.field.index(b.zeta_image);
  });
  return out;
}

FieldElement reduce_cyclotomic(const CyclotomicInteger& c, const PrimeOfK& prime) {
  if (normalized_conductor(c.conductor()) != prime.e_prime) {
    throw InvalidInput("cyclotomic integer and prime belong to different fields");
  }
  const ResidueField& F = prime.field;
  // z denotes zeta_{c.conductor()}, which is either e' or 2e' for this field.
  const FieldElement z =
      c.conductor() == prime.e_prime ? prime.zeta_image
                                     : F.neg(F.pow(prime.zeta_image, (prime.e_prime + 1) / 2));
  const auto& coeffs = c.coeffs();
  FieldElement acc = F.zero();
  for (std::size_t i = coeffs.size(); i-- > 0;) acc = F.add(F.mul(acc, z), F.from_bigint(coeffs[i]));
  return acc;
}

} // namespace perdyn
