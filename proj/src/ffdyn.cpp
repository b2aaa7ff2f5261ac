#include "perdyn/ffdyn.hpp"

#include <algorithm>
#include <limits>

#include "perdyn/error.hpp"

namespace perdyn {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

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

u64 invmod(u64 a, u64 p) { return powmod(a, p - 2, p); }

void trim(std::vector<u64>& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

u64 horner(const std::vector<u64>& a, u64 x, u64 p) {
  u64 acc = 0;
  for (std::size_t i = a.size(); i-- > 0;) acc = (mulmod(acc, x, p) + a[i]) % p;
  return acc;
}

u64 coeff(const std::vector<u64>& a, std::size_t i) { return i < a.size() ? a[i] : 0; }

u64 determinant_mod(std::vector<std::vector<u64>> m, u64 p) {
  const std::size_t n = m.size();
  u64 det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m[pivot][col] == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      det = (p - det) % p;
    }
    det = mulmod(det, m[col][col], p);
    const u64 inv = invmod(m[col][col], p);
    for (std::size_t r = col + 1; r < n; ++r) {
      if (m[r][col] == 0) continue;
      const u64 factor = mulmod(m[r][col], inv, p);
      for (std::size_t k = col; k < n; ++k) {
        m[r][k] = (m[r][k] + p - mulmod(factor, m[col][k], p)) % p;
      }
    }
  }
  return det;
}

} // namespace

std::uint64_t homogeneous_resultant(std::uint64_t p, const std::vector<std::uint64_t>& a,
                                    const std::vector<std::uint64_t>& b, unsigned degree) {
  if (degree == 0) throw InvalidInput("resultant needs degree >= 1");
  const std::size_t D = degree;
  std::vector<std::vector<u64>> syl(2 * D, std::vector<u64>(2 * D, 0));
  // Rows hold shifted coefficient vectors, highest degree first.
  for (std::size_t r = 0; r < D; ++r) {
    for (std::size_t k = 0; k <= D; ++k) {
      syl[r][r + k] = coeff(a, D - k) % p;
      syl[D + r][r + k] = coeff(b, D - k) % p;
    }
  }
  return determinant_mod(std::move(syl), p);
}

ReducedMap ReducedMap::power_plus_c(ResidueField field, unsigned d, FieldElement c) {
  if (d == 0) throw InvalidInput("map degree must be positive");
  if (c.coeffs.size() != field.degree()) throw InvalidInput("constant does not belong to the field");
  ReducedMap m(std::move(field), MapKind::power_plus_c);
  m.degree_ = d;
  m.c_ = std::move(c);
  m.num_.assign(d + 1, 0);
  m.num_[d] = 1;
  m.num_[0] = m.field_.degree() == 1 ? m.c_.coeffs[0] : 0;
  m.den_ = {1};
  return m;
}

ReducedMap ReducedMap::rational(ResidueField field, std::vector<std::uint64_t> numerator,
                                std::vector<std::uint64_t> denominator) {
  if (field.degree() != 1) throw InvalidInput("general rational maps are supported over prime fields only");
  const u64 p = field.p();
  for (auto& a : numerator) a %= p;
  for (auto& b : denominator) b %= p;
  trim(numerator);
  trim(denominator);
  if (denominator.empty()) throw BadReduction("denominator vanishes identically mod " + std::to_string(p));
  const std::size_t D = std::max(numerator.size(), denominator.size()) - 1;
  if (D == 0) throw InvalidInput("constant map has degree 0");
  if (homogeneous_resultant(p, numerator, denominator, static_cast<unsigned>(D)) == 0) {
    throw BadReduction("numerator and denominator share a zero mod " + std::to_string(p));
  }
  ReducedMap m(std::move(field), MapKind::general_rational);
  m.degree_ = static_cast<unsigned>(D);
  m.c_ = m.field_.zero();
  m.num_ = std::move(numerator);
  m.den_ = std::move(denominator);
  return m;
}

ReducedMap ReducedMap::rational_from_integers(std::uint64_t p, const std::vector<BigInt>& numerator,
                                              const std::vector<BigInt>& denominator) {
  BigInt content = 0;
  for (const auto* v : {&numerator, &denominator}) {
    for (const auto& a : *v) content = boost::multiprecision::gcd(content, a);
  }
  if (content == 0) throw InvalidInput("map has no nonzero coefficient");
  ResidueField field = make_field(p, 1);
  auto reduce = [&](const std::vector<BigInt>& v) {
    std::vector<u64> out;
    for (const auto& a : v) out.push_back(field.from_bigint(a / content).coeffs[0]);
    return out;
  };
  return rational(std::move(field), reduce(numerator), reduce(denominator));
}

std::uint64_t ReducedMap::index_of(const ProjPoint& pt) const {
  return pt.is_infinity() ? field_.order() : field_.index(*pt.value);
}

ProjPoint ReducedMap::point_at(std::uint64_t index) const {
  if (index == field_.order()) return ProjPoint::infinity();
  return ProjPoint::finite(field_.from_index(index));
}

ProjPoint ReducedMap::apply(const ProjPoint& pt) const {
  if (kind_ == MapKind::power_plus_c) {
    if (pt.is_infinity()) return pt;
    return ProjPoint::finite(field_.add(field_.pow(*pt.value, degree_), c_));
  }
  const u64 p = field_.p();
  if (pt.is_infinity()) {
    // Compare the degree-D coefficients.
    const u64 a = coeff(num_, degree_), b = coeff(den_, degree_);
    if (b == 0) return ProjPoint::infinity();
    return ProjPoint::finite(field_.from_int(static_cast<std::int64_t>(mulmod(a, invmod(b, p), p))));
  }
  const u64 x = pt.value->coeffs[0];
  const u64 den = horner(den_, x, p);
  if (den == 0) return ProjPoint::infinity();
  const u64 y = mulmod(horner(num_, x, p), invmod(den, p), p);
  return ProjPoint::finite(field_.from_int(static_cast<std::int64_t>(y)));
}

ReducedMap reduce_map(const CycSetting& s, const PrimeOfK& prime) {
  if (normalized_conductor(s.e) % prime.p == 0) {
    throw RamifiedPrime(std::to_string(prime.p) + " ramifies in Q(zeta_" + std::to_string(s.e) + ")");
  }
  return ReducedMap::power_plus_c(prime.field, s.d, reduce_cyclotomic(s.c, prime));
}

FunctionalGraph build_graph(const ReducedMap& map, std::uint64_t cap) {
  cap = std::min<u64>(cap, std::numeric_limits<std::uint32_t>::max());
  const u64 n = map.point_count();
  if (n > cap) {
    throw CapExceeded("graph of " + std::to_string(n) + " points exceeds cap " + std::to_string(cap));
  }
  const ResidueField& F = map.field();
  const u64 p = F.p(), q = F.order();
  FunctionalGraph g;
  g.successor.resize(n);
  g.successor[q] = static_cast<std::uint32_t>(map.index_of(map.apply(ProjPoint::infinity())));

  if (map.kind() == MapKind::general_rational) {
    std::vector<u64> inverse(p, 0);
    for (u64 x = 1; x < p; ++x) inverse[x] = invmod(x, p);
    for (u64 x = 0; x < p; ++x) {
      const u64 den = horner(map.denominator(), x, p);
      g.successor[x] = den == 0 ? static_cast<std::uint32_t>(q)
                                : static_cast<std::uint32_t>(mulmod(horner(map.numerator(), x, p), inverse[den], p));
    }
    return g;
  }

  const unsigned d = map.degree();
  if (F.degree() == 1) {
    const u64 c = map.constant().coeffs[0];
    if (d > 16) {
      for (u64 x = 0; x < p; ++x) g.successor[x] = static_cast<std::uint32_t>((powmod(x, d, p) + c) % p);
      return g;
    }
    // Forward differences of x^d + c: d modular additions per point.
    std::vector<u64> diff(d + 1);
    for (unsigned k = 0; k <= d; ++k) diff[k] = (powmod(k, d, p) + c) % p;
    for (unsigned order = 1; order <= d; ++order) {
      for (unsigned k = d; k >= order; --k) diff[k] = (diff[k] + p - diff[k - 1]) % p;
    }
    for (u64 x = 0; x < p; ++x) {
      g.successor[x] = static_cast<std::uint32_t>(diff[0]);
      for (unsigned k = 0; k < d; ++k) {
        diff[k] += diff[k + 1];
        if (diff[k] >= p) diff[k] -= p;
      }
    }
    return g;
  }

  // Extension field: x^d through discrete-log tables, then digit-wise addition of c.
  std::vector<std::uint32_t> exp_table(q - 1), log_table(q, 0);
  const FieldElement gen = F.primitive_element();
  FieldElement cur = F.one();
  for (u64 k = 0; k + 1 < q; ++k) {
    const u64 idx = F.index(cur);
    exp_table[k] = static_cast<std::uint32_t>(idx);
    log_table[idx] = static_cast<std::uint32_t>(k);
    cur = F.mul(cur, gen);
  }
  const unsigned f = F.degree();
  const std::vector<u64>& cdig = map.constant().coeffs;
  auto add_c = [&](u64 idx) {
    u64 out = 0, place = 1;
    for (unsigned i = 0; i < f; ++i) {
      out += ((idx % p + cdig[i]) % p) * place;
      idx /= p;
      place *= p;
    }
    return out;
  };
  const u64 d_mod = d % (q - 1);
  for (u64 x = 0; x < q; ++x) {
    const u64 xd = x == 0 ? 0 : exp_table[static_cast<u64>(log_table[x]) * d_mod % (q - 1)];
    g.successor[x] = static_cast<std::uint32_t>(add_c(xd));
  }
  return g;
}

PointSet periodic_by_cycles(const FunctionalGraph& g) {
  enum : std::uint8_t { white, grey, black };
  const std::size_t n = g.size();
  std::vector<std::uint8_t> colour(n, white);
  std::vector<std::uint8_t> periodic(n, 0);
  std::vector<std::uint32_t> path;
  for (std::size_t start = 0; start < n; ++start) {
    if (colour[start] != white) continue;
    path.clear();
    std::uint32_t v = static_cast<std::uint32_t>(start);
    while (colour[v] == white) {
      colour[v] = grey;
      path.push_back(v);
      v = g.successor[v];
    }
    if (colour[v] == grey) {
      // v closes a new cycle; walk it once from v.
      std::uint32_t w = v;
      do {
        periodic[w] = 1;
        w = g.successor[w];
      } while (w != v);
    }
    for (auto u : path) colour[u] = black;
  }
  PointSet out;
  for (std::size_t i = 0; i < n; ++i) {
    if (periodic[i]) out.push_back(static_cast<std::uint32_t>(i));
  }
  return out;
}

ImageIteration periodic_by_image_iteration(const FunctionalGraph& g) {
  const std::size_t n = g.size();
  ImageIteration out;
  std::vector<std::uint32_t> cur(n), next;
  for (std::size_t i = 0; i < n; ++i) cur[i] = static_cast<std::uint32_t>(i);
  std::vector<std::uint32_t> stamp(n, 0);
  out.sizes.push_back(n);
  for (std::uint32_t round = 1;; ++round) {
    next.clear();
    for (auto v : cur) {
      const auto s = g.successor[v];
      if (stamp[s] != round) {
        stamp[s] = round;
        next.push_back(s);
      }
    }
    out.sizes.push_back(next.size());
    const bool stable = next.size() == cur.size();
    std::swap(cur, next);
    if (stable) break;
  }
  std::sort(cur.begin(), cur.end());
  out.stable = std::move(cur);
  return out;
}

ImageIteration image_profile(const FunctionalGraph& g) {
  const std::size_t n = g.size();
  std::vector<std::uint32_t> indeg(n, 0), height(n, 0), queue;
  for (auto s : g.successor) ++indeg[s];
  queue.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (indeg[i] == 0) queue.push_back(static_cast<std::uint32_t>(i));
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const auto u = queue[head];
    const auto w = g.successor[u];
    height[w] = std::max(height[w], height[u] + 1);
    if (--indeg[w] == 0) queue.push_back(w);
  }
  ImageIteration out;
  for (std::size_t i = 0; i < n; ++i) {
    if (indeg[i] > 0) out.stable.push_back(static_cast<std::uint32_t>(i));
  }
  if (queue.empty()) {
    out.sizes = {n, n};
    return out;
  }
  std::uint32_t top = 0;
  for (auto u : queue) top = std::max(top, height[u]);
  std::vector<std::uint64_t> at_height(top + 1, 0);
  for (auto u : queue) ++at_height[height[u]];
  // |S_k| = |Per| + #{transient points of height >= k}
  std::uint64_t size = n;
  for (std::uint32_t k = 0; k <= top; ++k) {
    out.sizes.push_back(size);
    size -= at_height[k];
  }
  out.sizes.push_back(size);
  out.sizes.push_back(size);
  return out;
}

std::uint64_t image_size(const ImageIteration& it, std::size_t n) {
  if (it.sizes.empty()) throw InvalidInput("empty image-size sequence");
  return n < it.sizes.size() ? it.sizes[n] : it.sizes.back();
}

bool is_bijective(const FunctionalGraph& g) {
  std::vector<std::uint8_t> hit(g.size(), 0);
  for (auto s : g.successor) {
    if (hit[s]) return false;
    hit[s] = 1;
  }
  return true;
}

} // namespace perdyn
