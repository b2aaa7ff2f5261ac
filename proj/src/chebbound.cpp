#include "perdyn/chebbound.hpp"

#include "perdyn/error.hpp"

namespace perdyn {

void BoundInputs::validate() const {
  if (q < 2) throw InvalidInput("residue norm must be at least 2");
  if (n < 1) throw InvalidInput("iterate must be positive");
  if (d < 2) throw InvalidInput("map degree must be at least 2");
  if (B_order < 1) throw InvalidInput("monodromy order must be positive");
  if (C_size < 0) throw InvalidInput("class size must be nonnegative");
  if (fpp_value < 0 || fpp_value > 1) throw InvalidInput("fixed point proportion must lie in [0, 1]");
  if (A_order < 1) throw InvalidInput("constant field degree must be positive");
  if (m < 1 || m > A_order) throw InvalidInput("residue extension degree must lie in [1, A_order]");
  if (class_count_c < 0) throw InvalidInput("class count must be nonnegative");
}

Rational sqrt_upper(const BigInt& n, unsigned bits) {
  if (n < 0) throw InvalidInput("square root of a negative number");
  const BigInt scale = BigInt(1) << bits;
  const BigInt scaled = n * scale * scale;
  BigInt root = boost::multiprecision::sqrt(scaled);
  if (root * root != scaled) root += 1;
  return Rational(root, scale);
}

BigInt genus_bound(const BigInt& B_order, unsigned n, unsigned d) {
  if (d == 0) throw InvalidInput("map degree must be positive");
  return B_order * n * (2 * BigInt(d) - 2);
}

std::uint64_t ramified_bound(unsigned n, unsigned d) {
  if (d == 0) throw InvalidInput("map degree must be positive");
  return static_cast<std::uint64_t>(n) * (2ULL * d - 2);
}

Rational murty_deviation(const BoundInputs& in, const BigInt& genus, std::uint64_t R_count) {
  in.validate();
  const Rational root = sqrt_upper(in.q);
  const Rational C(in.C_size);
  return 2 * root * (Rational(genus) * C / Rational(in.B_order) + C) + (1 + C) * R_count;
}

Rational proportion_error_term(const BigInt& q, unsigned n, unsigned d, const BigInt& B_order,
                               const BigInt& class_count_c) {
  const BigInt g = genus_bound(B_order, n, d);
  const std::uint64_t R = ramified_bound(n, d);
  const Rational denom(q + 1);
  return 2 * sqrt_upper(q) * Rational(g + B_order) / denom + Rational((class_count_c + B_order + 1) * R) / denom;
}

ProportionBound proportion_bound(const BoundInputs& in) {
  in.validate();
  ProportionBound out;
  out.main_term = Rational(in.A_order) * in.fpp_value;
  out.error_term = proportion_error_term(in.q, in.n, in.d, in.B_order, in.effective_class_count());
  out.total = out.main_term + out.error_term;
  return out;
}

BigInt min_norm_for_delta(const Rational& delta, unsigned n, unsigned d, const BigInt& B_order,
                          const BigInt& class_count_c) {
  if (delta <= 0) throw InvalidInput("delta must be positive");
  const BigInt c = class_count_c == 0 ? B_order : class_count_c;
  auto passes = [&](const BigInt& q) { return proportion_error_term(q, n, d, B_order, c) < delta; };
  // The exact term 2 sqrt(q)/(q+1) (g+B) + (c+B+1) R/(q+1) decreases for q >= 1, and the
  // computed term bounds it from above, so the exact term stays below delta beyond q.
  if (passes(1)) return 1;
  BigInt lo = 1, hi = 2;
  while (!passes(hi)) {
    lo = hi;
    hi *= 2;
  }
  while (hi - lo > 1) {
    const BigInt mid = (lo + hi) / 2;
    if (passes(mid)) hi = mid;
    else lo = mid;
  }
  return hi;
}

} // namespace perdyn
