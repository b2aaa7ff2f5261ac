#ifndef PERDYN_CHEBBOUND_HPP
#define PERDYN_CHEBBOUND_HPP

#include <cstdint>

#include "perdyn/rational.hpp"

namespace perdyn {

// Data for the effective Chebotarev estimate at one prime of norm q.
struct BoundInputs {
  BigInt q;                 // residue norm
  unsigned m = 1;           // residue extension degree of the constant field
  unsigned n = 1;           // iterate
  unsigned d = 2;           // map degree
  BigInt B_order;           // order of the arithmetic monodromy group
  BigInt C_size = 1;        // size of the conjugacy class
  Rational fpp_value;       // proportion of elements with a fixed point
  std::uint64_t A_order = 1;  // degree of the constant field extension
  BigInt class_count_c;     // classes in the fixed-point locus; 0 selects B_order

  // Throws InvalidInput when a field is out of range.
  void validate() const;
  BigInt effective_class_count() const { return class_count_c == 0 ? B_order : class_count_c; }
};

// Rational r with sqrt(n) <= r < sqrt(n) + 2^-bits.
Rational sqrt_upper(const BigInt& n, unsigned bits = 64);

// B * n * (2d - 2)
BigInt genus_bound(const BigInt& B_order, unsigned n, unsigned d);

// n * (2d - 2)
std::uint64_t ramified_bound(unsigned n, unsigned d);

// 2 sqrt(q) (g C / B + C) + (1 + C) R, rounded up.
Rational murty_deviation(const BoundInputs& in, const BigInt& genus, std::uint64_t R_count);

struct ProportionBound {
  Rational main_term;   // A * FPP
  Rational error_term;  // everything that vanishes as q grows
  Rational total;
};

// Upper bound on |phi^n(P^1(F_q))| / (q + 1), which dominates the periodic proportion.
ProportionBound proportion_bound(const BoundInputs& in);

// Non-FPP part of proportion_bound as a function of q alone.
Rational proportion_error_term(const BigInt& q, unsigned n, unsigned d, const BigInt& B_order,
                               const BigInt& class_count_c);

// Smallest q with proportion_error_term(q') < delta for every q' >= q.
BigInt min_norm_for_delta(const Rational& delta, unsigned n, unsigned d, const BigInt& B_order,
                          const BigInt& class_count_c);

} // namespace perdyn

#endif // PERDYN_CHEBBOUND_HPP
