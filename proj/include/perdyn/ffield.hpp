#ifndef PERDYN_FFIELD_HPP
#define PERDYN_FFIELD_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "perdyn/cycmodel.hpp"
#include "perdyn/rational.hpp"

namespace perdyn {

bool is_prime(std::uint64_t n);

// Distinct prime factors in increasing order.
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

// Multiplicative order of a modulo n (gcd(a, n) must be 1).
unsigned multiplicative_order(std::uint64_t a, std::uint64_t n);

// e with the factor 2 dropped when e == 2 mod 4, since Q(zeta_e) = Q(zeta_{e/2}).
unsigned normalized_conductor(unsigned e);

// An element of F_{p^f}: coefficients a_0..a_{f-1} of a_0 + a_1 x + ...
// modulo the field's defining polynomial. Elements are ordered by their
// index a_0 + a_1 p + a_2 p^2 + ..., i.e. lexicographically from the top
// coefficient down.
struct FieldElement {
  std::vector<std::uint64_t> coeffs;

  friend bool operator==(const FieldElement&, const FieldElement&) = default;
};

// F_q with q = p^f, realized as F_p[x] / (modulus).
class ResidueField {
public:
  std::uint64_t p() const { return p_; }
  unsigned degree() const { return f_; }
  std::uint64_t order() const { return q_; }
  // Monic, constant term first, length f + 1. For f == 1 this is x.
  const std::vector<std::uint64_t>& modulus() const { return modulus_; }

  FieldElement zero() const;
  FieldElement one() const;
  FieldElement from_int(std::int64_t n) const;
  FieldElement from_bigint(const BigInt& n) const;
  FieldElement from_coeffs(std::vector<std::uint64_t> coeffs) const;
  FieldElement from_index(std::uint64_t index) const;
  std::uint64_t index(const FieldElement& a) const;

  bool is_zero(const FieldElement& a) const;
  FieldElement add(const FieldElement& a, const FieldElement& b) const;
  FieldElement sub(const FieldElement& a, const FieldElement& b) const;
  FieldElement neg(const FieldElement& a) const;
  FieldElement mul(const FieldElement& a, const FieldElement& b) const;
  FieldElement pow(const FieldElement& a, std::uint64_t k) const;
  // Throws InvalidInput for zero.
  FieldElement inv(const FieldElement& a) const;

  // Multiplicative order of a nonzero element.
  std::uint64_t element_order(const FieldElement& a) const;

  // Smallest-index generator of the multiplicative group.
  FieldElement primitive_element() const;

  // "(a0,a1,...)"
  std::string to_string(const FieldElement& a) const;

  friend bool operator==(const ResidueField& a, const ResidueField& b) {
    return a.p_ == b.p_ && a.modulus_ == b.modulus_;
  }

private:
  ResidueField(std::uint64_t p, unsigned f, std::vector<std::uint64_t> modulus);
  friend ResidueField make_field(std::uint64_t p, unsigned f);

  std::uint64_t p_;
  unsigned f_;
  std::uint64_t q_;
  std::vector<std::uint64_t> modulus_;
};

// F_{p^f} with the smallest-index monic irreducible modulus of degree f.
ResidueField make_field(std::uint64_t p, unsigned f);

// Rabin's test for a monic polynomial over F_p (constant term first).
bool is_irreducible(std::uint64_t p, const std::vector<std::uint64_t>& monic);

// A prime of Q(zeta_e) above p: its residue field and the image of
// zeta_{e'} there (e' = normalized_conductor(e)).
struct PrimeOfK {
  std::uint64_t p = 0;
  unsigned e = 1;
  unsigned e_prime = 1;
  ResidueField field;
  FieldElement zeta_image;

  std::uint64_t norm() const { return field.order(); }
  // Image of zeta_e itself (differs from zeta_image when e == 2 mod 4).
  FieldElement zeta_e_image() const;
};

// One prime per Frobenius orbit of primitive e'-th roots of unity, sorted by
// the smallest-index orbit member. Throws RamifiedPrime when p divides e'.
std::vector<PrimeOfK> primes_above(std::uint64_t p, unsigned e);

// All unramified primes of Q(zeta_e) with norm <= norm_bound, sorted by
// (norm, p, zeta_image index).
std::vector<PrimeOfK> prime_stream(unsigned e, std::uint64_t norm_bound);

// c evaluated at the image of zeta_e, coefficients reduced mod p.
FieldElement reduce_cyclotomic(const CyclotomicInteger& c, const PrimeOfK& prime);

} // namespace perdyn

#endif // PERDYN_FFIELD_HPP
