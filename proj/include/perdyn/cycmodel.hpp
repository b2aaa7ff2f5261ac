#ifndef PERDYN_CYCMODEL_HPP
#define PERDYN_CYCMODEL_HPP

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "perdyn/permaction.hpp"
#include "perdyn/rational.hpp"

namespace perdyn {

unsigned euler_phi(unsigned n);

// Integer coefficients of the n-th cyclotomic polynomial, constant term first.
std::vector<BigInt> cyclotomic_polynomial(unsigned n);

// Element of Z[z] / (Phi_e(z)), i.e. an integer of Q(zeta_e), stored as its
// coefficient vector in powers of z = zeta_e (length phi(e)).
class CyclotomicInteger {
public:
  explicit CyclotomicInteger(unsigned e, std::vector<BigInt> coeffs = {});
  static CyclotomicInteger from_integer(unsigned e, const BigInt& n);

  // Accepts sums of terms like "-3", "2z", "z^2", "1+2*z" (z denotes zeta_e).
  static CyclotomicInteger parse(unsigned e, std::string_view text);

  unsigned conductor() const { return e_; }
  const std::vector<BigInt>& coeffs() const { return coeffs_; }
  bool is_zero() const;

  CyclotomicInteger operator+(const CyclotomicInteger& o) const;
  CyclotomicInteger operator*(const CyclotomicInteger& o) const;
  CyclotomicInteger pow(unsigned k) const;

  // Image under zeta_e -> exp(2 pi i k / e), k coprime to e.
  std::complex<long double> embed(unsigned k) const;
  // Sum of coefficient magnitudes, an upper bound for every embedding.
  long double coefficient_mass() const;

  std::string to_string() const;

  friend bool operator==(const CyclotomicInteger&, const CyclotomicInteger&) = default;
  friend auto operator<=>(const CyclotomicInteger& a, const CyclotomicInteger& b) {
    return a.coeffs_ <=> b.coeffs_;
  }

private:
  unsigned e_;
  std::vector<BigInt> coeffs_;
};

// Exponents k in [0, e) coprime to e: one complex embedding each.
std::vector<unsigned> embedding_exponents(unsigned e);

struct CycSetting {
  unsigned d = 2;
  unsigned e = 1;
  CyclotomicInteger c{1};

  CycSetting(unsigned d, unsigned e, CyclotomicInteger c);

  // "d=3 e=1 c=1", "d=2 e=3 c=1+2z"; e defaults to 1 and c to 1.
  static CycSetting parse(std::string_view text);
  std::string to_string() const;
};

// tau_{m,j}: i -> m*i + j on Z/d.
struct AffineElement {
  unsigned m = 1;
  unsigned j = 0;

  unsigned apply(unsigned i, unsigned d) const { return static_cast<unsigned>((1ULL * m * i + j) % d); }
  Permutation to_permutation(unsigned d) const;

  friend bool operator==(const AffineElement&, const AffineElement&) = default;
  friend auto operator<=>(const AffineElement&, const AffineElement&) = default;
};

struct GaloisData {
  unsigned d = 0;
  std::vector<unsigned> A;             // sorted units m
  std::vector<AffineElement> G;        // tau_{1,j}
  std::vector<AffineElement> B1;       // tau_{m,j}, m in A, sorted by (m, j)

  std::vector<AffineElement> coset(unsigned m) const;
  PermSet translation_group() const;
  // { tau_{m,j} : j } as the coset G * tau_{m,0}.
  PermSet coset_permset(unsigned m) const;
  PermSet b1_permset() const;
};

// { m in (Z/d)^* : m == 1 mod gcd(e, d) }: the Galois group of
// Q(zeta_e, zeta_d) over Q(zeta_e) acting on zeta_d.
std::vector<unsigned> galois_A(unsigned d, unsigned e);

GaloisData build_B1(unsigned d, unsigned e);
inline GaloisData build_B1(const CycSetting& s) { return build_B1(s.d, s.e); }

enum class CosetStatus { has_fpf_element, all_have_fixed_points };

// tau_{m,j} fixes a point iff gcd(m-1, d) divides j.
CosetStatus coset_status(unsigned m, unsigned d);

enum class Preperiodicity { preperiodic, not_preperiodic, undecided };

struct OrbitAnalysis {
  Preperiodicity verdict = Preperiodicity::undecided;
  std::vector<CyclotomicInteger> orbit;  // 0, f(0), ... as far as computed
  // For not_preperiodic: index into orbit and the embedding exponent whose
  // absolute value passed the escape radius.
  std::optional<std::size_t> escape_index;
  std::optional<unsigned> escape_embedding;
};

inline constexpr std::size_t kDefaultPreperiodIterations = 64;

OrbitAnalysis analyze_zero_orbit(const CycSetting& s, std::size_t max_iter = kDefaultPreperiodIterations);

inline Preperiodicity is_zero_preperiodic(const CycSetting& s,
                                          std::size_t max_iter = kDefaultPreperiodIterations) {
  return analyze_zero_orbit(s, max_iter).verdict;
}

// 1 + |sigma_k(c)|, the escape radius in embedding k.
long double escape_radius(const CyclotomicInteger& c, unsigned k);

// True when |sigma_k(z)| exceeds the escape radius with a guard band.
bool certified_escape(const CyclotomicInteger& z, const CyclotomicInteger& c, unsigned k);

enum class Regime { b, c };

struct RegimeReport {
  // (a) always holds under the hypothesis.
  bool holds_a = true;
  bool holds_b = false;
  bool holds_c = false;
  // Each m in A with a fixed-point-free element, paired with a witness j.
  std::vector<std::pair<unsigned, unsigned>> fpf_witnesses;
  // Each m in A whose whole coset has fixed points.
  std::vector<unsigned> all_fixed_witnesses;

  Regime regime() const { return holds_c ? Regime::c : Regime::b; }
  std::string summary() const;
};

// Requires preper == not_preperiodic; otherwise throws HypothesisFailure.
RegimeReport classify_regime(const CycSetting& s, Preperiodicity preper);

} // namespace perdyn

#endif // PERDYN_CYCMODEL_HPP
