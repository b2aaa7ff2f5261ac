#ifndef PERDYN_FFDYN_HPP
#define PERDYN_FFDYN_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "perdyn/cycmodel.hpp"
#include "perdyn/ffield.hpp"

namespace perdyn {

// A point of P^1(F_q): a field element or infinity.
struct ProjPoint {
  std::optional<FieldElement> value;

  static ProjPoint infinity() { return {}; }
  static ProjPoint finite(FieldElement x) { return {std::move(x)}; }
  bool is_infinity() const { return !value.has_value(); }

  friend bool operator==(const ProjPoint&, const ProjPoint&) = default;
};

enum class MapKind { power_plus_c, general_rational };

// A map of good reduction on P^1(F_q). Points are indexed 0..q-1 by field
// element index, with index q standing for infinity.
class ReducedMap {
public:
  // x^d + c over any residue field.
  static ReducedMap power_plus_c(ResidueField field, unsigned d, FieldElement c);

  // p(x)/q(x) over a prime field, coefficients constant term first. Throws
  // BadReduction when the homogenized numerator and denominator share a
  // projective zero.
  static ReducedMap rational(ResidueField field, std::vector<std::uint64_t> numerator,
                             std::vector<std::uint64_t> denominator);

  // Integer coefficients are divided by their common content, then reduced mod p.
  static ReducedMap rational_from_integers(std::uint64_t p, const std::vector<BigInt>& numerator,
                                           const std::vector<BigInt>& denominator);

  MapKind kind() const { return kind_; }
  const ResidueField& field() const { return field_; }
  unsigned degree() const { return degree_; }
  // Characteristic at most the degree.
  bool wild() const { return field_.p() <= degree_; }
  const FieldElement& constant() const { return c_; }
  const std::vector<std::uint64_t>& numerator() const { return num_; }
  const std::vector<std::uint64_t>& denominator() const { return den_; }

  std::uint64_t point_count() const { return field_.order() + 1; }
  std::uint64_t index_of(const ProjPoint& pt) const;
  ProjPoint point_at(std::uint64_t index) const;

  ProjPoint apply(const ProjPoint& pt) const;

private:
  ReducedMap(ResidueField field, MapKind kind) : field_(std::move(field)), kind_(kind) {}

  ResidueField field_;
  MapKind kind_;
  unsigned degree_ = 0;
  FieldElement c_;
  std::vector<std::uint64_t> num_;
  std::vector<std::uint64_t> den_;
};

// Resultant of the degree-D homogenizations of two polynomials over F_p.
std::uint64_t homogeneous_resultant(std::uint64_t p, const std::vector<std::uint64_t>& a,
                                    const std::vector<std::uint64_t>& b, unsigned degree);

// x^d + reduce_cyclotomic(c). Throws RamifiedPrime for primes dividing e'.
ReducedMap reduce_map(const CycSetting& s, const PrimeOfK& prime);

inline constexpr std::uint64_t kDefaultGraphCap = 20'000'000;

struct FunctionalGraph {
  std::vector<std::uint32_t> successor;

  std::size_t size() const { return successor.size(); }
};

FunctionalGraph build_graph(const ReducedMap& map, std::uint64_t cap = kDefaultGraphCap);

// Sorted point indices.
using PointSet = std::vector<std::uint32_t>;

// Points on cycles, by iterative three-colour traversal.
PointSet periodic_by_cycles(const FunctionalGraph& g);

struct ImageIteration {
  PointSet stable;                   // the eventual image, equal to the periodic set
  std::vector<std::uint64_t> sizes;  // |S_0|, |S_1|, ... through the first repeat
};

// S_0 = all points, S_{k+1} = image of S_k, until the size stops changing.
ImageIteration periodic_by_image_iteration(const FunctionalGraph& g);

// Same result in O(q): a point lies in S_n iff it ends a backward chain of
// length n, so peeling in-degree-zero points layer by layer gives every |S_n|.
ImageIteration image_profile(const FunctionalGraph& g);

// |S_n| for any n >= 0, extending the stabilized tail.
std::uint64_t image_size(const ImageIteration& it, std::size_t n);

bool is_bijective(const FunctionalGraph& g);

} // namespace perdyn

#endif // PERDYN_FFDYN_HPP
