#ifndef PERDYN_PERMACTION_HPP
#define PERDYN_PERMACTION_HPP

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "perdyn/rational.hpp"

namespace perdyn {

inline constexpr std::size_t kDefaultDegreeCap = 10'000;

// A bijection of {0, ..., n-1}; images()[i] is the destination of point i.
class Permutation {
public:
  using Point = std::uint32_t;

  explicit Permutation(std::vector<Point> images, std::size_t degree_cap = kDefaultDegreeCap);

  static Permutation identity(std::size_t degree);

  // Builds a permutation from disjoint-cycle notation such as "(0 1 2)(3 4)".
  // "()" or "" denotes the identity.
  static Permutation parse_cycles(std::string_view text, std::size_t degree);

  std::size_t degree() const { return images_.size(); }
  std::span<const Point> images() const { return images_; }
  Point operator()(Point i) const { return images_[i]; }

  Permutation inverse() const;
  bool is_identity() const;

  // Cycle notation with fixed points omitted; the identity prints as "()".
  std::string to_cycles() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation& a, const Permutation& b) {
    return a.images_ <=> b.images_;
  }

private:
  std::vector<Point> images_;
};

// Composition applies the right operand first: (a * b)(i) == a(b(i)).
Permutation operator*(const Permutation& a, const Permutation& b);

std::size_t trace(const Permutation& p);

enum class PermSetKind { group, coset, plain };

// A finite nonempty set of permutations of a common degree, stored sorted
// and duplicate-free. Coset sets keep their reference group and
// representative: elements == { h * rep : h in group }.
class PermSet {
public:
  static PermSet plain(std::vector<Permutation> elements);

  // Validates closure under composition and inverses by exhaustion.
  static PermSet group(std::vector<Permutation> elements);

  // Closure of the given generators (identity included).
  static PermSet generate(std::span<const Permutation> generators, std::size_t degree,
                          std::size_t order_cap = 1'000'000);

  // Right coset group * rep.
  static PermSet coset(const PermSet& group, const Permutation& rep);

  // Symmetric and cyclic groups used throughout tests and the CLI.
  static PermSet symmetric(std::size_t degree);
  static PermSet cyclic(std::size_t degree);

  std::size_t degree() const { return degree_; }
  std::size_t size() const { return elements_.size(); }
  PermSetKind kind() const { return kind_; }
  std::span<const Permutation> elements() const { return elements_; }
  bool contains(const Permutation& p) const;

  // For kind() == coset: the reference group and representative.
  // For kind() == group: *this and the identity.
  const PermSet& reference_group() const;
  const Permutation& representative() const;

  friend bool operator==(const PermSet& a, const PermSet& b) {
    return a.degree_ == b.degree_ && a.elements_ == b.elements_;
  }

private:
  PermSet(std::size_t degree, std::vector<Permutation> elements, PermSetKind kind);

  std::size_t degree_ = 0;
  std::vector<Permutation> elements_;
  PermSetKind kind_ = PermSetKind::plain;
  std::shared_ptr<const PermSet> group_;
  std::shared_ptr<const Permutation> rep_;
  friend PermSet make_coset_unchecked(std::vector<Permutation>, const PermSet&, const Permutation&);
  friend PermSet make_group_unchecked(std::vector<Permutation>);
};

// Builds a coset-kind set from elements already known to equal group * rep.
PermSet make_coset_unchecked(std::vector<Permutation> elements, const PermSet& group,
                             const Permutation& rep);

// Builds a group-kind set from elements already known to form a group.
PermSet make_group_unchecked(std::vector<Permutation> elements);

// Proportion of elements with at least one fixed point.
Rational fpp(const PermSet& s);

bool is_transitive(const PermSet& s);

// Average number of fixed points.
Rational mean_trace(const PermSet& s);

} // namespace perdyn

#endif // PERDYN_PERMACTION_HPP
