#ifndef PERDYN_WREATH_HPP
#define PERDYN_WREATH_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "perdyn/permaction.hpp"
#include "perdyn/rational.hpp"

namespace perdyn {

inline constexpr std::size_t kDefaultEnumerationCap = 1'000'000;

// (top; bottoms[0], ..., bottoms[m-1]) acting on m*d points by
// (i, j) -> (top(i), bottoms[i](j)), with point (i, j) stored at i*d + j.
struct WreathElement {
  Permutation top;
  std::vector<Permutation> bottoms;

  Permutation flatten() const;
};

// Every flattened element with top in top_set and each bottom in bottom_set.
// Groups give a group; if either side is a coset (and neither is plain) the
// result is a coset of the wreath product of the reference groups.
PermSet coset_wreath(const PermSet& top_set, const PermSet& bottom_set,
                     std::size_t cap = kDefaultEnumerationCap);

// [g]^1 = g, [g]^n = coset_wreath([g]^(n-1), g).
PermSet iterated_wreath(const PermSet& g, std::size_t n, std::size_t cap = kDefaultEnumerationCap);

// |g|^((d^n - 1)/(d - 1)).
BigInt wreath_order(const BigInt& group_size, unsigned d, unsigned n);

} // namespace perdyn

#endif // PERDYN_WREATH_HPP
