#include "perdyn/wreath.hpp"

#include "perdyn/error.hpp"

namespace perdyn {

Permutation WreathElement::flatten() const {
  const std::size_t m = top.degree();
  if (bottoms.size() != m) throw InvalidInput("wreath element needs one bottom per top point");
  const std::size_t d = bottoms.front().degree();
  std::vector<Permutation::Point> images(m * d);
  for (std::size_t i = 0; i < m; ++i) {
    if (bottoms[i].degree() != d) throw InvalidInput("wreath bottoms must share a degree");
    const std::size_t block = static_cast<std::size_t>(top(static_cast<Permutation::Point>(i))) * d;
    for (std::size_t j = 0; j < d; ++j) {
      images[i * d + j] = static_cast<Permutation::Point>(block + bottoms[i](static_cast<Permutation::Point>(j)));
    }
  }
  return Permutation(std::move(images), images.size());
}

namespace {

std::vector<Permutation> enumerate_product(const PermSet& top_set, const PermSet& bottom_set) {
  const std::size_t m = top_set.degree();
  const auto bottoms = bottom_set.elements();
  std::vector<Permutation> out;
  std::vector<std::size_t> digits(m, 0);
  for (const auto& top : top_set.elements()) {
    std::fill(digits.begin(), digits.end(), 0);
    for (;;) {
      WreathElement w{top, {}};
      w.bottoms.reserve(m);
      for (std::size_t i = 0; i < m; ++i) w.bottoms.push_back(bottoms[digits[i]]);
      out.push_back(w.flatten());
      std::size_t pos = 0;
      while (pos < m && ++digits[pos] == bottoms.size()) digits[pos++] = 0;
      if (pos == m) break;
    }
  }
  return out;
}

} // namespace

PermSet coset_wreath(const PermSet& top_set, const PermSet& bottom_set, std::size_t cap) {
  const std::size_t m = top_set.degree();
  BigInt required = top_set.size();
  for (std::size_t i = 0; i < m; ++i) required *= bottom_set.size();
  if (required > cap) {
    throw CapExceeded("wreath enumeration requires " + required.str() + " elements (cap " +
                      std::to_string(cap) + ")");
  }
  std::vector<Permutation> elements = enumerate_product(top_set, bottom_set);

  const bool any_plain = top_set.kind() == PermSetKind::plain || bottom_set.kind() == PermSetKind::plain;
  if (any_plain) return PermSet::plain(std::move(elements));
  if (top_set.kind() == PermSetKind::group && bottom_set.kind() == PermSetKind::group) {
    // Closure holds by construction; skip the quadratic check.
    return make_group_unchecked(std::move(elements));
  }
  const PermSet group = coset_wreath(top_set.reference_group(), bottom_set.reference_group(), cap);
  WreathElement rep{top_set.representative(),
                    std::vector<Permutation>(m, bottom_set.representative())};
  return make_coset_unchecked(std::move(elements), group, rep.flatten());
}

PermSet iterated_wreath(const PermSet& g, std::size_t n, std::size_t cap) {
  if (n == 0) throw InvalidInput("wreath depth must be positive");
  BigInt required = 1;
  BigInt level = 1;  // d^k
  for (std::size_t k = 0; k < n; ++k) {
    for (BigInt i = 0; i < level; ++i) {
      required *= g.size();
      if (required > cap) {
        throw CapExceeded("iterated wreath enumeration requires more than " + std::to_string(cap) +
                          " elements");
      }
    }
    level *= g.degree();
  }
  PermSet out = g;
  for (std::size_t k = 1; k < n; ++k) out = coset_wreath(out, g, cap);
  return out;
}

BigInt wreath_order(const BigInt& group_size, unsigned d, unsigned n) {
  if (d < 2 || n < 1) throw InvalidInput("wreath_order needs d >= 2 and n >= 1");
  BigInt exponent = 0;
  BigInt level = 1;
  for (unsigned k = 0; k < n; ++k) {
    exponent += level;
    level *= d;
  }
  return boost::multiprecision::pow(group_size, exponent.convert_to<unsigned>());
}

} // namespace perdyn
