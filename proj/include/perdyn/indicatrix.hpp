#ifndef PERDYN_INDICATRIX_HPP
#define PERDYN_INDICATRIX_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "perdyn/permaction.hpp"
#include "perdyn/rational.hpp"

namespace perdyn {

// Probability generating polynomial of the fixed-point count of a set of
// permutations: coefficient k is Prob(trace == k).
//
// Coefficients are nonnegative and sum to exactly 1. Trailing zero
// coefficients are trimmed, but the constant term is always stored.
class IndicatrixPoly {
public:
  explicit IndicatrixPoly(std::vector<Rational> coeffs);

  const std::vector<Rational>& coeffs() const { return coeffs_; }
  std::size_t degree() const { return coeffs_.size() - 1; }
  const Rational& constant_term() const { return coeffs_.front(); }

  // "2/3 + 1/3*x^3"
  std::string to_text() const;
  static IndicatrixPoly parse_text(std::string_view text);

  // JSON array of "p/q" coefficient strings, constant term first.
  std::string to_json() const;
  static IndicatrixPoly parse_json(std::string_view json);

  friend bool operator==(const IndicatrixPoly&, const IndicatrixPoly&) = default;

private:
  std::vector<Rational> coeffs_;
};

IndicatrixPoly indicatrix_of(const PermSet& s);

Rational value_at(const IndicatrixPoly& f, const Rational& x);

// k-th derivative evaluated at x.
Rational derivative_value_at(const IndicatrixPoly& f, const Rational& x, unsigned order = 1);

Rational derivative_at_one(const IndicatrixPoly& f);

inline constexpr std::size_t kMaxComposedDegree = 64;

// Coefficients of outer(inner(x)). Limited to composite degree 64.
IndicatrixPoly compose(const IndicatrixPoly& outer, const IndicatrixPoly& inner);

// Closed interval [lo, hi] with exact rational endpoints.
struct IntervalRational {
  Rational lo;
  Rational hi;

  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
  bool is_exact() const { return lo == hi; }
  Rational width() const { return hi - lo; }
};

struct IterateOptions {
  // Exact evaluation continues while iterate denominators stay within this
  // many bits; afterwards evaluation switches to outward-rounded intervals.
  std::size_t denominator_cap_bits = 128;
};

inline constexpr std::size_t kDefaultIteratePrecision = 256;
inline constexpr std::size_t kMaxIteratePrecision = 4096;

// Enclosure of the n-fold iterate f(f(...f(0))) of width at most
// 2^(2 - precision).
IntervalRational iterate_at_zero(const IndicatrixPoly& f, std::size_t n,
                                 std::size_t precision = kDefaultIteratePrecision,
                                 IterateOptions options = {});

struct EpsilonIndexOptions {
  std::size_t initial_precision = kDefaultIteratePrecision;
  std::size_t max_precision = kMaxIteratePrecision;
  std::size_t max_iterations = 10'000'000;
  IterateOptions iterate = {};
};

// Smallest n with 1 - f^n(0) < epsilon, or nullopt when the constant term is
// zero (every iterate is 0, so the proportion never drops).
std::optional<std::size_t> epsilon_index(const IndicatrixPoly& f, const Rational& epsilon,
                                         EpsilonIndexOptions options = {});

} // namespace perdyn

#endif // PERDYN_INDICATRIX_HPP
