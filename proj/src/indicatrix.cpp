#include "perdyn/indicatrix.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "json.hpp"

#include "perdyn/error.hpp"

namespace perdyn {

namespace {

void trim_trailing_zeros(std::vector<Rational>& c) {
  while (c.size() > 1 && c.back() == 0) c.pop_back();
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Polynomial product over the rationals, used only by compose().
std::vector<Rational> multiply(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  std::vector<Rational> out(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

} // namespace

IndicatrixPoly::IndicatrixPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw InvalidInput("indicatrix needs at least a constant term");
  Rational sum = 0;
  for (const auto& c : coeffs_) {
    if (c < 0) throw InvalidInput("indicatrix coefficients must be nonnegative");
    sum += c;
  }
  if (sum != 1) throw InvalidInput("indicatrix coefficients must sum to 1, got " + to_string(sum));
  trim_trailing_zeros(coeffs_);
}

std::string IndicatrixPoly::to_text() const {
  std::string out;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (coeffs_[k] == 0) continue;
    if (!out.empty()) out += " + ";
    out += to_string(coeffs_[k]);
    if (k == 1) out += "*x";
    if (k > 1) out += "*x^" + std::to_string(k);
  }
  return out;
}

IndicatrixPoly IndicatrixPoly::parse_text(std::string_view text) {
  std::map<std::size_t, Rational> terms;
  std::string_view rest = text;
  while (true) {
    const auto plus = rest.find('+');
    const std::string_view term = trim(rest.substr(0, plus));
    if (term.empty()) throw InvalidInput("empty term in polynomial '" + std::string(text) + "'");

    Rational coeff = 1;
    std::size_t power = 0;
    const auto xpos = term.find('x');
    if (xpos == std::string_view::npos) {
      coeff = parse_rational(term);
    } else {
      std::string_view head = trim(term.substr(0, xpos));
      if (!head.empty()) {
        if (head.back() != '*') throw InvalidInput("expected '*' before x in '" + std::string(term) + "'");
        head.remove_suffix(1);
        coeff = parse_rational(head);
      }
      std::string_view tail = trim(term.substr(xpos + 1));
      power = 1;
      if (!tail.empty()) {
        if (tail.front() != '^') throw InvalidInput("expected '^' after x in '" + std::string(term) + "'");
        tail.remove_prefix(1);
        const Rational p = parse_rational(tail);
        if (denominator(p) != 1 || p < 0) throw InvalidInput("bad exponent in '" + std::string(term) + "'");
        power = numerator(p).convert_to<std::size_t>();
      }
    }
    terms[power] += coeff;
    if (plus == std::string_view::npos) break;
    rest = rest.substr(plus + 1);
  }
  std::vector<Rational> coeffs(terms.rbegin()->first + 1, Rational(0));
  for (const auto& [k, c] : terms) coeffs[k] = c;
  return IndicatrixPoly(std::move(coeffs));
}

std::string IndicatrixPoly::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : coeffs_) arr.push_back(to_string(c));
  return arr.dump();
}

IndicatrixPoly IndicatrixPoly::parse_json(std::string_view json) {
  nlohmann::json arr;
  try {
    arr = nlohmann::json::parse(json);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed indicatrix JSON: ") + e.what());
  }
  if (!arr.is_array()) throw InvalidInput("indicatrix JSON must be an array");
  std::vector<Rational> coeffs;
  for (const auto& item : arr) {
    if (!item.is_string()) throw InvalidInput("indicatrix JSON coefficients must be strings");
    coeffs.push_back(parse_rational(item.get<std::string>()));
  }
  return IndicatrixPoly(std::move(coeffs));
}

IndicatrixPoly indicatrix_of(const PermSet& s) {
  std::vector<std::size_t> counts(s.degree() + 1, 0);
  for (const auto& p : s.elements()) ++counts[trace(p)];
  std::vector<Rational> coeffs;
  coeffs.reserve(counts.size());
  for (std::size_t c : counts) coeffs.emplace_back(c, s.size());
  return IndicatrixPoly(std::move(coeffs));
}

Rational value_at(const IndicatrixPoly& f, const Rational& x) {
  const auto& c = f.coeffs();
  Rational acc = c.back();
  for (std::size_t k = c.size() - 1; k-- > 0;) acc = acc * x + c[k];
  return acc;
}

Rational derivative_value_at(const IndicatrixPoly& f, const Rational& x, unsigned order) {
  const auto& c = f.coeffs();
  if (order >= c.size()) return 0;
  // Coefficients of the order-th derivative, then Horner.
  std::vector<Rational> d(c.begin() + order, c.end());
  for (std::size_t k = 0; k < d.size(); ++k) {
    BigInt falling = 1;
    for (unsigned r = 0; r < order; ++r) falling *= BigInt(k + order - r);
    d[k] *= Rational(falling);
  }
  Rational acc = d.back();
  for (std::size_t k = d.size() - 1; k-- > 0;) acc = acc * x + d[k];
  return acc;
}

Rational derivative_at_one(const IndicatrixPoly& f) {
  Rational sum = 0;
  const auto& c = f.coeffs();
  for (std::size_t k = 1; k < c.size(); ++k) sum += c[k] * Rational(k);
  return sum;
}

IndicatrixPoly compose(const IndicatrixPoly& outer, const IndicatrixPoly& inner) {
  const std::size_t degree = outer.degree() * inner.degree();
  if (degree > kMaxComposedDegree) {
    throw CapExceeded("composite degree " + std::to_string(degree) + " exceeds " +
                      std::to_string(kMaxComposedDegree));
  }
  const auto& oc = outer.coeffs();
  std::vector<Rational> acc{oc.back()};
  for (std::size_t k = oc.size() - 1; k-- > 0;) {
    acc = multiply(acc, inner.coeffs());
    acc[0] += oc[k];
  }
  return IndicatrixPoly(std::move(acc));
}

// ---------------------------------------------------------------------------
// Iteration at zero.
//
// The orbit 0, f(0), f(f(0)), ... is tracked exactly while denominators fit
// under the cap. After that each endpoint is a dyadic mantissa M / 2^w and one
// Horner pass per endpoint is rounded down (resp. up). All coefficients are
// nonnegative and the orbit stays in [0, 1], so every rounded intermediate
// bounds its exact counterpart in the right direction.

namespace {

class ZeroOrbit {
public:
  ZeroOrbit(const IndicatrixPoly& f, std::size_t work_bits, std::size_t cap_bits)
      : f_(&f), work_bits_(work_bits), cap_bits_(cap_bits), exact_value_(0) {
    common_den_ = 1;
    for (const auto& c : f.coeffs()) common_den_ = boost::multiprecision::lcm(common_den_, denominator(c));
    for (const auto& c : f.coeffs()) scaled_.push_back(numerator(c) * (common_den_ / denominator(c)));
    one_ = BigInt(1) << work_bits_;
  }

  void step() {
    if (exact_) {
      Rational next = value_at(*f_, exact_value_);
      if (bit_length(denominator(next)) <= cap_bits_) {
        exact_value_ = std::move(next);
        return;
      }
      exact_ = false;
      const BigInt scaled_num = numerator(next) << work_bits_;
      lo_ = scaled_num / denominator(next);
      hi_ = lo_ + (scaled_num % denominator(next) != 0 ? 1 : 0);
      return;
    }
    BigInt new_lo = horner(lo_, false);
    BigInt new_hi = horner(hi_, true);
    if (new_hi > one_) new_hi = one_;
    lo_ = std::move(new_lo);
    hi_ = std::move(new_hi);
  }

  bool exact() const { return exact_; }

  IntervalRational current() const {
    if (exact_) return {exact_value_, exact_value_};
    return {Rational(lo_, one_), Rational(hi_, one_)};
  }

  // Certified comparisons of the current enclosure with a rational t.
  bool lower_exceeds(const Rational& t) const {
    if (exact_) return exact_value_ > t;
    return lo_ * denominator(t) > numerator(t) * one_;
  }
  bool upper_at_most(const Rational& t) const {
    if (exact_) return exact_value_ <= t;
    return hi_ * denominator(t) <= numerator(t) * one_;
  }

private:
  BigInt horner(const BigInt& x, bool round_up) const {
    const auto& a = scaled_;
    BigInt acc = a.back() << work_bits_;
    const BigInt mask = one_ - 1;
    for (std::size_t k = a.size() - 1; k-- > 0;) {
      BigInt prod = acc * x;
      const bool inexact = round_up && (prod & mask) != 0;
      acc = prod >> work_bits_;
      if (inexact) acc += 1;
      acc += a[k] << work_bits_;
    }
    BigInt q = acc / common_den_;
    if (round_up && q * common_den_ != acc) q += 1;
    return q;
  }

  const IndicatrixPoly* f_;
  std::size_t work_bits_;
  std::size_t cap_bits_;
  std::vector<BigInt> scaled_;
  BigInt common_den_;
  BigInt one_;
  bool exact_ = true;
  Rational exact_value_;
  BigInt lo_, hi_;
};

} // namespace

IntervalRational iterate_at_zero(const IndicatrixPoly& f, std::size_t n, std::size_t precision,
                                 IterateOptions options) {
  if (n == 0) throw InvalidInput("iteration count must be positive");
  if (precision < 32) throw InvalidInput("precision must be at least 32 bits");

  const Rational target_width = Rational(BigInt(2), BigInt(1) << precision);  // 2^(1-p)
  std::size_t guard = 16 + bit_length(BigInt(n)) + bit_length(BigInt(f.degree() + 1));
  for (;;) {
    ZeroOrbit orbit(f, precision + guard, options.denominator_cap_bits);
    for (std::size_t i = 0; i < n; ++i) orbit.step();
    IntervalRational r = orbit.current();
    if (orbit.exact()) return r;
    if (r.width() <= target_width) {
      // Round outward to `precision` bits.
      const BigInt scale = BigInt(1) << precision;
      const BigInt lo_num = numerator(r.lo) * scale;
      const BigInt hi_num = numerator(r.hi) * scale;
      BigInt lo = lo_num / denominator(r.lo);
      BigInt hi = hi_num / denominator(r.hi);
      if (hi * denominator(r.hi) != hi_num) hi += 1;
      return {Rational(lo, scale), Rational(hi, scale)};
    }
    guard *= 2;
    if (guard > kMaxIteratePrecision) {
      throw PrecisionExhausted("cannot enclose iterate " + std::to_string(n) + " to " +
                               std::to_string(precision) + " bits");
    }
  }
}

std::optional<std::size_t> epsilon_index(const IndicatrixPoly& f, const Rational& epsilon,
                                         EpsilonIndexOptions options) {
  if (epsilon <= 0 || epsilon >= 1) throw InvalidInput("epsilon must lie in (0,1)");
  if (f.constant_term() == 0) return std::nullopt;

  const Rational threshold = 1 - epsilon;
  std::size_t bits = options.initial_precision;
  std::size_t steps_done = 0;
  ZeroOrbit orbit(f, bits, options.iterate.denominator_cap_bits);
  for (;;) {
    if (steps_done >= options.max_iterations) {
      throw Error("epsilon index exceeds " + std::to_string(options.max_iterations) + " iterations");
    }
    orbit.step();
    ++steps_done;
    if (orbit.lower_exceeds(threshold)) return steps_done;
    if (orbit.upper_at_most(threshold)) continue;

    // The enclosure straddles the threshold: redo this prefix more precisely.
    for (;;) {
      bits *= 2;
      if (bits > options.max_precision) {
        throw PrecisionExhausted("epsilon index undecided at iterate " + std::to_string(steps_done));
      }
      orbit = ZeroOrbit(f, bits, options.iterate.denominator_cap_bits);
      for (std::size_t i = 0; i < steps_done; ++i) orbit.step();
      if (orbit.lower_exceeds(threshold)) return steps_done;
      if (orbit.upper_at_most(threshold)) break;
    }
  }
}

} // namespace perdyn
