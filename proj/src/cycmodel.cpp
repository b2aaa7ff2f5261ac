#include "perdyn/cycmodel.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <numeric>
#include <set>
#include <sstream>

#include "perdyn/error.hpp"

namespace perdyn {

unsigned euler_phi(unsigned n) {
  if (n == 0) throw InvalidInput("euler_phi(0) is undefined");
  unsigned result = n;
  unsigned m = n;
  for (unsigned p = 2; p * p <= m; ++p) {
    if (m % p != 0) continue;
    while (m % p == 0) m /= p;
    result -= result / p;
  }
  if (m > 1) result -= result / m;
  return result;
}

namespace {

using IntPoly = std::vector<BigInt>;

void strip(IntPoly& p) {
  while (p.size() > 1 && p.back() == 0) p.pop_back();
}

// Quotient of a by a monic b (exact division expected).
IntPoly divide_monic(IntPoly a, const IntPoly& b) {
  const std::size_t db = b.size() - 1;
  if (a.size() - 1 < db) return {0};
  IntPoly q(a.size() - db, 0);
  for (std::size_t i = a.size(); i-- > db;) {
    const BigInt coef = a[i];
    q[i - db] = coef;
    if (coef == 0) continue;
    for (std::size_t k = 0; k <= db; ++k) a[i - db + k] -= coef * b[k];
  }
  return q;
}

// Remainder of a modulo a monic b.
void reduce_monic(IntPoly& a, const IntPoly& b) {
  const std::size_t db = b.size() - 1;
  for (std::size_t i = a.size(); i-- > db;) {
    const BigInt coef = a[i];
    if (coef == 0) continue;
    for (std::size_t k = 0; k <= db; ++k) a[i - db + k] -= coef * b[k];
  }
  a.resize(db);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

BigInt parse_unsigned(std::string_view s, std::string_view whole) {
  if (s.empty()) throw InvalidInput("malformed cyclotomic integer '" + std::string(whole) + "'");
  BigInt v = 0;
  for (char ch : s) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) {
      throw InvalidInput("malformed cyclotomic integer '" + std::string(whole) + "'");
    }
    v = v * 10 + (ch - '0');
  }
  return v;
}

} // namespace

std::vector<BigInt> cyclotomic_polynomial(unsigned n) {
  if (n == 0) throw InvalidInput("cyclotomic polynomial index must be positive");
  IntPoly p(n + 1, 0);
  p[0] = -1;
  p[n] = 1;
  for (unsigned k = 1; k < n; ++k) {
    if (n % k == 0) p = divide_monic(std::move(p), cyclotomic_polynomial(k));
  }
  strip(p);
  return p;
}

// ---------------------------------------------------------------------------

CyclotomicInteger::CyclotomicInteger(unsigned e, std::vector<BigInt> coeffs) : e_(e), coeffs_(std::move(coeffs)) {
  if (e_ == 0) throw InvalidInput("conductor must be positive");
  const std::size_t n = euler_phi(e_);
  if (coeffs_.size() > n) reduce_monic(coeffs_, cyclotomic_polynomial(e_));
  coeffs_.resize(n, 0);
}

CyclotomicInteger CyclotomicInteger::from_integer(unsigned e, const BigInt& n) {
  return CyclotomicInteger(e, {n});
}

CyclotomicInteger CyclotomicInteger::parse(unsigned e, std::string_view text) {
  std::vector<BigInt> coeffs;
  std::string_view s = trim(text);
  if (s.empty()) throw InvalidInput("empty cyclotomic integer");
  std::size_t i = 0;
  while (i < s.size()) {
    int sign = 1;
    while (i < s.size() && (s[i] == '+' || s[i] == '-' || std::isspace(static_cast<unsigned char>(s[i])))) {
      if (s[i] == '-') sign = -sign;
      ++i;
    }
    std::size_t end = i;
    while (end < s.size() && s[end] != '+' && s[end] != '-') ++end;
    const std::string_view term = trim(s.substr(i, end - i));
    if (term.empty()) throw InvalidInput("malformed cyclotomic integer '" + std::string(text) + "'");
    BigInt coef = 1;
    std::size_t power = 0;
    const auto zpos = term.find('z');
    if (zpos == std::string_view::npos) {
      coef = parse_unsigned(term, text);
    } else {
      std::string_view head = trim(term.substr(0, zpos));
      if (!head.empty() && head.back() == '*') head = trim(head.substr(0, head.size() - 1));
      if (!head.empty()) coef = parse_unsigned(head, text);
      std::string_view tail = trim(term.substr(zpos + 1));
      power = 1;
      if (!tail.empty()) {
        if (tail.front() != '^') throw InvalidInput("malformed cyclotomic integer '" + std::string(text) + "'");
        power = parse_unsigned(trim(tail.substr(1)), text).convert_to<std::size_t>();
      }
    }
    if (coeffs.size() <= power) coeffs.resize(power + 1, 0);
    coeffs[power] += sign * coef;
    i = end;
  }
  return CyclotomicInteger(e, std::move(coeffs));
}

bool CyclotomicInteger::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const BigInt& c) { return c == 0; });
}

CyclotomicInteger CyclotomicInteger::operator+(const CyclotomicInteger& o) const {
  if (o.e_ != e_) throw InvalidInput("adding cyclotomic integers of different conductor");
  std::vector<BigInt> out = coeffs_;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += o.coeffs_[i];
  return CyclotomicInteger(e_, std::move(out));
}

CyclotomicInteger CyclotomicInteger::operator*(const CyclotomicInteger& o) const {
  if (o.e_ != e_) throw InvalidInput("multiplying cyclotomic integers of different conductor");
  std::vector<BigInt> out(coeffs_.size() + o.coeffs_.size() - 1, 0);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) out[i + j] += coeffs_[i] * o.coeffs_[j];
  }
  return CyclotomicInteger(e_, std::move(out));
}

CyclotomicInteger CyclotomicInteger::pow(unsigned k) const {
  CyclotomicInteger result = from_integer(e_, 1);
  CyclotomicInteger base = *this;
  while (k > 0) {
    if (k & 1U) result = result * base;
    k >>= 1U;
    if (k > 0) base = base * base;
  }
  return result;
}

std::complex<long double> CyclotomicInteger::embed(unsigned k) const {
  const long double angle = 2.0L * std::numbers::pi_v<long double> * static_cast<long double>(k) /
                            static_cast<long double>(e_);
  std::complex<long double> acc = 0;
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    acc = acc * std::polar(1.0L, angle) + coeffs_[i].convert_to<long double>();
  }
  return acc;
}

long double CyclotomicInteger::coefficient_mass() const {
  long double sum = 0;
  for (const auto& c : coeffs_) sum += std::fabs(c.convert_to<long double>());
  return sum;
}

std::string CyclotomicInteger::to_string() const {
  std::string out;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    const BigInt& c = coeffs_[k];
    if (c == 0) continue;
    const bool negative = c < 0;
    const BigInt mag = negative ? BigInt(-c) : c;
    if (out.empty()) {
      if (negative) out += "-";
    } else {
      out += negative ? "-" : "+";
    }
    if (k == 0 || mag != 1) out += mag.str();
    if (k == 1) out += "z";
    if (k > 1) out += "z^" + std::to_string(k);
  }
  return out.empty() ? "0" : out;
}

std::vector<unsigned> embedding_exponents(unsigned e) {
  std::vector<unsigned> out;
  for (unsigned k = 0; k < e; ++k) {
    if (std::gcd(k, e) == 1) out.push_back(k);
  }
  return out;
}

// ---------------------------------------------------------------------------

CycSetting::CycSetting(unsigned d_, unsigned e_, CyclotomicInteger c_) : d(d_), e(e_), c(std::move(c_)) {
  if (d < 2) throw InvalidInput("map degree d must be at least 2");
  if (e < 1) throw InvalidInput("conductor e must be at least 1");
  if (c.conductor() != e) throw InvalidInput("constant term conductor does not match e");
}

CycSetting CycSetting::parse(std::string_view text) {
  unsigned d = 0;
  unsigned e = 1;
  std::string c_text = "1";
  bool have_d = false;
  std::istringstream in{std::string(text)};
  std::string token;
  while (in >> token) {
    const auto eq = token.find('=');
    if (eq == std::string::npos) throw InvalidInput("expected key=value, got '" + token + "'");
    const std::string key = token.substr(0, eq);
    const std::string value = token.substr(eq + 1);
    if (key == "c") {
      c_text = value;
      continue;
    }
    const BigInt v = parse_unsigned(value, token);
    if (v > 1'000'000) throw InvalidInput("parameter out of range: " + token);
    if (key == "d") {
      d = v.convert_to<unsigned>();
      have_d = true;
    } else if (key == "e") {
      e = v.convert_to<unsigned>();
    } else {
      throw InvalidInput("unknown key '" + key + "'");
    }
  }
  if (!have_d) throw InvalidInput("setting needs d=<degree>");
  if (e == 0) throw InvalidInput("conductor e must be at least 1");
  return CycSetting(d, e, CyclotomicInteger::parse(e, c_text));
}

std::string CycSetting::to_string() const {
  return "d=" + std::to_string(d) + " e=" + std::to_string(e) + " c=" + c.to_string();
}

Permutation AffineElement::to_permutation(unsigned d) const {
  std::vector<Permutation::Point> images(d);
  for (unsigned i = 0; i < d; ++i) images[i] = apply(i, d);
  return Permutation(std::move(images));
}

std::vector<unsigned> galois_A(unsigned d, unsigned e) {
  if (d < 2 || e < 1) throw InvalidInput("galois_A needs d >= 2 and e >= 1");
  const unsigned g = std::gcd(e, d);
  std::vector<unsigned> out;
  for (unsigned m = 1; m < d; ++m) {
    if (std::gcd(m, d) == 1 && m % g == 1 % g) out.push_back(m);
  }
  return out;
}

GaloisData build_B1(unsigned d, unsigned e) {
  GaloisData data;
  data.d = d;
  data.A = galois_A(d, e);
  for (unsigned j = 0; j < d; ++j) data.G.push_back({1, j});
  for (unsigned m : data.A) {
    for (unsigned j = 0; j < d; ++j) data.B1.push_back({m, j});
  }
  return data;
}

std::vector<AffineElement> GaloisData::coset(unsigned m) const {
  std::vector<AffineElement> out;
  for (const auto& t : B1) {
    if (t.m == m % d) out.push_back(t);
  }
  if (out.empty()) throw InvalidInput("m=" + std::to_string(m) + " is not in A");
  return out;
}

PermSet GaloisData::translation_group() const {
  std::vector<Permutation> elements;
  for (const auto& t : G) elements.push_back(t.to_permutation(d));
  return make_group_unchecked(std::move(elements));
}

PermSet GaloisData::coset_permset(unsigned m) const {
  const auto members = coset(m);
  std::vector<Permutation> elements;
  for (const auto& t : members) elements.push_back(t.to_permutation(d));
  return make_coset_unchecked(std::move(elements), translation_group(), AffineElement{m % d, 0}.to_permutation(d));
}

PermSet GaloisData::b1_permset() const {
  std::vector<Permutation> elements;
  for (const auto& t : B1) elements.push_back(t.to_permutation(d));
  return make_group_unchecked(std::move(elements));
}

CosetStatus coset_status(unsigned m, unsigned d) {
  if (d < 2) throw InvalidInput("coset_status needs d >= 2");
  m %= d;
  if (std::gcd(m, d) != 1) throw InvalidInput(std::to_string(m) + " is not a unit mod " + std::to_string(d));
  const unsigned g = std::gcd((m + d - 1) % d, d);
  return g == 1 ? CosetStatus::all_have_fixed_points : CosetStatus::has_fpf_element;
}

// ---------------------------------------------------------------------------

long double escape_radius(const CyclotomicInteger& c, unsigned k) { return 1.0L + std::abs(c.embed(k)); }

bool certified_escape(const CyclotomicInteger& z, const CyclotomicInteger& c, unsigned k) {
  const long double value = std::abs(z.embed(k));
  const long double radius = escape_radius(c, k);
  const long double mass = z.coefficient_mass() + c.coefficient_mass();
  if (!std::isfinite(value) || !std::isfinite(mass)) return false;
  // Relative guard band plus a bound on the summation rounding error.
  const long double margin = 1e-6L * radius + 1e-15L * mass;
  return value - margin > radius;
}

OrbitAnalysis analyze_zero_orbit(const CycSetting& s, std::size_t max_iter) {
  if (max_iter < 1) throw InvalidInput("max_iter must be at least 1");
  OrbitAnalysis out;
  CyclotomicInteger z(s.e);
  out.orbit.push_back(z);
  if (s.c.is_zero()) {
    out.verdict = Preperiodicity::preperiodic;
    return out;
  }
  std::set<CyclotomicInteger> seen{z};
  const auto exponents = embedding_exponents(s.e);
  for (std::size_t it = 1; it <= max_iter; ++it) {
    z = z.pow(s.d) + s.c;
    out.orbit.push_back(z);
    if (!seen.insert(z).second) {
      out.verdict = Preperiodicity::preperiodic;
      return out;
    }
    for (unsigned k : exponents) {
      if (certified_escape(z, s.c, k)) {
        out.verdict = Preperiodicity::not_preperiodic;
        out.escape_index = it;
        out.escape_embedding = k;
        return out;
      }
    }
  }
  return out;
}

std::string RegimeReport::summary() const {
  if (holds_c) {
    return "(a)+(c): limsup = 1, witness m=" + std::to_string(all_fixed_witnesses.front());
  }
  return "(a)+(b): limit = 0";
}

RegimeReport classify_regime(const CycSetting& s, Preperiodicity preper) {
  if (preper == Preperiodicity::preperiodic) {
    throw HypothesisFailure("hypothesis '0 is not preperiodic' fails");
  }
  if (preper == Preperiodicity::undecided) {
    throw HypothesisFailure("hypothesis '0 is not preperiodic' could not be decided");
  }
  RegimeReport report;
  for (unsigned m : galois_A(s.d, s.e)) {
    if (coset_status(m, s.d) == CosetStatus::all_have_fixed_points) {
      report.all_fixed_witnesses.push_back(m);
      continue;
    }
    const unsigned g = std::gcd(m - 1, s.d);
    unsigned j = 0;
    while (j % g == 0) ++j;
    report.fpf_witnesses.emplace_back(m, j);
  }
  report.holds_c = !report.all_fixed_witnesses.empty();
  report.holds_b = !report.holds_c;
  return report;
}

} // namespace perdyn
