#include "perdyn/permaction.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>

#include "perdyn/error.hpp"

namespace perdyn {

Permutation::Permutation(std::vector<Point> images, std::size_t degree_cap)
    : images_(std::move(images)) {
  if (images_.empty()) throw InvalidInput("permutation degree must be at least 1");
  if (images_.size() > degree_cap) {
    throw CapExceeded("permutation degree " + std::to_string(images_.size()) +
                      " exceeds cap " + std::to_string(degree_cap));
  }
  std::vector<bool> seen(images_.size(), false);
  for (Point p : images_) {
    if (p >= images_.size() || seen[p]) throw InvalidInput("images do not form a bijection");
    seen[p] = true;
  }
}

Permutation Permutation::identity(std::size_t degree) {
  std::vector<Point> images(degree);
  std::iota(images.begin(), images.end(), Point{0});
  return Permutation(std::move(images));
}

Permutation Permutation::parse_cycles(std::string_view text, std::size_t degree) {
  std::vector<Point> images(degree);
  std::iota(images.begin(), images.end(), Point{0});
  std::vector<bool> used(degree, false);

  std::size_t i = 0;
  auto skip_space = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_space();
  while (i < text.size()) {
    if (text[i] != '(') throw InvalidInput("expected '(' in cycle notation");
    ++i;
    std::vector<Point> cycle;
    for (;;) {
      while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == ',')) ++i;
      if (i >= text.size()) throw InvalidInput("unterminated cycle");
      if (text[i] == ')') {
        ++i;
        break;
      }
      if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
        throw InvalidInput("unexpected character in cycle notation");
      }
      std::size_t value = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        value = value * 10 + static_cast<std::size_t>(text[i] - '0');
        if (value >= degree) throw InvalidInput("point out of range in cycle notation");
        ++i;
      }
      if (used[value]) throw InvalidInput("point repeated in cycle notation");
      used[value] = true;
      cycle.push_back(static_cast<Point>(value));
    }
    for (std::size_t k = 0; k < cycle.size(); ++k) {
      images[cycle[k]] = cycle[(k + 1) % cycle.size()];
    }
    skip_space();
  }
  return Permutation(std::move(images));
}

Permutation Permutation::inverse() const {
  std::vector<Point> inv(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) inv[images_[i]] = static_cast<Point>(i);
  return Permutation(std::move(inv), images_.size());
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (images_[i] != i) return false;
  }
  return true;
}

std::string Permutation::to_cycles() const {
  std::string out;
  std::vector<bool> done(images_.size(), false);
  for (std::size_t start = 0; start < images_.size(); ++start) {
    if (done[start] || images_[start] == start) continue;
    out.push_back('(');
    std::size_t p = start;
    bool first = true;
    while (!done[p]) {
      if (!first) out.push_back(' ');
      out += std::to_string(p);
      done[p] = true;
      first = false;
      p = images_[p];
    }
    out.push_back(')');
  }
  return out.empty() ? "()" : out;
}

Permutation operator*(const Permutation& a, const Permutation& b) {
  if (a.degree() != b.degree()) throw InvalidInput("composing permutations of different degree");
  std::vector<Permutation::Point> images(a.degree());
  for (std::size_t i = 0; i < images.size(); ++i) images[i] = a(b(static_cast<Permutation::Point>(i)));
  return Permutation(std::move(images), images.size());
}

std::size_t trace(const Permutation& p) {
  std::size_t count = 0;
  const auto img = p.images();
  for (std::size_t i = 0; i < img.size(); ++i) count += img[i] == i;
  return count;
}

// ---------------------------------------------------------------------------

namespace {

std::size_t common_degree(const std::vector<Permutation>& elements) {
  if (elements.empty()) throw InvalidInput("permutation set must be nonempty");
  const std::size_t degree = elements.front().degree();
  for (const auto& p : elements) {
    if (p.degree() != degree) throw InvalidInput("permutations in a set must share a degree");
  }
  return degree;
}

void canonicalize(std::vector<Permutation>& elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
}

} // namespace

PermSet::PermSet(std::size_t degree, std::vector<Permutation> elements, PermSetKind kind)
    : degree_(degree), elements_(std::move(elements)), kind_(kind) {}

PermSet PermSet::plain(std::vector<Permutation> elements) {
  const std::size_t degree = common_degree(elements);
  canonicalize(elements);
  return PermSet(degree, std::move(elements), PermSetKind::plain);
}

PermSet PermSet::group(std::vector<Permutation> elements) {
  const std::size_t degree = common_degree(elements);
  canonicalize(elements);
  auto member = [&](const Permutation& p) {
    return std::binary_search(elements.begin(), elements.end(), p);
  };
  if (!member(Permutation::identity(degree))) throw InvalidInput("group must contain the identity");
  for (const auto& a : elements) {
    if (!member(a.inverse())) throw InvalidInput("set is not closed under inverses");
    for (const auto& b : elements) {
      if (!member(a * b)) throw InvalidInput("set is not closed under composition");
    }
  }
  return PermSet(degree, std::move(elements), PermSetKind::group);
}

PermSet PermSet::generate(std::span<const Permutation> generators, std::size_t degree,
                          std::size_t order_cap) {
  std::set<Permutation> found{Permutation::identity(degree)};
  std::vector<Permutation> frontier{Permutation::identity(degree)};
  for (const auto& g : generators) {
    if (g.degree() != degree) throw InvalidInput("generator degree mismatch");
  }
  while (!frontier.empty()) {
    std::vector<Permutation> next;
    for (const auto& x : frontier) {
      for (const auto& g : generators) {
        Permutation y = g * x;
        if (found.insert(y).second) {
          if (found.size() > order_cap) {
            throw CapExceeded("generated group exceeds " + std::to_string(order_cap) + " elements");
          }
          next.push_back(std::move(y));
        }
      }
    }
    frontier = std::move(next);
  }
  // A finite set closed under left multiplication by generators is the group.
  return PermSet(degree, std::vector<Permutation>(found.begin(), found.end()), PermSetKind::group);
}

PermSet PermSet::coset(const PermSet& group, const Permutation& rep) {
  if (group.kind() != PermSetKind::group) throw InvalidInput("coset requires a group");
  if (rep.degree() != group.degree()) throw InvalidInput("coset representative degree mismatch");
  std::vector<Permutation> elements;
  elements.reserve(group.size());
  for (const auto& h : group.elements()) elements.push_back(h * rep);
  canonicalize(elements);
  return make_coset_unchecked(std::move(elements), group, rep);
}

PermSet make_coset_unchecked(std::vector<Permutation> elements, const PermSet& group,
                             const Permutation& rep) {
  const std::size_t degree = common_degree(elements);
  canonicalize(elements);
  PermSet out(degree, std::move(elements), PermSetKind::coset);
  out.group_ = std::make_shared<const PermSet>(group);
  out.rep_ = std::make_shared<const Permutation>(rep);
  return out;
}

PermSet make_group_unchecked(std::vector<Permutation> elements) {
  const std::size_t degree = common_degree(elements);
  canonicalize(elements);
  return PermSet(degree, std::move(elements), PermSetKind::group);
}

PermSet PermSet::symmetric(std::size_t degree) {
  std::vector<Permutation::Point> images(degree);
  std::iota(images.begin(), images.end(), Permutation::Point{0});
  std::vector<Permutation> elements;
  do {
    elements.emplace_back(images);
  } while (std::next_permutation(images.begin(), images.end()));
  return PermSet(degree, std::move(elements), PermSetKind::group);
}

PermSet PermSet::cyclic(std::size_t degree) {
  std::vector<Permutation> elements;
  for (std::size_t shift = 0; shift < degree; ++shift) {
    std::vector<Permutation::Point> images(degree);
    for (std::size_t i = 0; i < degree; ++i) {
      images[i] = static_cast<Permutation::Point>((i + shift) % degree);
    }
    elements.emplace_back(std::move(images));
  }
  canonicalize(elements);
  return PermSet(degree, std::move(elements), PermSetKind::group);
}

bool PermSet::contains(const Permutation& p) const {
  return std::binary_search(elements_.begin(), elements_.end(), p);
}

const PermSet& PermSet::reference_group() const {
  if (kind_ == PermSetKind::group) return *this;
  if (kind_ == PermSetKind::coset) return *group_;
  throw InvalidInput("plain permutation set has no reference group");
}

const Permutation& PermSet::representative() const {
  if (kind_ == PermSetKind::coset) return *rep_;
  // the identity sorts first among the elements of a group
  if (kind_ == PermSetKind::group) return elements_.front();
  throw InvalidInput("plain permutation set has no representative");
}

Rational fpp(const PermSet& s) {
  std::size_t with_fixed = 0;
  for (const auto& p : s.elements()) with_fixed += trace(p) > 0;
  return Rational(with_fixed, s.size());
}

bool is_transitive(const PermSet& s) {
  if (s.kind() != PermSetKind::group) throw InvalidInput("transitivity is defined for groups only");
  std::vector<bool> reached(s.degree(), false);
  reached[0] = true;
  std::size_t count = 1;
  std::vector<Permutation::Point> stack{0};
  while (!stack.empty()) {
    const auto x = stack.back();
    stack.pop_back();
    for (const auto& g : s.elements()) {
      const auto y = g(x);
      if (!reached[y]) {
        reached[y] = true;
        ++count;
        stack.push_back(y);
      }
    }
  }
  return count == s.degree();
}

Rational mean_trace(const PermSet& s) {
  std::size_t total = 0;
  for (const auto& p : s.elements()) total += trace(p);
  return Rational(total, s.size());
}

} // namespace perdyn
