#include "origami/perm.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include "origami/error.hpp"

namespace origami {

CycleType::CycleType(std::vector<std::size_t> parts) : parts_(std::move(parts)) {
  std::sort(parts_.begin(), parts_.end(), std::greater<>());
}

std::size_t CycleType::total() const {
  return std::accumulate(parts_.begin(), parts_.end(), std::size_t{0});
}

std::string CycleType::str() const {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) out << ',';
    out << parts_[i];
  }
  out << ')';
  return out.str();
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<Point> map(n);
  std::iota(map.begin(), map.end(), Point{0});
  return Permutation(std::move(map));
}

Permutation Permutation::from_images(std::vector<Point> images) {
  std::vector<bool> seen(images.size(), false);
  for (Point x : images) {
    if (x >= images.size() || seen[x]) {
      throw ParseError("image table is not a bijection");
    }
    seen[x] = true;
  }
  return Permutation(std::move(images));
}

Permutation Permutation::from_cycles(std::size_t n,
                                     std::vector<std::vector<Point>> const& cycles) {
  std::vector<Point> map(n);
  std::iota(map.begin(), map.end(), Point{0});
  std::vector<bool> used(n, false);
  for (auto const& cyc : cycles) {
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      Point x = cyc[i];
      if (x >= n) throw ParseError("cycle entry out of range");
      if (used[x]) throw ParseError("point appears twice in cycle list");
      used[x] = true;
      map[x] = cyc[(i + 1) % cyc.size()];
    }
  }
  return Permutation(std::move(map));
}

Permutation Permutation::inverse() const {
  std::vector<Point> inv(map_.size());
  for (std::size_t i = 0; i < map_.size(); ++i) inv[map_[i]] = static_cast<Point>(i);
  return Permutation(std::move(inv));
}

Permutation Permutation::pow(long long k) const {
  Permutation base = k < 0 ? inverse() : *this;
  unsigned long long e = k < 0 ? static_cast<unsigned long long>(-k)
                               : static_cast<unsigned long long>(k);
  Permutation result = identity(degree());
  while (e) {
    if (e & 1) result = result * base;
    base = base * base;
    e >>= 1;
  }
  return result;
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < map_.size(); ++i) {
    if (map_[i] != i) return false;
  }
  return true;
}

std::vector<std::vector<Point>> Permutation::cycles() const {
  std::vector<std::vector<Point>> out;
  std::vector<bool> seen(map_.size(), false);
  for (Point start = 0; start < map_.size(); ++start) {
    if (seen[start]) continue;
    std::vector<Point> cyc;
    for (Point x = start; !seen[x]; x = map_[x]) {
      seen[x] = true;
      cyc.push_back(x);
    }
    out.push_back(std::move(cyc));
  }
  return out;
}

CycleType Permutation::cycle_type() const {
  std::vector<std::size_t> parts;
  for (auto const& c : cycles()) parts.push_back(c.size());
  return CycleType(std::move(parts));
}

std::string Permutation::str() const {
  std::ostringstream out;
  bool any = false;
  for (auto const& c : cycles()) {
    if (c.size() < 2) continue;
    any = true;
    out << '(';
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (i) out << ',';
      out << c[i] + 1;
    }
    out << ')';
  }
  if (!any) return "()";
  return out.str();
}

Permutation compose(Permutation const& p, Permutation const& q) {
  if (p.degree() != q.degree()) {
    throw DegreeMismatch("compose: degrees " + std::to_string(p.degree()) + " and " +
                         std::to_string(q.degree()));
  }
  std::vector<Point> map(p.degree());
  for (Point x = 0; x < map.size(); ++x) map[x] = q(p(x));
  return Permutation::from_images(std::move(map));
}

Permutation operator*(Permutation const& p, Permutation const& q) { return compose(p, q); }

Permutation compose_all(std::size_t n, std::initializer_list<Permutation> ps) {
  Permutation out = Permutation::identity(n);
  for (auto const& p : ps) out = out * p;
  return out;
}

Permutation commutator(Permutation const& p, Permutation const& q) {
  return compose_all(p.degree(), {p.inverse(), q.inverse(), p, q});
}

CycleType cycle_type(Permutation const& p) { return p.cycle_type(); }

Permutation parse_permutation(std::string_view text, std::size_t n) {
  std::vector<std::vector<Point>> cycles;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_ws();
  while (i < text.size()) {
    if (text[i] != '(') throw ParseError("expected '(' in cycle notation");
    ++i;
    std::vector<Point> cyc;
    bool need_number = true;
    while (true) {
      skip_ws();
      if (i >= text.size()) throw ParseError("unterminated cycle");
      char c = text[i];
      if (c == ')') {
        if (!cyc.empty() && need_number) throw ParseError("dangling separator in cycle");
        ++i;
        break;
      }
      if (c == ',') {
        if (need_number) throw ParseError("unexpected ',' in cycle");
        need_number = true;
        ++i;
        continue;
      }
      if (!std::isdigit(static_cast<unsigned char>(c))) {
        throw ParseError(std::string("unexpected character '") + c + "' in cycle notation");
      }
      std::size_t value = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        value = value * 10 + static_cast<std::size_t>(text[i] - '0');
        if (value > n) throw ParseError("index " + std::to_string(value) + " out of range");
        ++i;
      }
      if (value == 0 || value > n) {
        throw ParseError("index " + std::to_string(value) + " out of range 1.." +
                         std::to_string(n));
      }
      cyc.push_back(static_cast<Point>(value - 1));
      need_number = false;
    }
    cycles.push_back(std::move(cyc));
    skip_ws();
  }
  std::vector<bool> used(n, false);
  for (auto const& cyc : cycles) {
    for (Point x : cyc) {
      if (used[x]) throw ParseError("duplicate index " + std::to_string(x + 1));
      used[x] = true;
    }
  }
  return Permutation::from_cycles(n, cycles);
}

std::vector<std::vector<Point>> orbits(std::span<Permutation const> gens, std::size_t n) {
  for (auto const& g : gens) {
    if (g.degree() != n) throw DegreeMismatch("orbits: generator degree differs from n");
  }
  std::vector<std::vector<Point>> out;
  std::vector<bool> seen(n, false);
  std::vector<Point> stack;
  for (Point start = 0; start < n; ++start) {
    if (seen[start]) continue;
    std::vector<Point> block;
    seen[start] = true;
    stack.push_back(start);
    while (!stack.empty()) {
      Point x = stack.back();
      stack.pop_back();
      block.push_back(x);
      for (auto const& g : gens) {
        Point y = g(x);
        if (!seen[y]) {
          seen[y] = true;
          stack.push_back(y);
        }
      }
    }
    std::sort(block.begin(), block.end());
    out.push_back(std::move(block));
  }
  return out;
}

bool is_transitive(std::span<Permutation const> gens, std::size_t n) {
  return n > 0 && orbits(gens, n).size() == 1;
}

}  // namespace origami

std::size_t std::hash<origami::Permutation>::operator()(
    origami::Permutation const& p) const noexcept {
  std::size_t h = p.degree();
  for (auto x : p.images()) h = h * 1000003u ^ x;
  return h;
}
