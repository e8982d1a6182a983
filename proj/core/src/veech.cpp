#include "origami/veech.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <deque>
#include <iomanip>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "origami/error.hpp"

namespace origami {

namespace {

void push_reduced(std::vector<SL2Letter>& out, SL2Letter l) {
  if (!out.empty() && out.back().gen == l.gen && out.back().exp == -l.exp) {
    out.pop_back();
  } else {
    out.push_back(l);
  }
}

}  // namespace

SL2Word::SL2Word(std::vector<SL2Letter> letters) {
  for (auto l : letters) {
    if (l.exp != 1 && l.exp != -1) throw Error("SL2Word: letter exponent must be +-1");
    push_reduced(letters_, l);
  }
}

SL2Word SL2Word::letter(SL2Gen g, int exp) {
  std::vector<SL2Letter> ls;
  for (int i = 0; i < std::abs(exp); ++i) ls.push_back({g, exp > 0 ? 1 : -1});
  return SL2Word(std::move(ls));
}

SL2Word SL2Word::inverse() const {
  std::vector<SL2Letter> ls;
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) ls.push_back(it->inverse());
  return SL2Word(std::move(ls));
}

SL2Word SL2Word::pow(int k) const {
  SL2Word base = k < 0 ? inverse() : *this;
  SL2Word out;
  for (int i = 0; i < std::abs(k); ++i) out = out * base;
  return out;
}

SL2Word operator*(SL2Word const& x, SL2Word const& y) {
  SL2Word out = x;
  for (auto l : y.letters_) push_reduced(out.letters_, l);
  return out;
}

std::string SL2Word::str() const {
  if (letters_.empty()) return "I";
  std::ostringstream out;
  for (std::size_t i = 0; i < letters_.size();) {
    std::size_t j = i;
    while (j < letters_.size() && letters_[j] == letters_[i]) ++j;
    if (i) out << ' ';
    out << (letters_[i].gen == SL2Gen::T ? 'T' : 'S');
    long long e = static_cast<long long>(j - i) * letters_[i].exp;
    if (e != 1) out << '^' << e;
    i = j;
  }
  return out.str();
}

namespace {

struct WordParser {
  std::string_view text;
  std::size_t pos = 0;

  void skip() {
    while (pos < text.size() &&
           (std::isspace(static_cast<unsigned char>(text[pos])) || text[pos] == '*' ||
            text[pos] == '.')) {
      ++pos;
    }
  }

  long long exponent() {
    skip();
    if (pos >= text.size() || text[pos] != '^') return 1;
    ++pos;
    skip();
    bool neg = false;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) neg = text[pos++] == '-';
    if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos]))) {
      throw ParseError("SL2 word: missing exponent digits");
    }
    long long e = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      e = e * 10 + (text[pos++] - '0');
      if (e > 1000000) throw ParseError("SL2 word: exponent too large");
    }
    return neg ? -e : e;
  }

  SL2Word word(bool nested) {
    SL2Word out;
    while (true) {
      skip();
      if (pos >= text.size()) {
        if (nested) throw ParseError("SL2 word: missing ')'");
        return out;
      }
      char c = text[pos];
      if (c == ')') {
        if (!nested) throw ParseError("SL2 word: unmatched ')'");
        ++pos;
        return out;
      }
      SL2Word atom;
      if (c == 'T' || c == 'S') {
        ++pos;
        atom = SL2Word::letter(c == 'T' ? SL2Gen::T : SL2Gen::S);
      } else if (c == 'I') {
        ++pos;
      } else if (c == '(') {
        ++pos;
        atom = word(true);
      } else {
        throw ParseError(std::string("SL2 word: unexpected '") + c + "'");
      }
      out = out * atom.pow(static_cast<int>(exponent()));
    }
  }
};

std::int64_t checked_mul(std::int64_t x, std::int64_t y) {
  std::int64_t r;
  if (__builtin_mul_overflow(x, y, &r)) throw Error("SL2 matrix entry overflow");
  return r;
}

std::int64_t checked_add(std::int64_t x, std::int64_t y) {
  std::int64_t r;
  if (__builtin_add_overflow(x, y, &r)) throw Error("SL2 matrix entry overflow");
  return r;
}

std::int64_t mod(std::int64_t x, std::int64_t n) {
  std::int64_t r = x % n;
  return r < 0 ? r + n : r;
}

SL2Matrix letter_matrix(SL2Letter l) {
  SL2Matrix m = l.gen == SL2Gen::T ? SL2Matrix::T() : SL2Matrix::S();
  return l.exp > 0 ? m : m.inverse();
}

SL2Matrix mul_mod(SL2Matrix const& x, SL2Matrix const& y, std::int64_t n) {
  return {mod(x.a * y.a + x.b * y.c, n), mod(x.a * y.b + x.b * y.d, n),
          mod(x.c * y.a + x.d * y.c, n), mod(x.c * y.b + x.d * y.d, n)};
}

}  // namespace

SL2Word parse_sl2_word(std::string_view text) {
  WordParser p{text};
  return p.word(false);
}

std::string SL2Matrix::str() const {
  std::ostringstream out;
  out << "[[" << a << ',' << b << "],[" << c << ',' << d << "]]";
  return out.str();
}

SL2Matrix operator*(SL2Matrix const& x, SL2Matrix const& y) {
  return {checked_add(checked_mul(x.a, y.a), checked_mul(x.b, y.c)),
          checked_add(checked_mul(x.a, y.b), checked_mul(x.b, y.d)),
          checked_add(checked_mul(x.c, y.a), checked_mul(x.d, y.c)),
          checked_add(checked_mul(x.c, y.b), checked_mul(x.d, y.d))};
}

SL2Matrix word_to_matrix(SL2Word const& w) {
  SL2Matrix m;
  for (auto l : w.letters()) m = m * letter_matrix(l);
  return m;
}

SL2Matrix reduce_mod(SL2Matrix const& m, std::int64_t N) {
  if (N <= 0) throw Error("reduce_mod: modulus must be positive");
  return {mod(m.a, N), mod(m.b, N), mod(m.c, N), mod(m.d, N)};
}

SL2Matrix word_to_matrix_mod(SL2Word const& w, std::int64_t N) {
  SL2Matrix m = reduce_mod(SL2Matrix::identity(), N);
  for (auto l : w.letters()) m = mul_mod(m, reduce_mod(letter_matrix(l), N), N);
  return m;
}

bool is_identity_mod(SL2Matrix const& m, std::int64_t N) {
  return reduce_mod(m, N) == reduce_mod(SL2Matrix::identity(), N);
}

Origami apply_generator(Origami const& o, SL2Letter g) {
  auto const& a = o.sigma_a();
  auto const& b = o.sigma_b();
  if (g.gen == SL2Gen::T) {
    return Origami::make_unchecked(a, g.exp > 0 ? a.inverse() * b : a * b);
  }
  if (g.exp > 0) return Origami::make_unchecked(b.inverse(), a);
  return Origami::make_unchecked(b, a.inverse());
}

Origami apply_generator(Origami const& o, SL2Gen g) { return apply_generator(o, SL2Letter{g, 1}); }

Origami apply_word(Origami const& o, SL2Word const& w) {
  Origami cur = o;
  auto const& ls = w.letters();
  for (auto it = ls.rbegin(); it != ls.rend(); ++it) cur = apply_generator(cur, *it);
  return cur;
}

CanonicalForm fast_canonicalize(Origami const& o) {
  std::size_t n = o.size();
  auto cycle_len = [n](Permutation const& p) {
    std::vector<std::uint32_t> len(n, 0);
    for (auto const& c : p.cycles()) {
      for (Point x : c) len[x] = static_cast<std::uint32_t>(c.size());
    }
    return len;
  };
  auto la = cycle_len(o.sigma_a());
  auto lb = cycle_len(o.sigma_b());
  auto lv = cycle_len(vertex_permutation(o));
  using Key = std::array<std::uint32_t, 3>;
  std::map<Key, std::vector<Point>> classes;
  for (Point s = 0; s < n; ++s) classes[{lv[s], la[s], lb[s]}].push_back(s);
  // Smallest class; ties go to the smaller key, which is invariant too.
  std::vector<Point> const* best = nullptr;
  for (auto const& [key, members] : classes) {
    if (!best || members.size() < best->size()) best = &members;
  }
  return canonicalize_from(o, *best);
}

std::size_t default_cap() {
  if (char const* env = std::getenv("ORIGAMI_CAP")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return 100000;
}

namespace {

std::uint64_t form_hash(CanonicalForm const& f) {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](std::uint64_t x) {
    h ^= x;
    h *= 1099511628211ull;
  };
  for (Point x : f.sigma_a) mix(x);
  for (Point x : f.sigma_b) mix(x + 0x9e3779b9u);
  return h;
}

}  // namespace

namespace {

OrbitResult orbit_search(Origami const& o, std::size_t cap, bool throw_at_cap) {
  if (cap == 0) throw Error("orbit_stabilizer: cap must be positive");
  OrbitResult r;
  std::unordered_multimap<std::uint64_t, std::size_t> index;
  auto lookup = [&](CanonicalForm const& f, std::uint64_t h) -> std::size_t {
    auto [lo, hi] = index.equal_range(h);
    for (auto it = lo; it != hi; ++it) {
      if (r.forms[it->second] == f) return it->second;
    }
    return r.forms.size();
  };

  auto base = fast_canonicalize(o);
  base.relabel = Permutation();
  index.emplace(form_hash(base), 0);
  r.forms.push_back(std::move(base));
  r.coset_words.emplace_back();

  std::set<std::vector<std::pair<int, int>>> seen_gens;
  for (std::size_t u = 0; u < r.forms.size(); ++u) {
    Origami rep = r.forms[u].origami();
    for (SL2Gen g : {SL2Gen::T, SL2Gen::S}) {
      auto f = fast_canonicalize(apply_generator(rep, g));
      f.relabel = Permutation();
      auto h = form_hash(f);
      std::size_t v = lookup(f, h);
      SL2Word step = SL2Word::letter(g);
      if (v == r.forms.size()) {
        if (r.forms.size() >= cap) {
          if (throw_at_cap) {
            throw CapExceeded("orbit exceeds cap of " + std::to_string(cap) + " origamis", cap);
          }
          r.complete = false;
          return r;
        }
        index.emplace(h, v);
        r.forms.push_back(std::move(f));
        r.coset_words.push_back(step * r.coset_words[u]);
      } else {
        SL2Word loop = r.coset_words[v].inverse() * step * r.coset_words[u];
        if (!loop.empty()) {
          std::vector<std::pair<int, int>> key;
          for (auto l : loop.letters()) key.emplace_back(static_cast<int>(l.gen), l.exp);
          if (seen_gens.insert(key).second) r.generators.push_back(std::move(loop));
        }
      }
      r.edges.push_back({u, v, g});
    }
  }
  return r;
}

}  // namespace

OrbitResult orbit_stabilizer(Origami const& o, std::size_t cap) {
  return orbit_search(o, cap, true);
}

OrbitResult explore_orbit(Origami const& o, std::size_t cap) {
  return orbit_search(o, cap, false);
}

std::optional<SL2Word> cusp_parabolic(Origami const& o, SL2Word const& c, std::size_t max_width) {
  Origami start = apply_word(o, c.inverse());
  auto target = fast_canonicalize(start);
  Origami cur = start;
  for (std::size_t w = 1; w <= max_width; ++w) {
    cur = apply_generator(cur, SL2Gen::T);
    if (fast_canonicalize(cur) == target) {
      return c * SL2Word::letter(SL2Gen::T, static_cast<int>(w)) * c.inverse();
    }
  }
  return std::nullopt;
}

bool contained_in_gamma(std::vector<SL2Word> const& gens, std::int64_t N) {
  for (auto const& w : gens) {
    if (!is_identity_mod(word_to_matrix_mod(w, N), N)) return false;
  }
  return true;
}

bool contains_minus_identity(Origami const& o) {
  auto s2 = apply_word(o, SL2Word::letter(SL2Gen::S, 2));
  return fast_canonicalize(s2) == fast_canonicalize(o);
}

std::vector<SL2Matrix> enumerate_sl2_mod(std::int64_t N) {
  if (N <= 0) throw Error("enumerate_sl2_mod: modulus must be positive");
  std::vector<SL2Matrix> out;
  for (std::int64_t a = 0; a < N; ++a) {
    for (std::int64_t b = 0; b < N; ++b) {
      for (std::int64_t c = 0; c < N; ++c) {
        for (std::int64_t d = 0; d < N; ++d) {
          if (mod(a * d - b * c, N) == mod(1, N)) out.push_back({a, b, c, d});
        }
      }
    }
  }
  return out;
}

std::size_t image_size_mod(std::vector<SL2Word> const& gens, std::int64_t N) {
  std::vector<SL2Matrix> gm;
  for (auto const& w : gens) gm.push_back(word_to_matrix_mod(w, N));
  std::set<SL2Matrix> seen{reduce_mod(SL2Matrix::identity(), N)};
  std::deque<SL2Matrix> queue(seen.begin(), seen.end());
  while (!queue.empty()) {
    auto m = queue.front();
    queue.pop_front();
    for (auto const& g : gm) {
      auto p = mul_mod(m, g, N);
      if (seen.insert(p).second) queue.push_back(p);
    }
  }
  return seen.size();
}

bool division_stabilizer_is_gamma(std::vector<TorusPoint> const& points, std::int64_t N) {
  for (auto const& p : points) {
    if (p.den <= 0 || N % p.den != 0) {
      throw Error("division point denominator must divide " + std::to_string(N));
    }
  }
  std::size_t fixing = 0;
  for (auto const& m : enumerate_sl2_mod(N)) {
    bool fixes_all = true;
    for (auto const& p : points) {
      std::int64_t x = mod(p.x * (N / p.den), N);
      std::int64_t y = mod(p.y * (N / p.den), N);
      if (mod(m.a * x + m.b * y, N) != x || mod(m.c * x + m.d * y, N) != y) {
        fixes_all = false;
        break;
      }
    }
    if (fixes_all) ++fixing;
  }
  return fixing == 1;
}

bool PeriodCertificate::proves_gamma() const {
  return lattice_in_level && compatible.size() == 1 &&
         compatible.front() == reduce_mod(SL2Matrix::identity(), level);
}

std::string PeriodCertificate::to_json() const {
  nlohmann::json j;
  j["level"] = level;
  j["period_lattice"] = {{a, b}, {0, d}};
  j["lattice_in_level"] = lattice_in_level;
  j["base_vertex"] = base_vertex;
  auto zs = nlohmann::json::array();
  for (auto const& z : zeros) {
    zs.push_back({{"vertex", z.vertex}, {"order", z.order}, {"position", {z.x, z.y}}});
  }
  j["zeros"] = std::move(zs);
  auto cm = nlohmann::json::array();
  for (auto const& m : compatible) cm.push_back({m.a, m.b, m.c, m.d});
  j["compatible"] = std::move(cm);
  j["proves_gamma"] = proves_gamma();
  return j.dump();
}

PeriodCertificate period_certificate(Origami const& o, std::int64_t N) {
  if (N <= 0) throw Error("period_certificate: level must be positive");
  std::size_t n = o.size();
  // Developed positions of the lower-left corners along a spanning tree of
  // the square adjacency graph; every other adjacency contributes a period.
  std::vector<std::int64_t> px(n, 0), py(n, 0);
  std::vector<char> seen(n, 0);
  std::vector<std::array<std::int64_t, 2>> periods;
  std::deque<Point> queue{0};
  seen[0] = 1;
  while (!queue.empty()) {
    Point s = queue.front();
    queue.pop_front();
    std::array<std::pair<Point, std::array<int, 2>>, 2> steps{
        {{o.sigma_a()(s), {1, 0}}, {o.sigma_b()(s), {0, 1}}}};
    for (auto const& [t, dv] : steps) {
      std::int64_t x = px[s] + dv[0];
      std::int64_t y = py[s] + dv[1];
      if (!seen[t]) {
        seen[t] = 1;
        px[t] = x;
        py[t] = y;
        queue.push_back(t);
      } else if (x != px[t] || y != py[t]) {
        periods.push_back({x - px[t], y - py[t]});
      }
    }
  }
  // Hermite basis by Euclid on pairs of vectors.
  std::array<std::int64_t, 2> v1{0, 0};
  std::int64_t a = 0;
  for (auto v2 : periods) {
    while (v2[1] != 0) {
      std::int64_t q = v1[1] / v2[1];
      v1[0] -= q * v2[0];
      v1[1] -= q * v2[1];
      std::swap(v1, v2);
    }
    a = std::gcd(a, v2[0]);
  }
  if (v1[1] < 0) v1 = {-v1[0], -v1[1]};
  a = std::abs(a);
  if (a == 0 || v1[1] == 0) throw Error("period_certificate: period lattice has rank < 2");
  PeriodCertificate cert;
  cert.level = N;
  cert.a = a;
  cert.b = mod(v1[0], a);
  cert.d = v1[1];
  cert.lattice_in_level = cert.a % N == 0 && cert.b % N == 0 && cert.d % N == 0;

  auto vs = vertex_structure(o);
  std::map<std::size_t, std::size_t> order_count;
  for (std::size_t v = 0; v < vs.count(); ++v) {
    if (vs.order(v) > 0) ++order_count[vs.order(v)];
  }
  if (order_count.empty()) throw Error("period_certificate: surface has no zeros");
  // Base: a zero of the rarest order, highest order on ties.
  std::size_t base_order = 0;
  std::size_t base_count = 0;
  for (auto it = order_count.rbegin(); it != order_count.rend(); ++it) {
    if (base_count == 0 || it->second < base_count) {
      base_order = it->first;
      base_count = it->second;
    }
  }
  for (std::size_t v = vs.count(); v-- > 0;) {
    if (vs.order(v) == base_order) cert.base_vertex = v;
  }
  Point bs = vs.cycles[cert.base_vertex].front();
  using Pos = std::pair<std::int64_t, std::int64_t>;
  std::map<std::size_t, std::multiset<Pos>> by_order;
  for (std::size_t v = 0; v < vs.count(); ++v) {
    if (vs.order(v) == 0) continue;
    Point s = vs.cycles[v].front();
    PeriodCertificate::Zero z{v, vs.order(v), mod(px[s] - px[bs], N), mod(py[s] - py[bs], N)};
    by_order[z.order].insert({z.x, z.y});
    cert.zeros.push_back(z);
  }
  // The image of the base is some zero of the same order at offset c, and the
  // map on positions is x -> D x + c.
  std::set<Pos> offsets(by_order[base_order].begin(), by_order[base_order].end());
  for (auto const& m : enumerate_sl2_mod(N)) {
    bool any = false;
    for (auto const& [cx, cy] : offsets) {
      bool ok = true;
      for (auto const& [order, pts] : by_order) {
        std::multiset<Pos> img;
        for (auto const& [x, y] : pts) {
          img.insert({mod(m.a * x + m.b * y + cx, N), mod(m.c * x + m.d * y + cy, N)});
        }
        if (img != pts) {
          ok = false;
          break;
        }
      }
      if (ok) {
        any = true;
        break;
      }
    }
    if (any) cert.compatible.push_back(m);
  }
  return cert;
}

std::string orbit_to_dot(OrbitResult const& r) {
  std::ostringstream out;
  out << "digraph orbit {\n";
  for (std::size_t i = 0; i < r.forms.size(); ++i) {
    out << "  n" << i << " [label=\"" << std::hex << std::setw(16) << std::setfill('0')
        << form_hash(r.forms[i]) << std::dec << "\"];\n";
  }
  for (auto const& e : r.edges) {
    out << "  n" << e.from << " -> n" << e.to << " [label=\""
        << (e.gen == SL2Gen::T ? 'T' : 'S') << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

std::string orbit_to_json(OrbitResult const& r, std::vector<std::int64_t> const& levels) {
  nlohmann::json j;
  j["index"] = r.index();
  j["complete"] = r.complete;
  auto gens = nlohmann::json::array();
  for (auto const& w : r.generators) gens.push_back(w.str());
  j["generators"] = std::move(gens);
  nlohmann::json lv = nlohmann::json::object();
  for (auto N : levels) lv[std::to_string(N)] = contained_in_gamma(r.generators, N);
  j["gamma_levels"] = std::move(lv);
  return j.dump();
}

}  // namespace origami
