#include "origami/covering.hpp"

#include <algorithm>
#include <cctype>

#include <nlohmann/json.hpp>

#include "origami/error.hpp"

namespace origami {

std::vector<std::vector<Point>> CoveringMap::fibers() const {
  std::vector<std::vector<Point>> out(target.size());
  for (Point s = 0; s < square_map.size(); ++s) out[square_map[s]].push_back(s);
  return out;
}

CoveringMap cover_from_map(Origami source, Origami target, std::vector<Point> square_map) {
  if (square_map.size() != source.size()) {
    throw Error("cover: square map has " + std::to_string(square_map.size()) +
                " entries for " + std::to_string(source.size()) + " squares");
  }
  for (Point s = 0; s < source.size(); ++s) {
    if (square_map[s] >= target.size()) throw Error("cover: square map out of range");
  }
  for (Point s = 0; s < source.size(); ++s) {
    if (square_map[source.sigma_a()(s)] != target.sigma_a()(square_map[s]) ||
        square_map[source.sigma_b()(s)] != target.sigma_b()(square_map[s])) {
      throw NotEquivariant("cover: map does not commute with the gluings at square " +
                               std::to_string(s + 1),
                           s);
    }
  }
  std::vector<std::size_t> count(target.size(), 0);
  for (Point t : square_map) ++count[t];
  for (std::size_t c : count) {
    if (c != count[0]) throw NonConstantFiber("cover: fibers have different sizes");
  }
  std::size_t d = count[0];
  return CoveringMap{std::move(source), std::move(target), std::move(square_map), d};
}

std::vector<CoveringMap> square_coverings(Origami const& source, Origami const& target) {
  std::size_t n = source.size();
  auto const sa_inv = source.sigma_a().inverse();
  auto const sb_inv = source.sigma_b().inverse();
  auto const ta_inv = target.sigma_a().inverse();
  auto const tb_inv = target.sigma_b().inverse();
  constexpr Point kUnset = ~Point{0};
  std::vector<CoveringMap> out;
  for (Point t0 = 0; t0 < target.size(); ++t0) {
    std::vector<Point> img(n, kUnset);
    img[0] = t0;
    std::vector<Point> stack{0};
    bool ok = true;
    while (!stack.empty() && ok) {
      Point s = stack.back();
      stack.pop_back();
      Point t = img[s];
      std::pair<Point, Point> steps[] = {{source.sigma_a()(s), target.sigma_a()(t)},
                                         {source.sigma_b()(s), target.sigma_b()(t)},
                                         {sa_inv(s), ta_inv(t)},
                                         {sb_inv(s), tb_inv(t)}};
      for (auto [x, y] : steps) {
        if (img[x] == kUnset) {
          img[x] = y;
          stack.push_back(x);
        } else if (img[x] != y) {
          ok = false;
          break;
        }
      }
    }
    // Source and target are connected, so an equivariant map is onto with
    // fibres of constant size.
    if (ok) out.push_back(cover_from_map(source, target, std::move(img)));
  }
  return out;
}

CoveringMap identity_cover(Origami const& o) {
  std::vector<Point> f(o.size());
  for (Point s = 0; s < o.size(); ++s) f[s] = s;
  return CoveringMap{o, o, std::move(f), 1};
}

CoveringMap projection_to_unit_torus(Origami const& o) {
  return CoveringMap{o, torus(1), std::vector<Point>(o.size(), 0), o.size()};
}

CoveringMap compose_covers(CoveringMap const& c1, CoveringMap const& c2) {
  if (!(c1.target == c2.source)) {
    throw Error("compose_covers: target of the first cover is not the source of the second");
  }
  std::vector<Point> f(c1.source.size());
  for (Point s = 0; s < f.size(); ++s) f[s] = c2(c1(s));
  return CoveringMap{c1.source, c2.target, std::move(f), c1.degree * c2.degree};
}

CoveringMap refine_cover(CoveringMap const& c, std::size_t k) {
  auto src = refine(c.source, k);
  auto tgt = refine(c.target, k);
  std::vector<Point> f(src.origami.size());
  for (Point s = 0; s < c.source.size(); ++s) {
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) f[src.index(s, i, j)] = tgt.index(c(s), i, j);
    }
  }
  return CoveringMap{std::move(src.origami), std::move(tgt.origami), std::move(f), c.degree};
}

CoveringMap grid_relabel(std::size_t m, std::size_t k) {
  auto sub = refine(torus(m), k);
  std::size_t side = m * k;
  std::vector<Point> f(sub.origami.size());
  for (std::size_t y2 = 0; y2 < m; ++y2) {
    for (std::size_t x2 = 0; x2 < m; ++x2) {
      auto s = static_cast<Point>(y2 * m + x2);
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
          f[sub.index(s, i, j)] = static_cast<Point>((y2 * k + i) * side + x2 * k + j);
        }
      }
    }
  }
  return cover_from_map(std::move(sub.origami), torus(side), std::move(f));
}

CoveringMap refine_over_grid(CoveringMap const& c, std::size_t k) {
  auto m = grid_side(c.target);
  if (!m) throw Error("refine_over_grid: target is not a grid torus");
  return compose_covers(refine_cover(c, k), grid_relabel(*m, k));
}

VoltageData VoltageData::trivial(Origami base, std::size_t sheets) {
  std::size_t n = base.size();
  return VoltageData{std::move(base), sheets,
                     std::vector<Permutation>(n, Permutation::identity(sheets)),
                     std::vector<Permutation>(n, Permutation::identity(sheets))};
}

VoltageCover voltage_cover(VoltageData const& v) {
  std::size_t n = v.base.size();
  std::size_t d = v.sheets;
  if (v.w_a.size() != n || v.w_b.size() != n) throw Error("voltage data size mismatch");
  std::vector<Point> a(n * d), b(n * d), proj(n * d);
  for (Point s = 0; s < n; ++s) {
    if (v.w_a[s].degree() != d || v.w_b[s].degree() != d) {
      throw DegreeMismatch("voltage of wrong degree at square " + std::to_string(s + 1));
    }
    for (Point x = 0; x < d; ++x) {
      Point idx = static_cast<Point>(s * d + x);
      a[idx] = static_cast<Point>(v.base.sigma_a()(s) * d + v.w_a[s](x));
      b[idx] = static_cast<Point>(v.base.sigma_b()(s) * d + v.w_b[s](x));
      proj[idx] = s;
    }
  }
  // make() throws NotConnected on a disconnected result.
  auto o = Origami::make(Permutation::from_images(std::move(a)),
                         Permutation::from_images(std::move(b)));
  CoveringMap c{o, v.base, std::move(proj), d};
  return VoltageCover{std::move(o), std::move(c)};
}

VoltageForm to_voltage(CoveringMap const& c) {
  auto fib = c.fibers();
  std::size_t n = c.target.size();
  std::size_t d = c.degree;
  std::vector<Point> sheet_of(c.source.size());
  for (auto const& f : fib) {
    for (Point x = 0; x < f.size(); ++x) sheet_of[f[x]] = x;
  }
  VoltageData data = VoltageData::trivial(c.target, d);
  for (Point t = 0; t < n; ++t) {
    std::vector<Point> wa(d), wb(d);
    for (Point x = 0; x < d; ++x) {
      wa[x] = sheet_of[c.source.sigma_a()(fib[t][x])];
      wb[x] = sheet_of[c.source.sigma_b()(fib[t][x])];
    }
    data.w_a[t] = Permutation::from_images(std::move(wa));
    data.w_b[t] = Permutation::from_images(std::move(wb));
  }
  return VoltageForm{std::move(data), std::move(fib)};
}

RamificationProfile const& ProfileMap::at_vertex(std::size_t v) const {
  return entries.at(v).profile;
}

RamificationProfile const& ProfileMap::at(std::size_t x, std::size_t y) const {
  for (auto const& e : entries) {
    if (e.coord && e.coord->x == x && e.coord->y == y) return e.profile;
  }
  throw Error("profile map has no grid point (" + std::to_string(x) + "," +
              std::to_string(y) + ")");
}

std::string ProfileMap::to_json() const {
  nlohmann::json j;
  j["degree"] = degree;
  auto pts = nlohmann::json::array();
  for (auto const& e : entries) {
    nlohmann::json p;
    if (e.coord) {
      p["coord"] = {e.coord->x, e.coord->y, e.coord->k};
    } else {
      p["coord"] = nullptr;
    }
    p["vertex"] = e.vertex;
    p["profile"] = e.profile.parts();
    pts.push_back(std::move(p));
  }
  j["points"] = std::move(pts);
  return j.dump();
}

ProfileMap ramification_profile(CoveringMap const& c) {
  auto src = vertex_structure(c.source);
  auto tgt = vertex_structure(c.target);
  std::vector<std::vector<std::size_t>> parts(tgt.count());
  for (std::size_t w = 0; w < src.count(); ++w) {
    std::size_t v = tgt.vertex_of[c(src.cycles[w][0])];
    std::size_t lw = src.cycles[w].size();
    std::size_t lv = tgt.cycles[v].size();
    if (lw % lv != 0) {
      throw Error("ramification: cycle length " + std::to_string(lw) +
                  " not divisible by " + std::to_string(lv));
    }
    parts[v].push_back(lw / lv);
  }
  auto k = grid_side(c.target);
  ProfileMap pm;
  pm.degree = c.degree;
  for (std::size_t v = 0; v < tgt.count(); ++v) {
    ProfileEntry e;
    e.vertex = v;
    if (k) {
      Point s = tgt.cycles[v][0];
      e.coord = GridPoint{s % *k, s / *k, *k};
    }
    e.profile = RamificationProfile(std::move(parts[v]));
    pm.entries.push_back(std::move(e));
  }
  return pm;
}

std::size_t vertex_image(CoveringMap const& c, VertexStructure const& src,
                         VertexStructure const& tgt, std::size_t w) {
  return tgt.vertex_of[c(src.cycles[w][0])];
}

std::vector<std::size_t> vertex_fiber(CoveringMap const& c, VertexStructure const& src,
                                      VertexStructure const& tgt, std::size_t v) {
  std::vector<std::size_t> out;
  for (std::size_t w = 0; w < src.count(); ++w) {
    if (vertex_image(c, src, tgt, w) == v) out.push_back(w);
  }
  return out;
}

std::size_t grid_vertex(std::size_t k, std::size_t x, std::size_t y) {
  // Every vertex of torus(k) is a fixed point; ids follow square order.
  return (y % k) * k + (x % k);
}

Permutation local_monodromy_permutation(VoltageData const& v, std::size_t vertex) {
  auto vs = vertex_structure(v.base);
  if (vertex >= vs.count()) throw Error("local_monodromy: no vertex " + std::to_string(vertex));
  auto const& a = v.base.sigma_a();
  auto const& b = v.base.sigma_b();
  Permutation ainv = a.inverse();
  Permutation binv = b.inverse();
  Permutation total = Permutation::identity(v.sheets);
  Point s = vs.cycles[vertex][0];
  for (std::size_t step = 0; step < vs.cycles[vertex].size(); ++step) {
    Point left = ainv(s);
    Point below = binv(left);
    Point right = a(below);
    total = compose_all(v.sheets, {total, v.w_a[left].inverse(), v.w_b[below].inverse(),
                                   v.w_a[below], v.w_b[right]});
    s = b(right);
  }
  return total;
}

CycleType local_monodromy(VoltageData const& v, std::size_t vertex) {
  return local_monodromy_permutation(v, vertex).cycle_type();
}

namespace {

struct Step {
  char dir;  // x, X, y, Y
  long long count;
};

std::vector<Step> parse_path_word(std::string_view word) {
  std::vector<Step> steps;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < word.size() && std::isspace(static_cast<unsigned char>(word[i]))) ++i;
  };
  skip();
  while (i < word.size()) {
    char c = word[i++];
    if (c != 'x' && c != 'X' && c != 'y' && c != 'Y') {
      throw ParseError(std::string("path word: unexpected '") + c + "'");
    }
    long long e = 1;
    skip();
    if (i < word.size() && word[i] == '^') {
      ++i;
      skip();
      bool neg = false;
      if (i < word.size() && word[i] == '-') {
        neg = true;
        ++i;
      }
      if (i >= word.size() || !std::isdigit(static_cast<unsigned char>(word[i]))) {
        throw ParseError("path word: missing exponent");
      }
      e = 0;
      while (i < word.size() && std::isdigit(static_cast<unsigned char>(word[i]))) {
        e = e * 10 + (word[i++] - '0');
      }
      if (neg) e = -e;
    }
    char lower = static_cast<char>(std::tolower(c));
    if (c != lower) e = -e;
    steps.push_back({lower, e});
    skip();
  }
  return steps;
}

}  // namespace

Permutation path_monodromy(CoveringMap const& c, Point base_square, std::string_view word) {
  auto steps = parse_path_word(word);
  auto fib = c.fibers();
  auto move = [](Origami const& o, Step const& st, Point s) {
    Permutation const& p = st.dir == 'x' ? o.sigma_a() : o.sigma_b();
    if (st.count >= 0) {
      for (long long r = 0; r < st.count; ++r) s = p(s);
    } else {
      Permutation inv = p.inverse();
      for (long long r = 0; r < -st.count; ++r) s = inv(s);
    }
    return s;
  };
  Point end = base_square;
  for (auto const& st : steps) end = move(c.target, st, end);
  if (end != base_square) throw Error("path_monodromy: word is not a closed path in the base");
  auto const& sheets = fib[base_square];
  std::vector<Point> img(sheets.size());
  for (Point x = 0; x < sheets.size(); ++x) {
    Point s = sheets[x];
    for (auto const& st : steps) s = move(c.source, st, s);
    auto it = std::find(sheets.begin(), sheets.end(), s);
    img[x] = static_cast<Point>(it - sheets.begin());
  }
  return Permutation::from_images(std::move(img));
}

long long euler_characteristic(Origami const& o) {
  auto v = static_cast<long long>(vertex_structure(o).count());
  return v - static_cast<long long>(o.size());
}

bool riemann_hurwitz_holds(CoveringMap const& c, ProfileMap const& pm) {
  long long defect = 0;
  for (auto const& e : pm.entries) {
    for (auto p : e.profile.parts()) defect += static_cast<long long>(p) - 1;
  }
  return euler_characteristic(c.source) ==
         static_cast<long long>(c.degree) * euler_characteristic(c.target) - defect;
}

}  // namespace origami
