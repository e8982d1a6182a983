#include "origami/zoo.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "origami/error.hpp"
#include "origami/fibre_product.hpp"

namespace origami {

CoveringMap const& NamedSurface::cover(std::string_view n) const {
  for (auto const& c : covers) {
    if (c.name == n) return c.map;
  }
  throw Error(name + " has no cover named '" + std::string(n) + "'");
}

bool NamedSurface::has_cover(std::string_view n) const {
  for (auto const& c : covers) {
    if (c.name == n) return true;
  }
  return false;
}

std::size_t NamedSurface::marked_vertex(std::string_view n) const {
  for (auto const& m : marked) {
    if (m.name == n) return m.vertex;
  }
  throw Error(name + " has no marked point named '" + std::string(n) + "'");
}

namespace {

Permutation cyc(std::string_view text, std::size_t n) { return parse_permutation(text, n); }

std::vector<MarkedPoint> zeros_of(Origami const& o) {
  std::vector<MarkedPoint> out;
  auto vs = vertex_structure(o);
  std::size_t k = 0;
  for (std::size_t v = 0; v < vs.count(); ++v) {
    if (vs.cycles[v].size() > 1) out.push_back({"zero" + std::to_string(k++), v});
  }
  return out;
}

Origami m4_origami() {
  return make_origami(cyc("(1,2,3,4,5,6)(7,8,9,10,11,12)", 12),
                      cyc("(1,11,5,7,3,9)(2,12,4,10,6,8)", 12));
}

CoveringMap m4_pi2() {
  // 1-based square -> torus(2) square (row * 2 + column).
  std::vector<Point> f(12);
  for (std::size_t s : {8, 10, 12}) f[s - 1] = 0;
  for (std::size_t s : {9, 11, 7}) f[s - 1] = 1;
  for (std::size_t s : {2, 6, 4}) f[s - 1] = 2;
  for (std::size_t s : {1, 5, 3}) f[s - 1] = 3;
  return cover_from_map(m4_origami(), torus(2), std::move(f));
}

Origami m4_tilde_origami() {
  auto a = cyc("(7,20,21,10,11,12)(8,9,22,23,24,19)(1,2,3,4,5,6)(13,14,15,16,17,18)", 24);
  std::vector<std::pair<int, int>> b_pairs = {
      {8, 2},   {9, 1},   {10, 6},  {11, 5},  {12, 4},  {7, 3},   {2, 12},  {1, 11},
      {6, 8},   {5, 7},   {4, 10},  {3, 9},   {20, 14}, {21, 13}, {22, 18}, {23, 17},
      {24, 16}, {19, 15}, {14, 24}, {13, 23}, {18, 20}, {17, 19}, {16, 22}, {15, 21}};
  std::vector<Point> b(24);
  for (auto [from, to] : b_pairs) b[from - 1] = static_cast<Point>(to - 1);
  return make_origami(std::move(a), Permutation::from_images(std::move(b)));
}

CoveringMap m4_tilde_h() {
  std::vector<Point> f(24);
  for (Point s = 0; s < 24; ++s) f[s] = s % 12;
  return cover_from_map(m4_tilde_origami(), m4_origami(), std::move(f));
}

std::vector<MarkedPoint> m4_marks(Origami const& o, std::size_t k) {
  // In refine(M4, k) the corner of coarse square s is the corner of (s, 0, 0).
  auto at = [&](std::size_t square1) {
    return vertex_structure(o).vertex_of.at((square1 - 1) * k * k);
  };
  return {{"A1", at(8)}, {"A2", at(10)}, {"A3", at(12)},
          {"X1", at(9)}, {"Y1", at(1)},  {"Z1", at(2)}};
}

// Preimages of A1, A2, A3 under h (possibly refined).
std::vector<MarkedPoint> m4_tilde_marks(CoveringMap const& h, std::vector<MarkedPoint> const& down) {
  auto src = vertex_structure(h.source);
  auto tgt = vertex_structure(h.target);
  std::vector<MarkedPoint> out;
  for (auto const& m : down) {
    if (m.name[0] != 'A') continue;
    auto fib = vertex_fiber(h, src, tgt, m.vertex);
    std::string hat = m.name + "hat";
    if (fib.size() == 1) {
      out.push_back({hat, fib[0]});
    } else {
      for (std::size_t i = 0; i < fib.size(); ++i) {
        out.push_back({hat + "_" + std::to_string(i + 1), fib[i]});
      }
    }
  }
  return out;
}

std::size_t parse_size(std::string_view text, std::string_view what) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw ParseError("bad " + std::string(what) + " '" + std::string(text) + "'");
  }
  return v;
}

}  // namespace

NamedSurface build_ew() {
  auto o = make_origami(cyc("(1,6,3,8)(2,5,4,7)", 8), cyc("(1,2,3,4)(5,6,7,8)", 8));
  NamedSurface s{"ew", o, {}, zeros_of(o)};
  s.covers.push_back({"pi", projection_to_unit_torus(o)});
  return s;
}

NamedSurface build_ew128() {
  auto ew = build_ew();
  auto pi = refine_over_grid(ew.cover("pi"), 4);
  NamedSurface s{"ew128", pi.source, {}, zeros_of(pi.source)};
  s.covers.push_back({"pi", std::move(pi)});
  return s;
}

NamedSurface build_x() {
  auto base = build_ew128();
  auto const& b = base.origami;
  auto v = VoltageData::trivial(b, 4);
  // Square (a, i, j) of refine(EW, 4), a 1-based, has index (a-1)*16 + i*4 + j.
  auto sq = [](std::size_t a, std::size_t i, std::size_t j) { return (a - 1) * 16 + i * 4 + j; };
  v.w_a[sq(1, 0, 3)] = cyc("(1,3)(2,4)", 4);
  v.w_a[sq(2, 0, 3)] = cyc("(1,2)", 4);
  v.w_a[sq(6, 0, 3)] = cyc("(1,3)(2,4)", 4);
  v.w_b[sq(4, 3, 3)] = cyc("(1,3,2)", 4);
  auto vc = voltage_cover(v);
  NamedSurface s{"x512", vc.origami, {}, zeros_of(vc.origami)};
  auto q = compose_covers(vc.cover, base.cover("pi"));
  s.covers.push_back({"p", std::move(vc.cover)});
  s.covers.push_back({"q", std::move(q)});
  return s;
}

NamedSurface build_m4() {
  auto o = m4_origami();
  NamedSurface s{"m4", o, {}, m4_marks(o, 1)};
  s.covers.push_back({"pi2", m4_pi2()});
  return s;
}

NamedSurface build_m4_tilde() {
  auto h = m4_tilde_h();
  NamedSurface s{"m4tilde", h.source, {}, m4_tilde_marks(h, m4_marks(h.target, 1))};
  s.covers.push_back({"pi2tilde", compose_covers(h, m4_pi2())});
  s.covers.push_back({"h", std::move(h)});
  return s;
}

NamedSurface build_m4_grid6() {
  auto pi2 = refine_over_grid(m4_pi2(), 3);
  NamedSurface s{"m4grid6", pi2.source, {}, m4_marks(pi2.source, 3)};
  s.covers.push_back({"pi2", std::move(pi2)});
  return s;
}

NamedSurface build_m4_tilde_grid6() {
  auto h3 = refine_cover(m4_tilde_h(), 3);
  auto down = m4_marks(h3.target, 3);
  auto pi2 = refine_over_grid(compose_covers(m4_tilde_h(), m4_pi2()), 3);
  NamedSurface s{"m4tildegrid6", h3.source, {}, m4_tilde_marks(h3, down)};
  s.covers.push_back({"pi2tilde", std::move(pi2)});
  s.covers.push_back({"h", std::move(h3)});
  return s;
}

NamedSurface build_y(std::size_t n) {
  if (n < 2) throw Error("Y_n needs n >= 2");
  auto v = VoltageData::trivial(torus(6), n);
  std::vector<Point> shift(n);
  for (Point i = 0; i < n; ++i) shift[i] = static_cast<Point>((i + 1) % n);
  auto swap = cyc("(1,2)", n);
  // Squares are 0-based row * 6 + column: the slit edges are the tops of
  // squares 30, 31, 0, 1 and the right edge of square 1.
  v.w_b[30] = Permutation::from_images(std::move(shift));
  v.w_b[31] = swap;
  v.w_b[0] = swap;
  v.w_b[1] = swap;
  v.w_a[1] = swap;
  auto vc = voltage_cover(v);
  NamedSurface s{"y:" + std::to_string(n), vc.origami, {}, {}};
  s.covers.push_back({"pi1", std::move(vc.cover)});
  return s;
}

NamedSurface build_cov_m4(std::size_t n, bool allow_any_n) {
  if (!allow_any_n && (n < 5 || n % 2 == 0)) {
    throw Error("CovM4(n) needs odd n >= 5 (got " + std::to_string(n) + ")");
  }
  auto y = build_y(n);
  auto mt = build_m4_tilde_grid6();
  auto fp = fake_fibre_product(y.cover("pi1"), mt.cover("pi2tilde"));
  auto q1 = compose_covers(fp.to_second, mt.cover("h"));
  NamedSurface s{"covm4:" + std::to_string(n), fp.origami, {}, {}};
  s.covers.push_back({"q", std::move(fp.to_base)});
  s.covers.push_back({"q1tilde", std::move(fp.to_second)});
  s.covers.push_back({"q1", std::move(q1)});
  s.covers.push_back({"q2", std::move(fp.to_first)});
  return s;
}

NamedSurface build_torus(std::size_t k) {
  auto o = torus(k);
  NamedSurface s{"torus:" + std::to_string(k), o, {}, {}};
  s.covers.push_back({"pi", identity_cover(o)});
  return s;
}

NamedSurface build_named(std::string_view name) {
  if (name == "ew") return build_ew();
  if (name == "ew128") return build_ew128();
  if (name == "x512") return build_x();
  if (name == "m4") return build_m4();
  if (name == "m4tilde") return build_m4_tilde();
  auto colon = name.find(':');
  if (colon != std::string_view::npos) {
    auto head = name.substr(0, colon);
    auto arg = parse_size(name.substr(colon + 1), "zoo parameter");
    if (head == "y") return build_y(arg);
    if (head == "covm4") return build_cov_m4(arg, true);
    if (head == "torus") return build_torus(arg);
  }
  throw ParseError("unknown zoo name '" + std::string(name) + "'");
}

std::vector<std::string> zoo_names() {
  return {"ew", "ew128", "x512", "m4", "m4tilde", "y:<n>", "covm4:<n>", "torus:<k>"};
}

std::string covers_manifest(NamedSurface const& s) {
  nlohmann::json j;
  j["name"] = s.name;
  j["origami"] = to_text(s.origami);
  auto covers = nlohmann::json::array();
  for (auto const& c : s.covers) {
    std::vector<std::size_t> map;
    for (Point x : c.map.square_map) map.push_back(x + 1);
    covers.push_back({{"name", c.name},
                      {"degree", c.map.degree},
                      {"target", to_text(c.map.target)},
                      {"map", map}});
  }
  j["covers"] = std::move(covers);
  auto marked = nlohmann::json::array();
  for (auto const& m : s.marked) marked.push_back({{"name", m.name}, {"vertex", m.vertex}});
  j["marked"] = std::move(marked);
  return j.dump(2);
}

NamedSurface parse_covers_manifest(std::string_view json) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json);
  } catch (nlohmann::json::exception const& e) {
    throw ParseError(std::string("covers manifest: ") + e.what());
  }
  try {
    NamedSurface s{j.value("name", std::string("manifest")),
                   parse_origami(j.at("origami").get<std::string>()),
                   {},
                   {}};
    for (auto const& c : j.value("covers", nlohmann::json::array())) {
      auto target = parse_origami(c.at("target").get<std::string>());
      std::vector<Point> map;
      for (auto x : c.at("map").get<std::vector<std::size_t>>()) {
        if (x == 0) throw ParseError("covers manifest: square labels are 1-based");
        map.push_back(static_cast<Point>(x - 1));
      }
      s.covers.push_back({c.at("name").get<std::string>(),
                          cover_from_map(s.origami, std::move(target), std::move(map))});
    }
    for (auto const& m : j.value("marked", nlohmann::json::array())) {
      s.marked.push_back({m.at("name").get<std::string>(), m.at("vertex").get<std::size_t>()});
    }
    return s;
  } catch (nlohmann::json::exception const& e) {
    throw ParseError(std::string("covers manifest: ") + e.what());
  }
}

NamedSurface read_covers_manifest(std::string const& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_covers_manifest(ss.str());
}

}  // namespace origami
