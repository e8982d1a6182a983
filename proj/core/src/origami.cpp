#include "origami/origami.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include "origami/error.hpp"

namespace origami {

Origami Origami::make(Permutation sigma_a, Permutation sigma_b) {
  if (sigma_a.degree() != sigma_b.degree()) {
    throw DegreeMismatch("origami: sigma_a and sigma_b have different degrees");
  }
  if (sigma_a.degree() == 0) throw Error("origami: need at least one square");
  Permutation gens[] = {sigma_a, sigma_b};
  auto parts = orbits(gens, sigma_a.degree());
  if (parts.size() != 1) {
    throw NotConnected("origami: squares split into " + std::to_string(parts.size()) +
                           " components",
                       std::move(parts));
  }
  return Origami(std::move(sigma_a), std::move(sigma_b));
}

Origami Origami::make_unchecked(Permutation sigma_a, Permutation sigma_b) {
  return Origami(std::move(sigma_a), std::move(sigma_b));
}

Origami Origami::relabeled(Permutation const& r) const {
  // new_a(r(s)) = r(a(s))  =>  new_a = r^-1 * a * r
  Permutation rinv = r.inverse();
  return Origami(rinv * a_ * r, rinv * b_ * r);
}

Origami make_origami(Permutation sigma_a, Permutation sigma_b) {
  return Origami::make(std::move(sigma_a), std::move(sigma_b));
}

Origami torus(std::size_t k) {
  if (k == 0) throw Error("torus: side must be positive");
  std::vector<Point> a(k * k), b(k * k);
  for (std::size_t y = 0; y < k; ++y) {
    for (std::size_t x = 0; x < k; ++x) {
      a[y * k + x] = static_cast<Point>(y * k + (x + 1) % k);
      b[y * k + x] = static_cast<Point>(((y + 1) % k) * k + x);
    }
  }
  return Origami::make_unchecked(Permutation::from_images(std::move(a)),
                                 Permutation::from_images(std::move(b)));
}

std::optional<std::size_t> grid_side(Origami const& o) {
  std::size_t n = o.size();
  std::size_t k = 1;
  while (k * k < n) ++k;
  if (k * k != n) return std::nullopt;
  for (std::size_t y = 0; y < k; ++y) {
    for (std::size_t x = 0; x < k; ++x) {
      auto s = static_cast<Point>(y * k + x);
      if (o.sigma_a()(s) != y * k + (x + 1) % k) return std::nullopt;
      if (o.sigma_b()(s) != ((y + 1) % k) * k + x) return std::nullopt;
    }
  }
  return k;
}

Permutation vertex_permutation(Origami const& o) {
  return commutator(o.sigma_a(), o.sigma_b());
}

VertexStructure vertex_structure(Origami const& o) {
  VertexStructure vs;
  vs.cycles = vertex_permutation(o).cycles();
  vs.vertex_of.assign(o.size(), 0);
  for (std::size_t v = 0; v < vs.cycles.size(); ++v) {
    for (Point s : vs.cycles[v]) vs.vertex_of[s] = v;
  }
  return vs;
}

Stratum::Stratum(std::vector<std::size_t> orders) : orders_(std::move(orders)) {
  std::erase(orders_, std::size_t{0});
  std::sort(orders_.begin(), orders_.end(), std::greater<>());
}

std::size_t Stratum::total_order() const {
  return std::accumulate(orders_.begin(), orders_.end(), std::size_t{0});
}

std::string Stratum::str() const {
  std::ostringstream out;
  out << "H(";
  bool first = true;
  for (std::size_t i = 0; i < orders_.size();) {
    std::size_t j = i;
    while (j < orders_.size() && orders_[j] == orders_[i]) ++j;
    std::size_t run = j - i;
    if (run >= 5) {
      if (!first) out << ',';
      out << orders_[i] << '^' << run;
      first = false;
    } else {
      for (std::size_t r = 0; r < run; ++r) {
        if (!first) out << ',';
        out << orders_[i];
        first = false;
      }
    }
    i = j;
  }
  out << ')';
  return out.str();
}

StratumGenus stratum_genus(Origami const& o) {
  auto vs = vertex_structure(o);
  std::vector<std::size_t> orders;
  for (auto const& c : vs.cycles) orders.push_back(c.size() - 1);
  StratumGenus out{Stratum(std::move(orders)), 0};
  // Euler characteristic: V - 2n + n = 2 - 2g.
  std::size_t n = o.size();
  std::size_t v = vs.count();
  out.genus = 1 + (n - v) / 2;
  return out;
}

Subdivision refine(Origami const& o, std::size_t k) {
  if (k == 0) throw Error("refine: k must be positive");
  std::size_t n = o.size();
  Subdivision sub{Origami::make_unchecked(Permutation::identity(1), Permutation::identity(1)),
                  k,
                  std::vector<Point>(n * k * k)};
  std::vector<Point> a(n * k * k), b(n * k * k);
  for (Point s = 0; s < n; ++s) {
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) {
        Point idx = sub.index(s, i, j);
        sub.parent[idx] = s;
        a[idx] = j + 1 < k ? sub.index(s, i, j + 1) : sub.index(o.sigma_a()(s), i, 0);
        b[idx] = i + 1 < k ? sub.index(s, i + 1, j) : sub.index(o.sigma_b()(s), 0, j);
      }
    }
  }
  sub.origami = Origami::make_unchecked(Permutation::from_images(std::move(a)),
                                        Permutation::from_images(std::move(b)));
  return sub;
}

Origami CanonicalForm::origami() const {
  return Origami::make_unchecked(Permutation::from_images(sigma_a),
                                 Permutation::from_images(sigma_b));
}

CanonicalForm canonicalize(Origami const& o) {
  std::vector<Point> starts(o.size());
  std::iota(starts.begin(), starts.end(), Point{0});
  return canonicalize_from(o, starts);
}

CanonicalForm canonicalize_from(Origami const& o, std::span<Point const> starts) {
  std::size_t n = o.size();
  auto const a = o.sigma_a().images();
  auto const b = o.sigma_b().images();
  std::vector<Point> ainv(n), binv(n);
  for (Point s = 0; s < n; ++s) {
    ainv[a[s]] = s;
    binv[b[s]] = s;
  }

  constexpr Point kUnset = ~Point{0};
  std::vector<Point> best_a, best_b, best_label;
  std::vector<Point> label(n), order(n), out_a(n), out_b(n);

  for (Point start : starts) {
    std::fill(label.begin(), label.end(), kUnset);
    label[start] = 0;
    order[0] = start;
    Point next = 1;
    // -1: already smaller than best, 0: tied so far.
    int state = best_a.empty() ? -1 : 0;
    bool aborted = false;
    for (Point i = 0; i < n; ++i) {
      Point v = order[i];
      for (Point w : {a[v], ainv[v], b[v], binv[v]}) {
        if (label[w] == kUnset) {
          label[w] = next;
          order[next++] = w;
        }
      }
      out_a[i] = label[a[v]];
      out_b[i] = label[b[v]];
      if (state == 0) {
        if (out_a[i] != best_a[i]) {
          if (out_a[i] > best_a[i]) { aborted = true; break; }
          state = -1;
        } else if (out_b[i] != best_b[i]) {
          if (out_b[i] > best_b[i]) { aborted = true; break; }
          state = -1;
        }
      }
    }
    if (!aborted && state == -1) {
      best_a = out_a;
      best_b = out_b;
      best_label = label;
    }
  }
  return CanonicalForm{std::move(best_a), std::move(best_b),
                       Permutation::from_images(std::move(best_label))};
}

bool is_equivalent(Origami const& x, Origami const& y) {
  if (x.size() != y.size()) return false;
  if (x.sigma_a().cycle_type() != y.sigma_a().cycle_type()) return false;
  if (x.sigma_b().cycle_type() != y.sigma_b().cycle_type()) return false;
  return canonicalize(x) == canonicalize(y);
}

std::optional<Permutation> find_isomorphism(Origami const& x, Origami const& y) {
  if (x.size() != y.size()) return std::nullopt;
  auto cx = canonicalize(x);
  auto cy = canonicalize(y);
  if (!(cx == cy)) return std::nullopt;
  // x --cx.relabel--> canon <--cy.relabel-- y
  return cx.relabel * cy.relabel.inverse();
}

std::string to_text(Origami const& o) {
  std::ostringstream out;
  out << "squares: " << o.size() << '\n';
  out << "a: " << o.sigma_a().str() << '\n';
  out << "b: " << o.sigma_b().str() << '\n';
  return out.str();
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Origami parse_origami(std::string_view text) {
  std::vector<std::pair<std::string, std::string>> fields;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto body = trim(line);
    if (body.empty()) continue;
    auto colon = body.find(':');
    if (colon == std::string_view::npos) throw ParseError("expected 'key: value' line");
    fields.emplace_back(std::string(trim(body.substr(0, colon))),
                        std::string(trim(body.substr(colon + 1))));
  }
  if (fields.size() != 3 || fields[0].first != "squares" || fields[1].first != "a" ||
      fields[2].first != "b") {
    throw ParseError("origami file must contain keys squares, a, b in this order");
  }
  std::size_t n = 0;
  try {
    std::size_t used = 0;
    n = std::stoul(fields[0].second, &used);
    if (used != fields[0].second.size()) throw ParseError("bad square count");
  } catch (std::logic_error const&) {
    throw ParseError("bad square count '" + fields[0].second + "'");
  }
  auto a = fields[1].second == "()" ? Permutation::identity(n)
                                    : parse_permutation(fields[1].second, n);
  auto b = fields[2].second == "()" ? Permutation::identity(n)
                                    : parse_permutation(fields[2].second, n);
  return make_origami(std::move(a), std::move(b));
}

Origami read_origami_file(std::string const& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_origami(buf.str());
}

}  // namespace origami
