#include "origami/homology.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "origami/error.hpp"
#include "origami/zoo.hpp"

namespace origami {

namespace {

std::int64_t add(std::int64_t x, std::int64_t y) {
  std::int64_t r;
  if (__builtin_add_overflow(x, y, &r)) throw Error("chain coefficient overflow");
  return r;
}

std::int64_t mul(std::int64_t x, std::int64_t y) {
  std::int64_t r;
  if (__builtin_mul_overflow(x, y, &r)) throw Error("chain coefficient overflow");
  return r;
}

void bump(Chain& c, std::size_t e, std::int64_t k) { c[e] = add(c[e], k); }

}  // namespace

std::size_t ChainComplex::tail(std::size_t e) const {
  return vertex_of[e < squares ? e : e - squares];
}

std::size_t ChainComplex::head(std::size_t e) const {
  if (e < squares) return vertex_of[sigma_a(static_cast<Point>(e))];
  return vertex_of[sigma_b(static_cast<Point>(e - squares))];
}

Chain ChainComplex::boundary2(std::vector<std::int64_t> const& faces) const {
  Chain c(edges(), 0);
  for (Point s = 0; s < squares; ++s) {
    std::int64_t k = faces[s];
    if (k == 0) continue;
    bump(c, s, k);
    bump(c, squares + sigma_a(s), k);
    bump(c, sigma_b(s), -k);
    bump(c, squares + s, -k);
  }
  return c;
}

std::vector<std::int64_t> ChainComplex::boundary1(Chain const& c) const {
  std::vector<std::int64_t> out(vertices, 0);
  for (std::size_t e = 0; e < edges(); ++e) {
    if (c[e] == 0) continue;
    out[head(e)] = add(out[head(e)], c[e]);
    out[tail(e)] = add(out[tail(e)], -c[e]);
  }
  return out;
}

bool ChainComplex::is_cycle(Chain const& c) const {
  if (c.size() != edges()) return false;
  auto b = boundary1(c);
  return std::all_of(b.begin(), b.end(), [](std::int64_t x) { return x == 0; });
}

ChainComplex chain_complex(Origami const& o) {
  auto vs = vertex_structure(o);
  return ChainComplex{o.size(), vs.count(), vs.vertex_of, o.sigma_a(), o.sigma_b(),
                      o.sigma_a().inverse(), o.sigma_b().inverse()};
}

namespace {

// The two faces on either side of edge e with the coefficient of e in their
// boundaries: {lower or left face, +-1}, {upper or right face, +-1}. For h_s
// the dual edge runs up from b^-1(s) to s; for v_s east from a^-1(s) to s.
struct EdgeFaces {
  std::size_t from, to;  // dual edge direction
  int coeff_from, coeff_to;
};

EdgeFaces edge_faces(ChainComplex const& cx, std::size_t e) {
  std::size_t n = cx.squares;
  if (e < n) {
    auto s = static_cast<Point>(e);
    // h_s is the bottom of s (+1) and the top of b^-1(s) (-1).
    return {cx.sigma_b_inv(s), s, -1, +1};
  }
  auto s = static_cast<Point>(e - n);
  // v_s is the left side of s (-1) and the right side of a^-1(s) (+1).
  return {cx.sigma_a_inv(s), s, +1, -1};
}

}  // namespace

CycleBasis::CycleBasis(Origami const& o) : cx_(chain_complex(o)) {
  std::size_t n = cx_.squares;
  std::size_t m = cx_.edges();
  std::size_t nv = cx_.vertices;
  in_tree_.assign(m, 0);
  in_cotree_.assign(m, 0);

  // Primal spanning tree by breadth-first search from vertex 0.
  std::vector<std::vector<std::size_t>> incident(nv);
  for (std::size_t e = 0; e < m; ++e) {
    incident[cx_.tail(e)].push_back(e);
    if (cx_.head(e) != cx_.tail(e)) incident[cx_.head(e)].push_back(e);
  }
  constexpr std::size_t kNone = ~std::size_t{0};
  vparent_.assign(nv, kNone);
  vparent_edge_.assign(nv, kNone);
  vparent_sign_.assign(nv, 0);
  vdepth_.assign(nv, 0);
  std::vector<char> seen(nv, 0);
  std::deque<std::size_t> q{0};
  seen[0] = 1;
  while (!q.empty()) {
    std::size_t x = q.front();
    q.pop_front();
    for (std::size_t e : incident[x]) {
      std::size_t y = cx_.tail(e) == x ? cx_.head(e) : cx_.tail(e);
      if (seen[y]) continue;
      seen[y] = 1;
      in_tree_[e] = 1;
      vparent_[y] = x;
      vparent_edge_[y] = e;
      vparent_sign_[y] = cx_.tail(e) == x ? +1 : -1;
      vdepth_[y] = vdepth_[x] + 1;
      q.push_back(y);
    }
  }

  // Dual spanning tree on the edges outside the primal tree.
  std::vector<std::vector<std::size_t>> around(n);
  for (std::size_t e = 0; e < m; ++e) {
    if (in_tree_[e]) continue;
    auto ef = edge_faces(cx_, e);
    if (ef.from == ef.to) continue;
    around[ef.from].push_back(e);
    around[ef.to].push_back(e);
  }
  fparent_.assign(n, kNone);
  fparent_edge_.assign(n, kNone);
  std::vector<char> fseen(n, 0);
  fseen[0] = 1;
  face_order_.push_back(0);
  for (std::size_t i = 0; i < face_order_.size(); ++i) {
    std::size_t f = face_order_[i];
    for (std::size_t e : around[f]) {
      auto ef = edge_faces(cx_, e);
      std::size_t g = ef.from == f ? ef.to : ef.from;
      if (fseen[g]) continue;
      fseen[g] = 1;
      in_cotree_[e] = 1;
      fparent_[g] = f;
      fparent_edge_[g] = e;
      face_order_.push_back(g);
    }
  }
  if (face_order_.size() != n) throw Error("cycle basis: dual graph is disconnected");

  leftover_index_.assign(m, -1);
  for (std::size_t e = 0; e < m; ++e) {
    if (!in_tree_[e] && !in_cotree_[e]) {
      leftover_index_[e] = static_cast<long>(leftover_.size());
      leftover_.push_back(e);
    }
  }
  if (leftover_.size() != n + 2 - nv) throw Error("cycle basis: Euler characteristic mismatch");

  // Dual cycles: dual edge from -> to, then back along the dual tree.
  for (std::size_t e : leftover_) {
    auto ef = edge_faces(cx_, e);
    std::vector<std::pair<std::size_t, int>> path{{e, +1}};
    // Walk from `to` and from `from` up to their common ancestor.
    auto ancestors = [&](std::size_t f) {
      std::vector<std::size_t> chain{f};
      while (fparent_[chain.back()] != kNone) chain.push_back(fparent_[chain.back()]);
      return chain;
    };
    auto at = ancestors(ef.to);
    auto af = ancestors(ef.from);
    // Strip the common suffix.
    while (at.size() > 1 && af.size() > 1 && at[at.size() - 2] == af[af.size() - 2]) {
      at.pop_back();
      af.pop_back();
    }
    // Dual edge crossing sign when stepping from face x to its parent.
    auto step_sign = [&](std::size_t child) {
      auto pe = fparent_edge_[child];
      auto pf = edge_faces(cx_, pe);
      return pf.from == child ? +1 : -1;
    };
    // to -> ... -> ancestor
    for (std::size_t i = 0; i + 1 < at.size(); ++i) {
      path.emplace_back(fparent_edge_[at[i]], step_sign(at[i]));
    }
    // ancestor -> ... -> from (reverse of from -> ancestor)
    for (std::size_t i = af.size() - 1; i-- > 0;) {
      path.emplace_back(fparent_edge_[af[i]], -step_sign(af[i]));
    }
    dual_cycles_.push_back(std::move(path));
  }
}

void CycleBasis::add_tree_path(Chain& c, std::size_t x, std::size_t y, std::int64_t k) const {
  // Path x -> y: climb from both ends to the common ancestor.
  while (x != y) {
    if (vdepth_[x] >= vdepth_[y]) {
      // Step x -> parent(x): traverse the tree edge against its child
      // orientation when it points parent -> child.
      bump(c, vparent_edge_[x], mul(k, -vparent_sign_[x]));
      x = vparent_[x];
    } else {
      // Step parent(y) -> y, recorded as part of x -> y.
      bump(c, vparent_edge_[y], mul(k, vparent_sign_[y]));
      y = vparent_[y];
    }
  }
}

Chain CycleBasis::cycle(std::size_t i) const {
  Chain c(cx_.edges(), 0);
  std::size_t e = leftover_[i];
  c[e] = 1;
  add_tree_path(c, cx_.head(e), cx_.tail(e), 1);
  return c;
}

Chain CycleBasis::chain(std::vector<std::int64_t> const& coords) const {
  if (coords.size() != rank()) throw DegreeMismatch("cycle basis: wrong coordinate count");
  Chain c(cx_.edges(), 0);
  for (std::size_t i = 0; i < rank(); ++i) {
    if (coords[i] == 0) continue;
    std::size_t e = leftover_[i];
    bump(c, e, coords[i]);
    add_tree_path(c, cx_.head(e), cx_.tail(e), coords[i]);
  }
  return c;
}

std::vector<std::int64_t> CycleBasis::coordinates(Chain const& z) const {
  if (!cx_.is_cycle(z)) throw Error("cycle basis: chain is not a cycle");
  std::size_t n = cx_.squares;
  // Face coefficients c_f with z - d2(sum c_f f) vanishing on the dual tree.
  std::vector<std::int64_t> cf(n, 0);
  for (std::size_t i = 1; i < face_order_.size(); ++i) {
    std::size_t f = face_order_[i];
    std::size_t e = fparent_edge_[f];
    auto ef = edge_faces(cx_, e);
    std::size_t p = fparent_[f];
    int cp = ef.from == p ? ef.coeff_from : ef.coeff_to;
    int cself = ef.from == f ? ef.coeff_from : ef.coeff_to;
    std::int64_t rest = add(z[e], -mul(cf[p], cp));
    cf[f] = cself > 0 ? rest : -rest;
  }
  std::vector<std::int64_t> out(rank());
  for (std::size_t i = 0; i < rank(); ++i) {
    std::size_t e = leftover_[i];
    auto ef = edge_faces(cx_, e);
    std::int64_t v = z[e];
    v = add(v, -mul(cf[ef.from], ef.coeff_from));
    v = add(v, -mul(cf[ef.to], ef.coeff_to));
    out[i] = v;
  }
  return out;
}

IntMatrix intersection_form(CycleBasis const& basis) {
  auto const& cx = basis.complex();
  std::size_t n = cx.squares;
  std::size_t r = basis.rank();
  std::vector<Chain> gammas;
  for (std::size_t i = 0; i < r; ++i) gammas.push_back(basis.cycle(i));

  IntMatrix k(r, r), d(r, r);
  for (std::size_t j = 0; j < r; ++j) {
    Chain pushed(cx.edges(), 0);
    for (auto [e, sign] : basis.dual_cycle(j)) {
      // A primal h edge crossed northward counts +1, a v edge crossed
      // eastward counts -1.
      int eps = e < n ? +1 : -1;
      for (std::size_t i = 0; i < r; ++i) k(i, j) = add(k(i, j), mul(gammas[i][e], sign * eps));
      // Slide the dual edge to the lower-left corners of its faces.
      auto s = static_cast<Point>(e < n ? e : e - n);
      if (e < n) {
        bump(pushed, n + cx.sigma_b_inv(s), sign);
      } else {
        bump(pushed, cx.sigma_a_inv(s), sign);
      }
    }
    auto coords = basis.coordinates(pushed);
    for (std::size_t i = 0; i < r; ++i) d(i, j) = coords[i];
  }
  return k * unimodular_inverse(d);
}

HomologyData homology_basis(Origami const& o) {
  CycleBasis b(o);
  auto form = intersection_form(b);
  return HomologyData{o, std::move(b), std::move(form)};
}

IntMatrix pushforward(CoveringMap const& c, CycleBasis const& source, CycleBasis const& target) {
  std::size_t n = source.complex().squares;
  std::size_t nt = target.complex().squares;
  if (n != c.source.size() || nt != c.target.size()) {
    throw DegreeMismatch("pushforward: bases do not match the cover");
  }
  IntMatrix m(target.rank(), source.rank());
  for (std::size_t j = 0; j < source.rank(); ++j) {
    auto z = source.cycle(j);
    Chain w(2 * nt, 0);
    for (std::size_t e = 0; e < 2 * n; ++e) {
      if (z[e] == 0) continue;
      std::size_t s = e < n ? e : e - n;
      std::size_t img = c.square_map[s] + (e < n ? 0 : nt);
      bump(w, img, z[e]);
    }
    auto coords = target.coordinates(w);
    for (std::size_t i = 0; i < target.rank(); ++i) m(i, j) = coords[i];
  }
  return m;
}

std::optional<IntMatrix> restrict_to(IntMatrix const& m, IntMatrix const& k) {
  return solve_integral(k, m * k);
}

namespace {

// Omega-orthogonal complement of the span of the columns of k.
IntMatrix orthogonal(IntMatrix const& omega, IntMatrix const& k) {
  return integer_kernel(k.transpose() * omega);
}

bool nondegenerate_on(IntMatrix const& omega, IntMatrix const& k) {
  if (k.cols() == 0) return true;
  return determinant(k.transpose() * omega * k) != 0;
}

}  // namespace

SplitSubspaces split_subspaces(HomologyData const& hd, CoveringMap const& to_torus,
                               CoveringMap const* second) {
  if (!(to_torus.source == hd.origami)) throw Error("split_subspaces: cover starts elsewhere");
  CycleBasis tb(to_torus.target);
  auto p = pushforward(to_torus, hd.basis, tb);
  SplitSubspaces out;
  out.h0 = integer_kernel(p);
  out.hst = orthogonal(hd.form, out.h0);
  if (out.hst.cols() != 2 || out.h0.cols() + 2 != hd.rank()) {
    throw RankUnexpected("split_subspaces: Hst has rank " + std::to_string(out.hst.cols()));
  }
  if (!nondegenerate_on(hd.form, out.h0) || !nondegenerate_on(hd.form, out.hst)) {
    throw RankUnexpected("split_subspaces: intersection form degenerates on a piece");
  }
  if (second) {
    if (!(second->source == hd.origami)) throw Error("split_subspaces: cover starts elsewhere");
    CycleBasis sb(second->target);
    auto k = integer_kernel(pushforward(*second, hd.basis, sb));
    auto constraints = p.stack(k.transpose() * hd.form);
    out.lifted = integer_kernel(constraints);
  }
  return out;
}

Chain letter_chain_map(Origami const& o, SL2Letter l, Chain const& c) {
  std::size_t n = o.size();
  if (c.size() != 2 * n) throw DegreeMismatch("chain map: chain of wrong length");
  auto const& a = o.sigma_a();
  auto const ainv = a.inverse();
  auto const binv = o.sigma_b().inverse();
  Chain out(2 * n, 0);
  for (Point s = 0; s < n; ++s) {
    std::int64_t kh = c[s];
    std::int64_t kv = c[n + s];
    if (l.gen == SL2Gen::T && l.exp > 0) {
      // h_s -> h_s, v_s -> h_s + v_{a(s)}
      bump(out, s, kh);
      bump(out, s, kv);
      bump(out, n + a(s), kv);
    } else if (l.gen == SL2Gen::T) {
      // h_s -> h_s, v_s -> v_{a^-1(s)} - h_{a^-1(s)}
      Point t = ainv(s);
      bump(out, s, kh);
      bump(out, n + t, kv);
      bump(out, t, -kv);
    } else if (l.exp > 0) {
      // h_s -> v_{b^-1(s)}, v_s -> -h_s
      bump(out, n + binv(s), kh);
      bump(out, s, -kv);
    } else {
      // h_s -> -v_s, v_s -> h_{a^-1(s)}
      bump(out, n + s, -kh);
      bump(out, ainv(s), kv);
    }
  }
  return out;
}

std::vector<Point> letter_corner_map(Origami const& o, SL2Letter l) {
  std::size_t n = o.size();
  std::vector<Point> out(n);
  Permutation inv = l.gen == SL2Gen::T ? Permutation::identity(n)
                    : l.exp > 0        ? o.sigma_b().inverse()
                                       : o.sigma_a().inverse();
  for (Point s = 0; s < n; ++s) out[s] = inv(s);
  return out;
}

Chain relabel_chain(Permutation const& r, Chain const& c) {
  std::size_t n = r.degree();
  if (c.size() != 2 * n) throw DegreeMismatch("relabel: chain of wrong length");
  Chain out(2 * n, 0);
  for (Point s = 0; s < n; ++s) {
    out[r(s)] = c[s];
    out[n + r(s)] = c[n + s];
  }
  return out;
}

namespace {

bool intertwines(Permutation const& r, Origami const& x, Origami const& y) {
  for (Point s = 0; s < x.size(); ++s) {
    if (r(x.sigma_a()(s)) != y.sigma_a()(r(s))) return false;
    if (r(x.sigma_b()(s)) != y.sigma_b()(r(s))) return false;
  }
  return true;
}

IntMatrix coordinates_matrix(CycleBasis const& basis, std::vector<Chain> const& chains) {
  IntMatrix m(basis.rank(), chains.size());
  for (std::size_t j = 0; j < chains.size(); ++j) {
    auto c = basis.coordinates(chains[j]);
    for (std::size_t i = 0; i < c.size(); ++i) m(i, j) = c[i];
  }
  return m;
}

}  // namespace

AffineAction affine_action(HomologyData const& hd, SL2Word const& word,
                           std::optional<Permutation> witness) {
  std::size_t n = hd.origami.size();
  std::vector<Chain> chains;
  for (std::size_t i = 0; i < hd.rank(); ++i) chains.push_back(hd.basis.cycle(i));
  std::vector<Point> corner(n);
  for (Point s = 0; s < n; ++s) corner[s] = s;

  Origami cur = hd.origami;
  auto const& ls = word.letters();
  for (auto it = ls.rbegin(); it != ls.rend(); ++it) {
    for (auto& c : chains) c = letter_chain_map(cur, *it, c);
    auto cm = letter_corner_map(cur, *it);
    for (auto& s : corner) s = cm[s];
    cur = apply_generator(cur, *it);
  }
  Permutation r;
  if (witness) {
    if (witness->degree() != n || !intertwines(*witness, cur, hd.origami)) {
      throw Error("affine_action: witness does not intertwine the permutations");
    }
    r = *witness;
  } else {
    auto iso = find_isomorphism(cur, hd.origami);
    if (!iso) throw Error("affine_action: word " + word.str() + " does not stabilise the surface");
    r = *iso;
  }
  for (auto& c : chains) c = relabel_chain(r, c);

  AffineAction act;
  act.word = word;
  act.relabel = r;
  act.derivative = word_to_matrix(word);
  act.matrix = coordinates_matrix(hd.basis, chains);
  auto const& vof = hd.basis.complex().vertex_of;
  act.vertex_map.assign(hd.basis.complex().vertices, 0);
  for (Point s = 0; s < n; ++s) act.vertex_map[vof[s]] = vof[r(corner[s])];
  act.label = word.str();
  return act;
}

AffineAction translation_action(HomologyData const& hd, Permutation const& t) {
  if (!intertwines(t, hd.origami, hd.origami)) {
    throw Error("translation_action: permutation is not an automorphism");
  }
  std::vector<Chain> chains;
  for (std::size_t i = 0; i < hd.rank(); ++i) chains.push_back(relabel_chain(t, hd.basis.cycle(i)));
  AffineAction act;
  act.translation = true;
  act.relabel = t;
  act.matrix = coordinates_matrix(hd.basis, chains);
  auto const& vof = hd.basis.complex().vertex_of;
  act.vertex_map.assign(hd.basis.complex().vertices, 0);
  for (Point s = 0; s < hd.origami.size(); ++s) act.vertex_map[vof[s]] = vof[t(s)];
  act.label = "t" + std::to_string(t(0) + 1);
  return act;
}

std::vector<Permutation> translation_group(Origami const& o) {
  std::size_t n = o.size();
  auto const& a = o.sigma_a();
  auto const& b = o.sigma_b();
  auto const ainv = a.inverse();
  auto const binv = b.inverse();
  std::vector<Permutation> out;
  constexpr Point kUnset = ~Point{0};
  for (Point target = 0; target < n; ++target) {
    // A translation is determined by the image of square 0; extend along
    // a and b and check consistency.
    std::vector<Point> img(n, kUnset);
    img[0] = target;
    std::vector<Point> stack{0};
    bool ok = true;
    while (!stack.empty() && ok) {
      Point s = stack.back();
      stack.pop_back();
      std::pair<Point, Point> steps[] = {{a(s), a(img[s])},
                                         {b(s), b(img[s])},
                                         {ainv(s), ainv(img[s])},
                                         {binv(s), binv(img[s])}};
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
    if (!ok) continue;
    std::vector<char> hit(n, 0);
    for (Point s = 0; s < n && ok; ++s) {
      if (img[s] == kUnset || hit[img[s]]) ok = false;
      else hit[img[s]] = 1;
    }
    if (ok) out.push_back(Permutation::from_images(std::move(img)));
  }
  return out;
}

std::vector<AffineAction> translation_automorphisms(HomologyData const& hd) {
  std::vector<AffineAction> out;
  for (auto const& t : translation_group(hd.origami)) out.push_back(translation_action(hd, t));
  return out;
}

bool is_symplectic(IntMatrix const& m, IntMatrix const& omega) {
  return m.transpose() * omega * m == omega;
}

bool letter_commutes_with_boundary(Origami const& o, SL2Letter l) {
  auto src = chain_complex(o);
  auto img = apply_generator(o, l);
  auto dst = chain_complex(img);
  auto corner = letter_corner_map(o, l);
  // Vertex map induced by the corner map.
  std::vector<std::size_t> vmap(src.vertices, ~std::size_t{0});
  for (Point s = 0; s < o.size(); ++s) {
    std::size_t v = dst.vertex_of[corner[s]];
    if (vmap[src.vertex_of[s]] != ~std::size_t{0} && vmap[src.vertex_of[s]] != v) return false;
    vmap[src.vertex_of[s]] = v;
  }
  for (std::size_t e = 0; e < src.edges(); ++e) {
    Chain c(src.edges(), 0);
    c[e] = 1;
    auto image = letter_chain_map(o, l, c);
    auto lhs = dst.boundary1(image);
    std::vector<std::int64_t> rhs(dst.vertices, 0);
    rhs[vmap[src.head(e)]] += 1;
    rhs[vmap[src.tail(e)]] -= 1;
    if (lhs != rhs) return false;
  }
  return true;
}

bool ClosureState::trivial_marking() const {
  for (std::size_t i = 0; i < marked.size(); ++i) {
    if (marked[i] != i) return false;
  }
  return true;
}

std::string DescentCertificate::to_json() const {
  nlohmann::json j;
  j["degree"] = degree;
  j["max_cone_multiplicity"] = max_cone_multiplicity;
  j["square_coverings"] = square_coverings;
  j["target_translations"] = target_translations;
  j["all_factor"] = all_factor;
  j["holds"] = holds();
  return j.dump();
}

DescentCertificate descent_certificate(CoveringMap const& c) {
  DescentCertificate cert;
  cert.degree = c.degree;
  for (auto const& cyc : vertex_structure(c.source).cycles) {
    cert.max_cone_multiplicity = std::max(cert.max_cone_multiplicity, cyc.size());
  }
  auto covers = square_coverings(c.source, c.target);
  auto translations = translation_group(c.target);
  cert.square_coverings = covers.size();
  cert.target_translations = translations.size();
  std::set<std::vector<Point>> maps;
  for (auto const& k : covers) maps.insert(k.square_map);
  bool all = true;
  std::set<std::vector<Point>> composed;
  for (auto const& t : translations) {
    std::vector<Point> m(c.square_map.size());
    for (std::size_t s = 0; s < m.size(); ++s) m[s] = t(c.square_map[s]);
    if (!maps.count(m)) all = false;
    composed.insert(std::move(m));
  }
  cert.all_factor = all && composed.size() == maps.size();
  return cert;
}

std::string ClosureResult::to_json() const {
  nlohmann::ordered_json j;
  j["level"] = level;
  j["marked"] = marked_names.empty() ? nlohmann::ordered_json(marked_vertices)
                                     : nlohmann::ordered_json(marked_names);
  j["group_size"] = group_size();
  j["predicate"] = predicate == ClosurePredicate::PlusMinusIdentity ? "pm_id" : "iff_trivial";
  j["holds"] = holds;
  if (counterexample) j["counterexample"] = *counterexample;
  return j.dump();
}

namespace {

struct StateKey {
  SL2Matrix derivative;
  std::vector<std::size_t> marked;
  IntMatrix matrix;

  friend auto operator<=>(StateKey const&, StateKey const&) = default;
};

SL2Matrix mod_mul(SL2Matrix const& x, SL2Matrix const& y, std::int64_t n) {
  return reduce_mod(x * y, n);
}

}  // namespace

ClosureResult monodromy_closure(std::vector<AffineAction> const& generators, std::int64_t N,
                                std::vector<std::size_t> const& marked_vertices,
                                IntMatrix const& subspace, ClosurePredicate predicate,
                                std::size_t cap) {
  if (N <= 0) throw Error("monodromy_closure: level must be positive");
  std::map<std::size_t, std::size_t> marked_index;
  for (std::size_t i = 0; i < marked_vertices.size(); ++i) marked_index[marked_vertices[i]] = i;

  struct Gen {
    SL2Matrix d;
    std::vector<std::size_t> perm;
    IntMatrix m;
    std::string label;
  };
  std::vector<Gen> gens;
  for (auto const& g : generators) {
    Gen x;
    x.d = reduce_mod(g.derivative, N);
    for (std::size_t v : marked_vertices) {
      auto it = marked_index.find(g.vertex_map.at(v));
      if (it == marked_index.end()) {
        throw Error("monodromy_closure: generator " + g.label + " moves a marked point off the set");
      }
      x.perm.push_back(it->second);
    }
    auto r = restrict_to(g.matrix, subspace);
    if (!r) throw Error("monodromy_closure: generator " + g.label + " does not preserve the subspace");
    x.m = *r;
    x.label = g.label;
    gens.push_back(std::move(x));
  }

  ClosureResult out;
  out.level = N;
  out.marked_vertices = marked_vertices;
  out.predicate = predicate;
  std::map<StateKey, std::size_t> seen;
  ClosureState id{reduce_mod(SL2Matrix::identity(), N), {}, IntMatrix::identity(subspace.cols()),
                  "I"};
  for (std::size_t i = 0; i < marked_vertices.size(); ++i) id.marked.push_back(i);
  seen.emplace(StateKey{id.derivative, id.marked, id.matrix}, 0);
  out.states.push_back(id);
  for (std::size_t u = 0; u < out.states.size(); ++u) {
    for (auto const& g : gens) {
      // State of g after the element u.
      ClosureState const& s = out.states[u];
      ClosureState next;
      next.derivative = mod_mul(g.d, s.derivative, N);
      next.marked.resize(s.marked.size());
      for (std::size_t i = 0; i < s.marked.size(); ++i) next.marked[i] = g.perm[s.marked[i]];
      next.matrix = g.m * s.matrix;
      StateKey key{next.derivative, next.marked, next.matrix};
      if (seen.count(key)) continue;
      if (out.states.size() >= cap) {
        throw CapExceeded("monodromy closure exceeds cap of " + std::to_string(cap) + " states",
                          cap);
      }
      next.word = s.word == "I" ? g.label : g.label + " " + s.word;
      seen.emplace(std::move(key), out.states.size());
      out.states.push_back(std::move(next));
    }
  }

  auto ident = reduce_mod(SL2Matrix::identity(), N);
  auto eye = IntMatrix::identity(subspace.cols());
  IntMatrix neg_eye = -eye;
  out.holds = true;
  for (auto const& s : out.states) {
    bool congruent = s.derivative == ident && s.trivial_marking();
    bool ok = true;
    if (predicate == ClosurePredicate::PlusMinusIdentity) {
      ok = !congruent || s.matrix == eye || s.matrix == neg_eye;
    } else {
      ok = congruent == (s.matrix == eye);
    }
    if (!ok) {
      out.holds = false;
      out.counterexample = s.word;
      break;
    }
  }
  return out;
}

std::vector<AffineAction> sl2z_generators(HomologyData const& hd) {
  std::vector<AffineAction> out;
  out.push_back(affine_action(hd, SL2Word::letter(SL2Gen::T)));
  out.push_back(affine_action(hd, SL2Word::letter(SL2Gen::S)));
  for (auto& t : translation_automorphisms(hd)) out.push_back(std::move(t));
  return out;
}

bool IsotropicWitness::certified() const {
  return lifted_rank == 4 && nondegenerate && congruence.proves_gamma() && descent.holds() &&
         zeros_distinguished && base_closure;
}

bool IsotropicWitness::holds() const {
  if (!certified() || !loops_congruent || vector.empty() || self_pairing != 0) return false;
  return std::all_of(checks.begin(), checks.end(), [](Check const& c) { return c.sign != 0; });
}

std::string IsotropicWitness::to_json() const {
  nlohmann::ordered_json j;
  j["lifted_rank"] = lifted_rank;
  j["nondegenerate"] = nondegenerate;
  j["congruence"] = nlohmann::ordered_json::parse(congruence.to_json());
  j["descent"] = nlohmann::ordered_json::parse(descent.to_json());
  j["zeros_distinguished"] = zeros_distinguished;
  j["base_closure"] = base_closure;
  j["orbit"] = {{"forms", orbit_forms}, {"complete", orbit_complete}};
  j["loops_found"] = loops_found;
  j["loops_congruent"] = loops_congruent;
  j["minus_identity"] = minus_identity;
  auto cs = nlohmann::ordered_json::array();
  for (auto const& c : checks) cs.push_back({{"label", c.label}, {"sign", c.sign}});
  j["checks"] = std::move(cs);
  j["vector"] = vector;
  j["self_pairing"] = self_pairing;
  j["certified"] = certified();
  j["holds"] = holds();
  if (failure) j["failure"] = *failure;
  return j.dump();
}

IsotropicWitness isotropic_witness_X(IsotropicWitnessOptions const& options) {
  IsotropicWitness w;
  auto x = build_x();
  auto base = build_ew128();
  auto const& p = x.cover("p");
  auto hd = homology_basis(x.origami);
  auto sp = split_subspaces(hd, x.cover("q"), &p);
  if (!sp.lifted) throw RankUnexpected("isotropic_witness_X: no lifted subspace");
  IntMatrix const& lifted = *sp.lifted;
  w.lifted_rank = lifted.cols();
  w.nondegenerate = determinant(lifted.transpose() * hd.form * lifted) != 0;

  w.congruence = period_certificate(x.origami, 4);
  w.descent = descent_certificate(p);
  auto pp = ramification_profile(p);
  std::set<RamificationProfile> at_zeros;
  for (auto const& z : base.marked) at_zeros.insert(pp.at_vertex(z.vertex));
  w.zeros_distinguished = base.marked.size() == 4 && at_zeros.size() == 4;

  auto ew = build_ew();
  auto ehd = homology_basis(ew.origami);
  auto esp = split_subspaces(ehd, ew.cover("pi"));
  std::vector<std::size_t> zeros;
  for (auto const& m : ew.marked) zeros.push_back(m.vertex);
  w.base_closure = monodromy_closure(sl2z_generators(ehd), 4, zeros, esp.h0,
                                     ClosurePredicate::PlusMinusIdentity)
                       .holds;

  // Explicit Veech elements: parabolics at the cusps of Gamma(4), their
  // pairwise products, then the loops of a capped orbit search.
  std::vector<SL2Word> words;
  for (auto c : {"I", "S", "T S", "T^2 S", "T^3 S", "S T^2 S"}) {
    if (auto par = cusp_parabolic(x.origami, parse_sl2_word(c), 1000)) words.push_back(*par);
  }
  std::size_t parabolics = words.size();
  for (std::size_t i = 0; i < parabolics; ++i) {
    for (std::size_t j = 0; j < parabolics; ++j) {
      if (i != j) words.push_back(words[i] * words[j]);
    }
  }
  auto orbit = explore_orbit(x.origami, options.orbit_cap);
  w.orbit_forms = orbit.index();
  w.orbit_complete = orbit.complete;
  words.insert(words.end(), orbit.generators.begin(), orbit.generators.end());
  w.loops_found = words.size();
  w.loops_congruent = contained_in_gamma(words, 4);
  w.minus_identity = contains_minus_identity(x.origami);

  auto eye = IntMatrix::identity(lifted.cols());
  auto record = [&](std::string label, IntMatrix const& m) {
    auto r = restrict_to(m, lifted);
    int sign = !r ? 0 : *r == eye ? 1 : *r == -eye ? -1 : 0;
    if (sign == 0 && !w.failure) w.failure = "not +-I on the lifted subspace: " + label;
    w.checks.push_back({std::move(label), sign});
  };
  for (auto const& t : translation_automorphisms(hd)) record(t.label, t.matrix);
  // Loops with derivative I are translations, already covered.
  std::size_t done = 0;
  for (auto const& word : words) {
    if (done == options.action_checks) break;
    if (word_to_matrix(word) == SL2Matrix::identity()) continue;
    record(word.str(), affine_action(hd, word).matrix);
    ++done;
  }

  w.vector = lifted.column(0);
  auto image = hd.form * w.vector;
  for (std::size_t i = 0; i < image.size(); ++i) w.self_pairing += w.vector[i] * image[i];
  return w;
}

}  // namespace origami
