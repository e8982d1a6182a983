#include "origami/verify.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "origami/error.hpp"
#include "origami/fibre_product.hpp"
#include "origami/homology.hpp"
#include "origami/veech.hpp"
#include "origami/zoo.hpp"

namespace origami {

namespace {

struct Outcome {
  bool pass = false;
  std::string expected;
  std::string computed;
};

class Suite {
 public:
  void run(std::string claim, std::string description, std::string oracle,
           std::function<Outcome()> const& f) {
    VerificationReport r;
    r.claim = std::move(claim);
    r.description = std::move(description);
    r.oracle = std::move(oracle);
    auto t0 = std::chrono::steady_clock::now();
    try {
      auto o = f();
      r.pass = o.pass;
      r.expected = std::move(o.expected);
      r.computed = std::move(o.computed);
    } catch (std::exception const& e) {
      r.pass = false;
      r.computed = std::string("error: ") + e.what();
    }
    r.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    reports_.push_back(std::move(r));
  }

  std::vector<VerificationReport> finish() {
    std::stable_sort(reports_.begin(), reports_.end(),
                     [](auto const& x, auto const& y) { return x.claim < y.claim; });
    return std::move(reports_);
  }

 private:
  std::vector<VerificationReport> reports_;
};

RamificationProfile prof(std::vector<std::size_t> p) { return RamificationProfile(std::move(p)); }

RamificationProfile with_ones(std::vector<std::size_t> p, std::size_t k) {
  p.insert(p.end(), k, 1);
  return prof(std::move(p));
}

RamificationProfile repeated(std::size_t part, std::size_t k) {
  return prof(std::vector<std::size_t>(k, part));
}

// "(2^5,1^22)"
std::string fmt(RamificationProfile const& p) {
  auto parts = p.parts();
  std::sort(parts.rbegin(), parts.rend());
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < parts.size();) {
    std::size_t j = i;
    while (j < parts.size() && parts[j] == parts[i]) ++j;
    if (i) os << ',';
    os << parts[i];
    if (j - i > 1) os << '^' << (j - i);
    i = j;
  }
  os << ')';
  return os.str();
}

std::string fmt(std::vector<RamificationProfile> v) {
  std::sort(v.rbegin(), v.rend());
  std::map<RamificationProfile, std::size_t, std::greater<>> count;
  for (auto const& p : v) ++count[p];
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (auto const& [p, k] : count) {
    if (!first) os << ", ";
    first = false;
    os << fmt(p);
    if (k > 1) os << " x" << k;
  }
  os << '}';
  return os.str();
}

std::vector<RamificationProfile> sorted(std::vector<RamificationProfile> v) {
  std::sort(v.begin(), v.end());
  return v;
}

Outcome same(RamificationProfile const& want, RamificationProfile const& got) {
  return {want == got, fmt(want), fmt(got)};
}

Outcome same(std::vector<RamificationProfile> want, std::vector<RamificationProfile> got) {
  want = sorted(std::move(want));
  got = sorted(std::move(got));
  return {want == got, fmt(want), fmt(got)};
}

template <class T>
Outcome equal_values(T const& want, T const& got) {
  std::ostringstream e, c;
  e << want;
  c << got;
  return {want == got, e.str(), c.str()};
}

std::string yes(bool b) { return b ? "true" : "false"; }

// Profiles of c at the source vertices over target vertex v of `base`.
std::vector<RamificationProfile> over(CoveringMap const& c, CoveringMap const& base,
                                      std::size_t v) {
  auto pm = ramification_profile(c);
  auto bvs = vertex_structure(base.source);
  auto tvs = vertex_structure(base.target);
  std::vector<RamificationProfile> out;
  for (auto w : vertex_fiber(base, bvs, tvs, v)) out.push_back(pm.at_vertex(w));
  return out;
}

std::string grid_name(std::size_t k, std::size_t x, std::size_t y) {
  auto part = [k](std::size_t t) {
    if (t == 0) return std::string("0");
    return std::to_string(t) + "/" + std::to_string(k);
  };
  return "(" + part(x) + "," + part(y) + ")";
}

bool is_pm_identity(IntMatrix const& m) {
  auto id = IntMatrix::identity(m.rows());
  return m == id || m == -id;
}

// Integral 2x2 matrix conjugate in GL(2, Z) to [[1,1],[0,1]]: trace 2, and
// M - I nonzero with coprime entries.
bool conjugate_to_unipotent(IntMatrix const& m) {
  if (m.rows() != 2 || m.cols() != 2) return false;
  if (m(0, 0) + m(1, 1) != 2) return false;
  std::int64_t g = 0;
  for (auto v : {m(0, 0) - 1, m(0, 1), m(1, 0), m(1, 1) - 1}) g = std::gcd(g, v < 0 ? -v : v);
  return g == 1;
}

}  // namespace

std::vector<VerificationReport> verify_X_suite() {
  Suite suite;
  auto x = build_x();
  auto base = build_ew128();
  auto const& p = x.cover("p");
  auto const& q = x.cover("q");
  auto const& pi = base.cover("pi");
  auto const u = with_ones({}, 4);

  suite.run("lemma-X-squares", "X has 512 squares and is connected", "perm-core orbit count", [&] {
    std::vector<Permutation> g{x.origami.sigma_a(), x.origami.sigma_b()};
    bool connected = is_transitive(g, x.origami.size());
    return Outcome{x.origami.size() == 512 && connected, "512 squares, connected",
                   std::to_string(x.origami.size()) + " squares, " +
                       (connected ? "connected" : "disconnected")};
  });
  suite.run("lemma-X-i", "genus of X", "vertex count and Euler characteristic", [&] {
    return equal_values<std::size_t>(15, stratum_genus(x.origami).genus);
  });
  suite.run("lemma-X-stratum", "stratum and number of zeros of X", "cycle type of the commutator",
            [&] {
              auto st = stratum_genus(x.origami).stratum;
              return Outcome{st.str() == "H(5,3,3,3,2,1^12)" && st.zero_count() == 17,
                             "H(5,3,3,3,2,1^12), 17 zeros",
                             st.str() + ", " + std::to_string(st.zero_count()) + " zeros"};
            });
  suite.run("lemma-X-riemann-hurwitz", "p and q satisfy Riemann-Hurwitz", "euler characteristic",
            [&] {
              bool ok = riemann_hurwitz_holds(p, ramification_profile(p)) &&
                        riemann_hurwitz_holds(q, ramification_profile(q));
              return Outcome{ok, "true", yes(ok)};
            });
  suite.run("lemma-X-ii-zeros", "profiles of p over the four zeros of refine(EW,4)",
            "vertex cycle lengths above each zero", [&] {
              auto pm = ramification_profile(p);
              std::vector<RamificationProfile> got;
              for (auto const& z : base.marked) got.push_back(pm.at_vertex(z.vertex));
              return same({prof({2, 2}), prof({2, 1, 1}), u, prof({3, 1})}, got);
            });
  suite.run("lemma-X-ii-Q", "profiles of p over the preimages of (0,1/4)", "vertex fibres of pi",
            [&] {
              return same({prof({2, 2}), prof({2, 1, 1}), prof({2, 2}), u, u, u, u, u},
                          over(p, pi, grid_vertex(4, 0, 1)));
            });
  suite.run("lemma-X-ii-P", "profiles of p over the preimages of (3/4,0)", "vertex fibres of pi",
            [&] {
              return same({prof({3, 1}), u, u, u, u, u, u, u}, over(p, pi, grid_vertex(4, 3, 0)));
            });

  auto pq = ramification_profile(q);
  suite.run("lemma-X-iii-A", "profile of q over (0,0)", "vertex cycle lengths",
            [&] { return same(prof({6, 4, 4, 4, 2, 2, 2, 2, 2, 2, 2}), pq.at(0, 0)); });
  suite.run("lemma-X-iii-Q", "profile of q over (0,1/4)", "vertex cycle lengths",
            [&] { return same(with_ones({2, 2, 2, 2, 2}, 22), pq.at(0, 1)); });
  suite.run("lemma-X-iii-P", "profile of q over (3/4,0)", "vertex cycle lengths",
            [&] { return same(with_ones({3}, 29), pq.at(3, 0)); });
  suite.run("lemma-X-iii-rest", "q is unramified over the other 13 points of the 4-grid",
            "vertex cycle lengths", [&] {
              std::vector<RamificationProfile> got;
              for (std::size_t gy = 0; gy < 4; ++gy) {
                for (std::size_t gx = 0; gx < 4; ++gx) {
                  if ((gx == 0 && gy == 0) || (gx == 0 && gy == 1) || (gx == 3 && gy == 0)) continue;
                  got.push_back(pq.at(gx, gy));
                }
              }
              return same(std::vector<RamificationProfile>(13, with_ones({}, 32)), got);
            });

  suite.run("prop-p2-A", "q is branched only over 4-division points",
            "Riemann-Hurwitz with the ramification at the 16 grid vertices", [&] {
              // q is a local isometry away from the vertices of torus(4), so
              // every branch value is a grid vertex; Riemann-Hurwitz confirms
              // that the grid vertices carry all of the ramification.
              long long defect = 0;
              std::vector<std::string> branch;
              for (std::size_t gy = 0; gy < 4; ++gy) {
                for (std::size_t gx = 0; gx < 4; ++gx) {
                  auto const& e = pq.at(gx, gy);
                  defect += static_cast<long long>(q.degree - e.size());
                  if (e.size() != q.degree) branch.push_back(grid_name(4, gx, gy));
                }
              }
              long long chi = euler_characteristic(x.origami);
              bool ok = chi == -defect && riemann_hurwitz_holds(q, pq);
              std::string b;
              for (auto const& s : branch) b += (b.empty() ? "" : " ") + s;
              return Outcome{ok, "euler characteristic -28 carried by grid vertices",
                             "euler characteristic " + std::to_string(chi) + ", grid defect " +
                                 std::to_string(defect) + ", branch values " + b};
            });
  suite.run("prop-p2-B", "the three ramified q-profiles are distinct from each other and from all others",
            "profile comparison over the 4-grid", [&] {
              std::vector<RamificationProfile> special{pq.at(0, 0), pq.at(3, 0), pq.at(0, 1)};
              std::set<RamificationProfile> distinct(special.begin(), special.end());
              bool ok = distinct.size() == 3;
              for (std::size_t gy = 0; gy < 4; ++gy) {
                for (std::size_t gx = 0; gx < 4; ++gx) {
                  if ((gx == 0 && gy == 0) || (gx == 0 && gy == 1) || (gx == 3 && gy == 0)) continue;
                  ok = ok && !distinct.count(pq.at(gx, gy));
                }
              }
              return Outcome{ok, "3 distinct profiles, none repeated elsewhere",
                             std::to_string(distinct.size()) + " distinct: " + fmt(special) +
                                 (ok ? ", none repeated elsewhere" : ", repeated elsewhere")};
            });
  suite.run("prop-p2-C", "the p-profiles at the four zeros are pairwise distinct",
            "profile comparison", [&] {
              auto pm = ramification_profile(p);
              std::vector<RamificationProfile> got;
              for (auto const& z : base.marked) got.push_back(pm.at_vertex(z.vertex));
              std::set<RamificationProfile> distinct(got.begin(), got.end());
              return Outcome{distinct.size() == 4 && got.size() == 4, "4 pairwise distinct",
                             std::to_string(distinct.size()) + " distinct among " + fmt(got)};
            });
  suite.run("prop-p2-i-division",
            "only the identity of SL(2,Z/4) fixes (0,0), (3/4,0) and (0,1/4)",
            "enumeration of the 48 elements of SL(2,Z/4)", [&] {
              bool ok = division_stabilizer_is_gamma({{0, 0, 1}, {3, 0, 4}, {0, 1, 4}}, 4);
              return Outcome{ok, "true", yes(ok)};
            });
  return suite.finish();
}

std::vector<VerificationReport> verify_orni_suite(std::size_t n, SuiteOptions const& options) {
  if (n < 5 || n % 2 == 0) throw Error("verify_orni_suite: n must be odd and at least 5");
  Suite suite;
  auto m4 = build_m4();
  auto mt = build_m4_tilde();
  auto mt6 = build_m4_tilde_grid6();
  auto m6 = build_m4_grid6();
  auto y = build_y(n);
  auto cov = build_cov_m4(n);
  auto const& pi2t = mt6.cover("pi2tilde");
  auto const& pi2 = m6.cover("pi2");
  auto const g6 = {Grid6Points::X, Grid6Points::Y, Grid6Points::Z};

  suite.run("ramdata-pi2tilde", "profiles of M4~ -> torus(2)", "vertex cycle lengths", [&] {
    auto pm = ramification_profile(mt.cover("pi2tilde"));
    return same({prof({2, 2, 1, 1}), prof({3, 3}), prof({3, 3}), prof({3, 3})},
                {pm.at(0, 0), pm.at(1, 0), pm.at(0, 1), pm.at(1, 1)});
  });
  suite.run("ramdata-h", "M4~ -> M4 is branched exactly over A1 and A2, with index 2",
            "vertex cycle lengths", [&] {
              auto pm = ramification_profile(mt.cover("h"));
              std::vector<std::size_t> ramified;
              bool ok = true;
              for (auto const& e : pm.entries) {
                if (e.profile == prof({1, 1})) continue;
                ramified.push_back(e.vertex);
                ok = ok && e.profile == prof({2});
              }
              std::vector<std::size_t> want{m4.marked_vertex("A1"), m4.marked_vertex("A2")};
              std::sort(want.begin(), want.end());
              ok = ok && ramified == want;
              return Outcome{ok, "(2) over A1 and A2 only",
                             std::to_string(ramified.size()) + " branch points" +
                                 (ok ? " at A1 and A2" : "")};
            });
  suite.run("ramdata-pi1", "profiles of Y_n -> torus(6)", "vertex cycle lengths", [&] {
    auto pm = ramification_profile(y.cover("pi1"));
    std::vector<RamificationProfile> got{pm.at_vertex(Grid6Points::A), pm.at_vertex(Grid6Points::P),
                                         pm.at_vertex(Grid6Points::Q)};
    std::size_t unramified = 0;
    for (auto const& e : pm.entries) {
      if (e.vertex != Grid6Points::A && e.vertex != Grid6Points::P && e.vertex != Grid6Points::Q &&
          e.profile == with_ones({}, n)) {
        ++unramified;
      }
    }
    bool ok = got[0] == prof({n}) && got[1] == prof({n - 1, 1}) && got[2] == with_ones({2}, n - 2) &&
              unramified == 33;
    return Outcome{ok,
                   fmt(prof({n})) + " at A, " + fmt(prof({n - 1, 1})) + " at P, " +
                       fmt(with_ones({2}, n - 2)) + " at Q, 33 unramified",
                   fmt(got[0]) + " at A, " + fmt(got[1]) + " at P, " + fmt(got[2]) + " at Q, " +
                       std::to_string(unramified) + " unramified"};
  });
  suite.run("connectivity-words", "rho2(x^6) and rho2(y^2 x^6 y^-2) on the six sheets",
            "path monodromy from square 6 of torus(6)", [&] {
              auto r1 = path_monodromy(pi2t, 6, "x^6");
              auto r2 = path_monodromy(pi2t, 6, "y^2 x^6 y^-2");
              std::vector<Permutation> g{r1, r2};
              bool transitive = is_transitive(g, 6);
              bool ok = cycle_type(r1) == prof({3, 3}) && cycle_type(r2) == prof({3, 3}) && transitive;
              return Outcome{ok, "(3,3) and (3,3), transitive",
                             cycle_type(r1).str() + " and " + cycle_type(r2).str() +
                                 (transitive ? ", transitive" : ", intransitive")};
            });
  suite.run("thm-orni-connected", "CovM4(n) is a connected origami with 216n squares",
            "orbit count of the componentwise action", [&] {
              std::vector<Permutation> g{cov.origami.sigma_a(), cov.origami.sigma_b()};
              bool connected = is_transitive(g, cov.origami.size());
              return Outcome{connected && cov.origami.size() == 216 * n,
                             std::to_string(216 * n) + " squares, connected",
                             std::to_string(cov.origami.size()) + " squares, " +
                                 (connected ? "connected" : "disconnected")};
            });
  suite.run("thm-orni-n" + std::to_string(n), "stratum and genus 12n-4 of CovM4(n)",
            "cycle type of the commutator", [&] {
              std::vector<std::size_t> orders{2 * n - 1, 2 * n - 1, n - 1, n - 1};
              orders.insert(orders.end(), 6, n - 2);
              orders.insert(orders.end(), 6 * n, 2);
              orders.insert(orders.end(), 6, 1);
              Stratum want(orders);
              auto sg = stratum_genus(cov.origami);
              return Outcome{sg.stratum == want && sg.genus == 12 * n - 4,
                             want.str() + ", genus " + std::to_string(12 * n - 4),
                             sg.stratum.str() + ", genus " + std::to_string(sg.genus)};
            });

  auto pq = ramification_profile(cov.cover("q"));
  suite.run("ramdata-i-A", "profile of q over A", "vertex cycle lengths",
            [&] { return same(prof({2 * n, 2 * n, n, n}), pq.at_vertex(Grid6Points::A)); });
  suite.run("ramdata-i-XYZ", "profiles of q over X, Y, Z", "vertex cycle lengths", [&] {
    std::vector<RamificationProfile> got;
    for (auto v : g6) got.push_back(pq.at_vertex(v));
    return same(std::vector<RamificationProfile>(3, repeated(3, 2 * n)), got);
  });
  suite.run("ramdata-i-P", "profile of q over P", "vertex cycle lengths", [&] {
    std::vector<std::size_t> want(6, 1);
    want.insert(want.end(), 6, n - 1);
    return same(prof(want), pq.at_vertex(Grid6Points::P));
  });
  suite.run("ramdata-i-Q", "profile of q over Q", "vertex cycle lengths",
            [&] { return same(with_ones(std::vector<std::size_t>(6, 2), 6 * n - 12),
                              pq.at_vertex(Grid6Points::Q)); });

  auto pt = ramification_profile(cov.cover("q1tilde"));
  suite.run("ramdata-ii-A", "profiles of q1~ over the four preimages of A", "vertex cycle lengths",
            [&] {
              std::vector<RamificationProfile> got;
              for (auto name : {"A1hat", "A2hat", "A3hat_1", "A3hat_2"}) {
                got.push_back(pt.at_vertex(mt6.marked_vertex(name)));
              }
              return same(std::vector<RamificationProfile>(4, prof({n})), got);
            });
  suite.run("ramdata-ii-XYZ", "q1~ is unramified over the preimages of X, Y, Z",
            "vertex fibres of pi2~", [&] {
              std::vector<RamificationProfile> got;
              for (auto v : g6) {
                auto f = over(cov.cover("q1tilde"), pi2t, v);
                got.insert(got.end(), f.begin(), f.end());
              }
              return same(std::vector<RamificationProfile>(got.size(), with_ones({}, n)), got);
            });
  suite.run("ramdata-ii-P", "profiles of q1~ over the preimages of P", "vertex fibres of pi2~",
            [&] {
              auto got = over(cov.cover("q1tilde"), pi2t, Grid6Points::P);
              return same(std::vector<RamificationProfile>(6, prof({n - 1, 1})), got);
            });
  suite.run("ramdata-ii-Q", "profiles of q1~ over the preimages of Q", "vertex fibres of pi2~",
            [&] {
              auto got = over(cov.cover("q1tilde"), pi2t, Grid6Points::Q);
              return same(std::vector<RamificationProfile>(6, with_ones({2}, n - 2)), got);
            });

  auto p1 = ramification_profile(cov.cover("q1"));
  suite.run("ramdata-iii-A12", "profiles of q1 over A1 and A2", "vertex cycle lengths", [&] {
    return same({prof({2 * n}), prof({2 * n})},
                {p1.at_vertex(m6.marked_vertex("A1")), p1.at_vertex(m6.marked_vertex("A2"))});
  });
  suite.run("ramdata-iii-A3", "profile of q1 over A3", "vertex cycle lengths",
            [&] { return same(prof({n, n}), p1.at_vertex(m6.marked_vertex("A3"))); });
  suite.run("ramdata-iii-XYZ", "q1 is unramified over the preimages of X, Y, Z",
            "vertex fibres of pi2", [&] {
              std::vector<RamificationProfile> got;
              for (auto v : g6) {
                auto f = over(cov.cover("q1"), pi2, v);
                got.insert(got.end(), f.begin(), f.end());
              }
              return same(std::vector<RamificationProfile>(got.size(), with_ones({}, 2 * n)), got);
            });
  suite.run("ramdata-iii-P", "profiles of q1 over the preimages of P", "vertex fibres of pi2",
            [&] {
              auto got = over(cov.cover("q1"), pi2, Grid6Points::P);
              return same(std::vector<RamificationProfile>(3, prof({n - 1, n - 1, 1, 1})), got);
            });
  suite.run("ramdata-iii-Q", "profiles of q1 over the preimages of Q", "vertex fibres of pi2",
            [&] {
              auto got = over(cov.cover("q1"), pi2, Grid6Points::Q);
              return same(std::vector<RamificationProfile>(3, with_ones({2, 2}, 2 * n - 4)), got);
            });

  suite.run("prop-jwe-A", "the q1-profile over A3 differs from those over A1 and A2",
            "profile comparison", [&] {
              auto a1 = p1.at_vertex(m6.marked_vertex("A1"));
              auto a2 = p1.at_vertex(m6.marked_vertex("A2"));
              auto a3 = p1.at_vertex(m6.marked_vertex("A3"));
              bool ok = a3 != a1 && a3 != a2;
              return Outcome{ok, "A3 distinct from A1, A2",
                             fmt(a3) + " vs " + fmt(a1) + ", " + fmt(a2)};
            });
  suite.run("prop-jwe-B", "the q-profile over A differs from the profile over every other point",
            "profile comparison over the 6-grid", [&] {
              auto a = pq.at_vertex(Grid6Points::A);
              std::size_t clashes = 0;
              for (auto const& e : pq.entries) {
                if (e.vertex != Grid6Points::A && e.profile == a) ++clashes;
              }
              return Outcome{clashes == 0, "0 other points with " + fmt(a),
                             std::to_string(clashes) + " other points with " + fmt(a)};
            });
  suite.run("fibre-gcd-lcm", "direct fibre-product profiles equal the gcd/lcm prediction",
            "gcd/lcm rule applied to the profiles of pi1 and pi2~ at all 36 grid points", [&] {
              auto a = ramification_profile(y.cover("pi1"));
              auto b = ramification_profile(pi2t);
              std::size_t agree = 0;
              std::string first_bad;
              for (std::size_t v = 0; v < 36; ++v) {
                auto want = predicted_profile(a.at_vertex(v), b.at_vertex(v));
                if (want == pq.at_vertex(v)) {
                  ++agree;
                } else if (first_bad.empty()) {
                  first_bad = ", first mismatch at vertex " + std::to_string(v);
                }
              }
              return Outcome{agree == 36, "36 of 36 agree",
                             std::to_string(agree) + " of 36 agree" + first_bad};
            });

  if (options.deep) {
    suite.run("prop-jwe-C", "the Veech group of CovM4(n) lies in Gamma(6)",
              "period certificate at level 6, with loops of a capped orbit search reduced mod 6",
              [&] {
                auto cert = period_certificate(cov.origami, 6);
                auto orbit = explore_orbit(cov.origami, options.orbit_cap);
                bool loops = contained_in_gamma(orbit.generators, 6);
                bool ok = cert.proves_gamma() && loops;
                std::ostringstream c;
                c << "periods (" << cert.a << "," << cert.b << ";0," << cert.d << "), "
                  << cert.compatible.size() << " compatible element(s) mod 6; orbit "
                  << (orbit.complete ? "complete at " : "stopped at ") << orbit.index()
                  << " forms, " << orbit.generators.size() << " loops "
                  << (loops ? "all" : "not all") << " I mod 6";
                return Outcome{ok, "periods in 6Z^2, identity the only compatible element",
                               c.str()};
              });
  }
  return suite.finish();
}

std::vector<VerificationReport> verify_homology_suite(SuiteOptions const& options) {
  Suite suite;
  std::vector<std::string> zoo{"torus:1", "torus:3", "ew", "ew128", "m4", "m4tilde",
                               "x512", "y:5", "covm4:5"};

  suite.run("homology-ranks", "rank of H_1 is twice the genus", "tree-cotree basis", [&] {
    std::ostringstream c;
    bool ok = true;
    std::vector<std::pair<std::string, std::size_t>> want{
        {"torus:1", 2}, {"ew", 6}, {"m4", 8}, {"x512", 30}};
    for (auto const& [name, r] : want) {
      auto s = build_named(name);
      auto hd = homology_basis(s.origami);
      ok = ok && hd.rank() == r && hd.rank() == 2 * stratum_genus(s.origami).genus;
      c << (c.tellp() > 0 ? ", " : "") << name << " " << hd.rank();
    }
    return Outcome{ok, "torus:1 2, ew 6, m4 8, x512 30", c.str()};
  });
  suite.run("homology-form", "intersection form is skew and unimodular on every zoo surface",
            "transpose and determinant", [&] {
              std::size_t good = 0;
              std::string bad;
              for (auto const& name : zoo) {
                auto hd = homology_basis(build_named(name).origami);
                if (hd.form.transpose() == -hd.form && determinant(hd.form) == 1) {
                  ++good;
                } else if (bad.empty()) {
                  bad = ", fails on " + name;
                }
              }
              return Outcome{good == zoo.size(), std::to_string(zoo.size()) + " surfaces",
                             std::to_string(good) + " surfaces" + bad};
            });
  suite.run("homology-chain-maps", "T and S lifts commute with the boundary", "edge-by-edge check",
            [&] {
              bool ok = true;
              for (auto const& name : zoo) {
                auto o = build_named(name).origami;
                for (auto g : {SL2Gen::T, SL2Gen::S}) {
                  ok = ok && letter_commutes_with_boundary(o, SL2Letter{g, 1}) &&
                       letter_commutes_with_boundary(o, SL2Letter{g, -1});
                }
              }
              return Outcome{ok, "true", yes(ok)};
            });
  suite.run("homology-symplectic",
            "every affine action and translation automorphism preserves the intersection form",
            "M^T Omega M == Omega", [&] {
              std::size_t checked = 0, bad = 0;
              for (auto const& name : zoo) {
                auto s = build_named(name);
                auto hd = homology_basis(s.origami);
                std::vector<AffineAction> acts = translation_automorphisms(hd);
                if (name == "torus:1" || name == "torus:3" || name == "ew" || name == "m4") {
                  acts = sl2z_generators(hd);
                } else if (name == "ew128" || name == "m4tilde") {
                  auto r = orbit_stabilizer(s.origami);
                  for (std::size_t i = 0; i < r.generators.size() && i < 12; ++i) {
                    acts.push_back(affine_action(hd, r.generators[i]));
                  }
                } else if (name == "x512") {
                  for (auto c : {"I", "S", "T S"}) {
                    if (auto w = cusp_parabolic(s.origami, parse_sl2_word(c), 1000)) {
                      acts.push_back(affine_action(hd, *w));
                    }
                  }
                }
                for (auto const& a : acts) {
                  ++checked;
                  if (!is_symplectic(a.matrix, hd.form)) ++bad;
                }
              }
              return Outcome{bad == 0, "all symplectic",
                             std::to_string(checked - bad) + " of " + std::to_string(checked) +
                                 " symplectic"};
            });
  suite.run("homology-torus-T", "T acts on H_1(torus(k)) by a conjugate of [[1,1],[0,1]]",
            "trace 2 and primitive M - I", [&] {
              bool ok = true;
              for (std::size_t k : {1, 2, 3}) {
                auto hd = homology_basis(torus(k));
                ok = ok && conjugate_to_unipotent(affine_action(hd, SL2Word::letter(SL2Gen::T)).matrix);
              }
              return Outcome{ok, "true for k = 1, 2, 3", yes(ok)};
            });
  suite.run("homology-split-ew", "H_1(EW) = Hst + H0 with ranks 2 and 4", "kernel of pi_*", [&] {
    auto ew = build_ew();
    auto hd = homology_basis(ew.origami);
    auto sp = split_subspaces(hd, ew.cover("pi"));
    auto both = IntMatrix(hd.rank(), sp.h0.cols() + sp.hst.cols());
    for (std::size_t r = 0; r < hd.rank(); ++r) {
      for (std::size_t c = 0; c < sp.h0.cols(); ++c) both(r, c) = sp.h0(r, c);
      for (std::size_t c = 0; c < sp.hst.cols(); ++c) both(r, sp.h0.cols() + c) = sp.hst(r, c);
    }
    bool ok = sp.h0.cols() == 4 && sp.hst.cols() == 2 && rank(both) == 6;
    return Outcome{ok, "H0 4, Hst 2, sum 6",
                   "H0 " + std::to_string(sp.h0.cols()) + ", Hst " + std::to_string(sp.hst.cols()) +
                       ", sum " + std::to_string(rank(both))};
  });

  suite.run("prop-p1",
            "EW at level 4: zero-fixing states with derivative I mod 4 act by +-I on H0",
            "finite closure of T, S and the translations on (D mod 4, zero permutation, H0 matrix)",
            [&] {
              auto ew = build_ew();
              auto hd = homology_basis(ew.origami);
              auto sp = split_subspaces(hd, ew.cover("pi"));
              std::vector<std::size_t> zeros;
              for (auto const& m : ew.marked) zeros.push_back(m.vertex);
              auto r = monodromy_closure(sl2z_generators(hd), 4, zeros, sp.h0,
                                         ClosurePredicate::PlusMinusIdentity);
              // Whether zero fixing is needed: do the level-4 states moving
              // zeros also act by +-I?
              auto id4 = reduce_mod(SL2Matrix::identity(), 4);
              std::size_t moving = 0, moving_pm = 0;
              for (auto const& s : r.states) {
                if (s.derivative == id4 && !s.trivial_marking()) {
                  ++moving;
                  if (is_pm_identity(s.matrix)) ++moving_pm;
                }
              }
              std::ostringstream c;
              c << r.group_size() << " states, holds " << yes(r.holds) << "; " << moving_pm
                << " of " << moving << " level-4 states moving zeros act by +-I";
              return Outcome{r.holds, "holds", c.str()};
            });
  suite.run("orni-iff",
            "M4 at level 3 with A1, A2, A3, X1, Y1, Z1: trivial on H0 iff D = I mod 3 and marking fixed",
            "finite closure of T, S and the translations", [&] {
              auto m4 = build_m4();
              auto hd = homology_basis(m4.origami);
              auto sp = split_subspaces(hd, m4.cover("pi2"));
              std::vector<std::size_t> marked;
              for (auto const& m : m4.marked) marked.push_back(m.vertex);
              auto r = monodromy_closure(sl2z_generators(hd), 3, marked, sp.h0,
                                         ClosurePredicate::IffTrivial);
              auto id3 = reduce_mod(SL2Matrix::identity(), 3);
              auto eye = IntMatrix::identity(sp.h0.cols());
              std::size_t forward_bad = 0, backward_bad = 0;
              for (auto const& s : r.states) {
                bool congruent = s.derivative == id3 && s.trivial_marking();
                bool trivial = s.matrix == eye;
                if (congruent && !trivial) ++forward_bad;
                if (trivial && !congruent) ++backward_bad;
              }
              std::ostringstream c;
              c << r.group_size() << " states; " << forward_bad
                << " congruent fixing states act nontrivially; " << backward_bad
                << " states act trivially without fixing the marking";
              if (r.counterexample) c << "; counterexample " << *r.counterexample;
              return Outcome{r.holds, "both directions over the whole group", c.str()};
            });

  if (options.deep) {
    std::optional<IsotropicWitness> witness;
    auto get = [&]() -> IsotropicWitness const& {
      if (!witness) {
        IsotropicWitnessOptions wo;
        wo.orbit_cap = options.orbit_cap;
        wo.action_checks = options.action_checks;
        witness = isotropic_witness_X(wo);
      }
      return *witness;
    };
    suite.run("t-F-iso-witness", "explicit invariant isotropic line in H_1(X)",
              "lifted subspace, certificates and explicit actions", [&] {
                auto const& w = get();
                std::ostringstream c;
                c << "w = (";
                for (std::size_t i = 0; i < w.vector.size(); ++i) c << (i ? "," : "") << w.vector[i];
                c << "), <w,w> = " << w.self_pairing << ", certified " << yes(w.certified());
                if (w.failure) c << ", " << *w.failure;
                return Outcome{w.holds(), "invariant line with <w,w> = 0", c.str()};
              });
    suite.run("t-F-iso-rank", "lifted subspace of H_1(X)", "ker q_* meets the orthogonal of ker p_*",
              [&] {
                auto const& w = get();
                return Outcome{w.lifted_rank == 4 && w.nondegenerate, "rank 4, nondegenerate",
                               "rank " + std::to_string(w.lifted_rank) +
                                   (w.nondegenerate ? ", nondegenerate" : ", degenerate")};
              });
    suite.run("t-F-iso-descent", "every affine map of X descends along p and fixes the zeros below",
              "descent certificate, p-profiles at the zeros, EW closure", [&] {
                auto const& w = get();
                bool ok = w.descent.holds() && w.zeros_distinguished && w.base_closure;
                return Outcome{ok, "descends, zeros distinguished, closure holds",
                               w.descent.to_json() + ", zeros distinguished " +
                                   yes(w.zeros_distinguished) + ", closure " + yes(w.base_closure)};
              });
    suite.run("t-F-iso-actions",
              "translations and explicit Veech elements act by +-I on the lifted subspace",
              "affine action matrices restricted to the lifted subspace", [&] {
                auto const& w = get();
                std::size_t good = 0, plus = 0;
                for (auto const& ch : w.checks) {
                  if (ch.sign != 0) ++good;
                  if (ch.sign == 1) ++plus;
                }
                std::ostringstream c;
                c << good << " of " << w.checks.size() << " act by +-I (" << plus << " by +I)";
                if (w.failure) c << ", " << *w.failure;
                return Outcome{good == w.checks.size() && !w.checks.empty(), "all +-I", c.str()};
              });
    suite.run("veech-X-gamma4", "the Veech group of X lies in Gamma(4)",
              "period certificate at level 4, with parabolics and capped orbit loops reduced mod 4",
              [&] {
                auto const& w = get();
                auto const& cert = w.congruence;
                std::ostringstream c;
                c << "periods (" << cert.a << "," << cert.b << ";0," << cert.d << "), "
                  << cert.compatible.size() << " compatible element(s) mod 4; orbit "
                  << (w.orbit_complete ? "complete at " : "stopped at ") << w.orbit_forms
                  << " forms; " << w.loops_found << " explicit elements "
                  << (w.loops_congruent ? "all" : "not all") << " I mod 4";
                return Outcome{cert.proves_gamma() && w.loops_congruent,
                               "periods in 4Z^2, identity the only compatible element", c.str()};
              });
    suite.run("veech-X-minus-identity", "-I is not in the Veech group of X",
              "S^2 X compared with X", [&] {
                bool m = get().minus_identity;
                return Outcome{!m, "false", yes(m)};
              });
  }
  return suite.finish();
}

bool all_pass(std::vector<VerificationReport> const& reports) {
  return std::all_of(reports.begin(), reports.end(), [](auto const& r) { return r.pass; });
}

std::string reports_to_json(std::string const& suite, std::vector<VerificationReport> const& reports,
                            bool timing) {
  nlohmann::ordered_json j;
  j["suite"] = suite;
  j["pass"] = all_pass(reports);
  auto arr = nlohmann::ordered_json::array();
  for (auto const& r : reports) {
    nlohmann::ordered_json e;
    e["claim"] = r.claim;
    e["status"] = r.pass ? "pass" : "fail";
    e["description"] = r.description;
    e["expected"] = r.expected;
    e["computed"] = r.computed;
    e["oracle"] = r.oracle;
    if (timing) e["elapsed_ms"] = r.elapsed_ms;
    arr.push_back(std::move(e));
  }
  j["reports"] = std::move(arr);
  return j.dump(2);
}

std::string reports_to_text(std::vector<VerificationReport> const& reports, bool timing) {
  std::ostringstream os;
  for (auto const& r : reports) {
    os << (r.pass ? "PASS " : "FAIL ") << r.claim << ": " << r.description << "\n"
       << "     expected: " << r.expected << "\n"
       << "     computed: " << r.computed << "\n";
    if (timing) os << "     time: " << static_cast<long long>(r.elapsed_ms) << " ms\n";
  }
  std::size_t passed = std::count_if(reports.begin(), reports.end(), [](auto const& r) { return r.pass; });
  os << passed << " of " << reports.size() << " claims pass\n";
  return os.str();
}

}  // namespace origami
