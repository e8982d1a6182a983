#include "origami/fibre_product.hpp"

#include <numeric>

#include "origami/error.hpp"

namespace origami {

FibreProduct fake_fibre_product(CoveringMap const& c1, CoveringMap const& c2) {
  if (!(c1.target == c2.target)) {
    throw Error("fibre product: covers do not share the same base origami");
  }
  auto v1 = to_voltage(c1);
  auto v2 = to_voltage(c2);
  ProductSheets ps{c1.degree, c2.degree};
  std::size_t d = ps.d1 * ps.d2;
  std::size_t n = c1.target.size();

  auto prod = VoltageData::trivial(c1.target, d);
  for (Point t = 0; t < n; ++t) {
    std::vector<Point> wa(d), wb(d);
    for (std::size_t a = 0; a < ps.d1; ++a) {
      for (std::size_t b = 0; b < ps.d2; ++b) {
        std::size_t x = ps.index(a, b);
        wa[x] = static_cast<Point>(ps.index(v1.data.w_a[t](a), v2.data.w_a[t](b)));
        wb[x] = static_cast<Point>(ps.index(v1.data.w_b[t](a), v2.data.w_b[t](b)));
      }
    }
    prod.w_a[t] = Permutation::from_images(std::move(wa));
    prod.w_b[t] = Permutation::from_images(std::move(wb));
  }

  VoltageCover vc = [&] {
    try {
      return voltage_cover(prod);
    } catch (NotConnected const& e) {
      throw NotTransitive("fibre product: componentwise action has " +
                              std::to_string(e.orbits.size()) + " orbits",
                          e.orbits);
    }
  }();

  std::vector<Point> f1(vc.origami.size()), f2(vc.origami.size());
  for (Point t = 0; t < n; ++t) {
    for (std::size_t x = 0; x < d; ++x) {
      Point z = static_cast<Point>(t * d + x);
      f1[z] = v1.fibers[t][ps.first(x)];
      f2[z] = v2.fibers[t][ps.second(x)];
    }
  }
  auto to_first = cover_from_map(vc.origami, c1.source, std::move(f1));
  auto to_second = cover_from_map(vc.origami, c2.source, std::move(f2));
  return FibreProduct{ps, vc.origami, std::move(to_first), std::move(to_second),
                      std::move(vc.cover)};
}

RamificationProfile predicted_profile(RamificationProfile const& p1,
                                      RamificationProfile const& p2) {
  std::vector<std::size_t> parts;
  for (auto e : p1.parts()) {
    for (auto f : p2.parts()) {
      auto g = std::gcd(e, f);
      auto l = std::lcm(e, f);
      for (std::size_t i = 0; i < g; ++i) parts.push_back(l);
    }
  }
  return RamificationProfile(std::move(parts));
}

}  // namespace origami
