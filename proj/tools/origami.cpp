#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "origami/error.hpp"
#include "origami/fibre_product.hpp"
#include "origami/homology.hpp"
#include "origami/verify.hpp"
#include "origami/veech.hpp"
#include "origami/zoo.hpp"

using namespace origami;
namespace fs = std::filesystem;

namespace {

// Exit status for results: 0 all good, 1 a claim or computation failed.
int status = 0;

struct UsageError : Error {
  using Error::Error;
};

// A file (origami text, or a covers manifest ending in .json) or a zoo name.
NamedSurface load_surface(std::string const& arg) {
  if (fs::is_regular_file(arg)) {
    if (fs::path(arg).extension() == ".json") return read_covers_manifest(arg);
    return NamedSurface{fs::path(arg).stem().string(), read_origami_file(arg), {}, {}};
  }
  return build_named(arg);
}

// <surface>#<cover>[@k]; without '#', the projection to the unit torus. A
// suffix @k refines the cover over the grid by k.
CoveringMap load_cover(std::string spec) {
  std::size_t k = 1;
  auto at = spec.rfind('@');
  if (at != std::string::npos && spec.find('#') != std::string::npos && at > spec.find('#')) {
    try {
      k = std::stoul(spec.substr(at + 1));
    } catch (std::exception const&) {
      throw UsageError("bad grid factor in cover spec " + spec);
    }
    if (k == 0) throw UsageError("bad grid factor in cover spec " + spec);
    spec.resize(at);
  }
  auto hash = spec.rfind('#');
  CoveringMap c = hash == std::string::npos
                      ? projection_to_unit_torus(load_surface(spec).origami)
                      : load_surface(spec.substr(0, hash)).cover(spec.substr(hash + 1));
  return k > 1 ? refine_over_grid(c, k) : c;
}

void write_out(std::string const& path, std::string const& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

std::vector<std::size_t> cone_multiplicities(Origami const& o) {
  std::vector<std::size_t> out;
  for (auto const& c : vertex_structure(o).cycles) out.push_back(c.size());
  return out;
}

void run_inspect(std::string const& arg, bool json) {
  auto s = load_surface(arg);
  auto sg = stratum_genus(s.origami);
  auto cones = cone_multiplicities(s.origami);
  if (json) {
    nlohmann::ordered_json j;
    j["name"] = s.name;
    j["squares"] = s.origami.size();
    j["genus"] = sg.genus;
    j["stratum"] = sg.stratum.str();
    j["zeros"] = sg.stratum.zero_count();
    j["vertices"] = cones.size();
    j["cone_multiplicities"] = cones;
    auto covers = nlohmann::ordered_json::array();
    for (auto const& c : s.covers) covers.push_back({{"name", c.name}, {"degree", c.map.degree}});
    j["covers"] = std::move(covers);
    auto marked = nlohmann::ordered_json::array();
    for (auto const& m : s.marked) marked.push_back({{"name", m.name}, {"vertex", m.vertex}});
    j["marked"] = std::move(marked);
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::cout << "name: " << s.name << "\n"
            << "squares: " << s.origami.size() << "\n"
            << "genus: " << sg.genus << "\n"
            << "stratum: " << sg.stratum.str() << "\n"
            << "vertices: " << cones.size() << " (" << sg.stratum.zero_count() << " zeros)\n";
  for (auto const& c : s.covers) {
    std::cout << "cover: " << c.name << " degree " << c.map.degree << "\n";
  }
  for (auto const& m : s.marked) std::cout << "marked: " << m.name << " vertex " << m.vertex << "\n";
}

void run_cover_ram(std::string const& spec, std::size_t grid) {
  auto c = load_cover(spec);
  if (grid > 1) c = refine_over_grid(c, grid);
  std::cout << ramification_profile(c).to_json() << '\n';
}

void run_fibre(std::string const& a, std::string const& b, std::string const& out) {
  auto fp = fake_fibre_product(load_cover(a), load_cover(b));
  NamedSurface s{"fibre", fp.origami,
                 {{"first", fp.to_first}, {"second", fp.to_second}, {"base", fp.to_base}},
                 {}};
  write_out(out, covers_manifest(s));
}

void run_veech(std::string const& arg, std::optional<std::size_t> cap, std::vector<std::int64_t> levels,
               std::string const& dot, bool explore, std::optional<std::int64_t> certificate) {
  auto s = load_surface(arg);
  std::size_t c = cap.value_or(default_cap());
  auto r = explore ? explore_orbit(s.origami, c) : orbit_stabilizer(s.origami, c);
  auto j = nlohmann::ordered_json::parse(orbit_to_json(r, levels));
  j["minus_identity"] = contains_minus_identity(s.origami);
  if (certificate) j["certificate"] = nlohmann::ordered_json::parse(period_certificate(s.origami, *certificate).to_json());
  std::cout << j.dump(2) << '\n';
  if (!dot.empty()) write_out(dot, orbit_to_dot(r));
}

CoveringMap torus_cover(NamedSurface const& s, std::string const& name) {
  if (!name.empty()) return s.cover(name);
  for (auto const& c : s.covers) {
    if (grid_side(c.map.target)) return c.map;
  }
  return projection_to_unit_torus(s.origami);
}

void run_homology(std::string const& arg, std::optional<std::int64_t> closure,
                  std::vector<std::string> marked, std::string const& cover,
                  std::string const& predicate) {
  auto s = load_surface(arg);
  auto hd = homology_basis(s.origami);
  auto sp = split_subspaces(hd, torus_cover(s, cover));
  if (!closure) {
    nlohmann::ordered_json j;
    j["name"] = s.name;
    j["rank"] = hd.rank();
    j["form_determinant"] = determinant(hd.form);
    j["h0_rank"] = sp.h0.cols();
    j["hst_rank"] = sp.hst.cols();
    j["translations"] = translation_group(s.origami).size();
    std::cout << j.dump(2) << '\n';
    return;
  }
  ClosurePredicate pred;
  if (predicate == "pm_id") {
    pred = ClosurePredicate::PlusMinusIdentity;
  } else if (predicate == "iff_trivial") {
    pred = ClosurePredicate::IffTrivial;
  } else {
    throw UsageError("unknown predicate " + predicate);
  }
  if (marked.empty()) {
    for (auto const& m : s.marked) marked.push_back(m.name);
  }
  std::vector<std::size_t> vertices;
  for (auto const& name : marked) vertices.push_back(s.marked_vertex(name));
  auto r = monodromy_closure(sl2z_generators(hd), *closure, vertices, sp.h0, pred);
  r.marked_names = marked;
  std::cout << r.to_json() << '\n';
  if (!r.holds) status = 1;
}

void report(std::string const& suite, std::vector<VerificationReport> const& reports, bool json,
            bool timing) {
  std::cout << (json ? reports_to_json(suite, reports, timing) : reports_to_text(reports, timing));
  if (json) std::cout << '\n';
  if (!all_pass(reports)) status = 1;
}

void run_export(std::string const& name, std::string const& dir) {
  auto s = build_named(name);
  std::string stem = name;
  for (auto& ch : stem) {
    if (ch == ':') ch = '_';
  }
  fs::create_directories(dir);
  write_out((fs::path(dir) / (stem + ".txt")).string(), to_text(s.origami));
  write_out((fs::path(dir) / (stem + ".json")).string(), covers_manifest(s));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"origami: square-tiled surfaces, covers, Veech groups and homology"};
  app.require_subcommand(1);

  std::string input, output, dot, cover_name, predicate = "pm_id", dir = ".";
  std::string spec_a, spec_b;
  bool json = false, explore = false, deep = false, no_timing = false;
  std::size_t k = 2, grid = 1, n = 5;
  std::optional<std::size_t> cap;
  std::optional<std::int64_t> closure, certificate;
  std::vector<std::int64_t> levels;
  std::vector<std::string> marked;

  auto* inspect = app.add_subcommand("inspect", "stratum, genus and vertices");
  inspect->add_option("surface", input, "origami file, covers manifest or zoo name")->required();
  inspect->add_flag("--json", json);

  auto* refine_cmd = app.add_subcommand("refine", "k-fold subdivision of every square");
  refine_cmd->add_option("surface", input)->required();
  refine_cmd->add_option("--k", k)->required()->check(CLI::PositiveNumber);
  refine_cmd->add_option("-o,--output", output);

  auto* cover = app.add_subcommand("cover", "covering maps");
  cover->require_subcommand(1);
  auto* ram = cover->add_subcommand("ram", "ramification profile as JSON");
  ram->add_option("cover", spec_a, "<surface>#<cover>[@k]")->required();
  ram->add_option("--grid", grid, "refine over the grid so k-division points are vertices")
      ->check(CLI::PositiveNumber);

  auto* fibre = app.add_subcommand("fibre", "fake fibre product of two covers of one torus");
  fibre->add_option("first", spec_a)->required();
  fibre->add_option("second", spec_b)->required();
  fibre->add_option("-o,--output", output);

  auto* veech = app.add_subcommand("veech", "SL(2,Z) orbit and Veech group generators");
  veech->add_option("surface", input)->required();
  veech->add_option("--cap", cap, "orbit size cap");
  veech->add_option("--gamma", levels, "report containment in Gamma(N)");
  veech->add_option("--dot", dot, "write the coset graph");
  veech->add_flag("--explore", explore, "stop at the cap instead of failing");
  veech->add_option("--certificate", certificate, "period certificate at level N");

  auto* homology = app.add_subcommand("homology", "H_1 basis, splitting and closures");
  homology->add_option("surface", input)->required();
  homology->add_option("--closure", closure, "closure at level N");
  homology->add_option("--marked", marked, "marked point names (default: all)");
  homology->add_option("--cover", cover_name, "cover to a torus defining H0");
  homology->add_option("--predicate", predicate, "pm_id or iff_trivial");

  auto* verify = app.add_subcommand("verify", "verification suites");
  verify->require_subcommand(1);
  verify->add_flag("--json", json);
  verify->add_flag("--no-timing", no_timing, "omit timing for reproducible output");
  verify->add_option("--cap", cap, "orbit cap for sampled Veech elements");
  auto* vx = verify->add_subcommand("x512", "the 512-square origami X");
  auto* vo = verify->add_subcommand("orni", "CovM4(n)");
  vo->add_option("--n", n)->required();
  vo->add_flag("--deep", deep);
  auto* vh = verify->add_subcommand("homology", "closures, symplecticity and the witness");
  vh->add_flag("--deep", deep);
  for (auto* sub : {vx, vo, vh}) {
    sub->add_flag("--json", json);
    sub->add_flag("--no-timing", no_timing);
  }

  auto* exp = app.add_subcommand("export", "write a zoo surface and its covers manifest");
  exp->add_option("name", input)->required();
  exp->add_option("--dir", dir);

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*inspect) {
      run_inspect(input, json);
    } else if (*refine_cmd) {
      write_out(output, to_text(refine(load_surface(input).origami, k).origami));
    } else if (*ram) {
      run_cover_ram(spec_a, grid);
    } else if (*fibre) {
      run_fibre(spec_a, spec_b, output);
    } else if (*veech) {
      run_veech(input, cap, levels, dot, explore, certificate);
    } else if (*homology) {
      run_homology(input, closure, marked, cover_name, predicate);
    } else if (*verify) {
      SuiteOptions opts;
      opts.deep = deep;
      opts.orbit_cap = cap.value_or(deep ? default_cap() : opts.orbit_cap);
      if (*vx) report("x512", verify_X_suite(), json, !no_timing);
      if (*vo) report("orni", verify_orni_suite(n, opts), json, !no_timing);
      if (*vh) report("homology", verify_homology_suite(opts), json, !no_timing);
    } else if (*exp) {
      run_export(input, dir);
    }
  } catch (CapExceeded const& e) {
    std::cerr << "origami: " << e.what() << "\n";
    return 1;
  } catch (NotTransitive const& e) {
    std::cerr << "origami: " << e.what() << " (" << e.orbits.size() << " orbits)\n";
    return 1;
  } catch (Error const& e) {
    std::cerr << "origami: " << e.what() << "\n";
    return 2;
  } catch (std::exception const& e) {
    std::cerr << "origami: " << e.what() << "\n";
    return 2;
  }
  return status;
}
