#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "origami/covering.hpp"
#include "origami/linalg.hpp"
#include "origami/origami.hpp"
#include "origami/veech.hpp"

namespace origami {

// Integer 1-chain on the square complex: entry s is the bottom edge h_s of
// square s (oriented east), entry n + s its left edge v_s (oriented north).
using Chain = std::vector<std::int64_t>;

// Cellular chain complex: faces are squares, edges h_s and v_s, vertices the
// lower-left corners.
struct ChainComplex {
  std::size_t squares = 0;
  std::size_t vertices = 0;
  std::vector<std::size_t> vertex_of;  // lower-left corner of each square
  Permutation sigma_a;
  Permutation sigma_b;
  Permutation sigma_a_inv;
  Permutation sigma_b_inv;

  std::size_t edges() const { return 2 * squares; }
  std::size_t tail(std::size_t e) const;
  std::size_t head(std::size_t e) const;
  // d2(s) = h_s + v_{a(s)} - h_{b(s)} - v_s.
  Chain boundary2(std::vector<std::int64_t> const& faces) const;
  std::vector<std::int64_t> boundary1(Chain const& c) const;
  bool is_cycle(Chain const& c) const;
};

ChainComplex chain_complex(Origami const& o);

// Z-basis of H_1 from a tree-cotree decomposition: a spanning tree of the
// 1-skeleton, a spanning tree of the dual graph on the remaining edges, and
// the 2g leftover edges, each closed up through the tree.
class CycleBasis {
 public:
  explicit CycleBasis(Origami const& o);

  std::size_t rank() const { return leftover_.size(); }
  ChainComplex const& complex() const { return cx_; }
  std::vector<std::size_t> const& leftover_edges() const { return leftover_; }
  // Basis cycle i as an explicit chain.
  Chain cycle(std::size_t i) const;
  // Coordinates of the homology class of a cycle. Throws Error when `z` is
  // not a cycle.
  std::vector<std::int64_t> coordinates(Chain const& z) const;
  // Sum of coords[i] * cycle(i).
  Chain chain(std::vector<std::int64_t> const& coords) const;

  // Dual cycle i: the dual edge of leftover edge i closed through the dual
  // tree, as (edge, sign of crossing) pairs along the dual path.
  std::vector<std::pair<std::size_t, int>> const& dual_cycle(std::size_t i) const {
    return dual_cycles_[i];
  }

 private:
  ChainComplex cx_;
  std::vector<char> in_tree_;       // primal spanning tree edges
  std::vector<char> in_cotree_;     // dual spanning tree edges
  std::vector<std::size_t> leftover_;
  std::vector<long> leftover_index_;  // edge -> index into leftover_, or -1
  // Primal tree rooted at vertex 0.
  std::vector<std::size_t> vparent_edge_;
  std::vector<int> vparent_sign_;  // +1 if the edge points from parent to child
  std::vector<std::size_t> vdepth_;
  std::vector<std::size_t> vparent_;
  // Dual tree rooted at square 0; faces in breadth-first order.
  std::vector<std::size_t> face_order_;
  std::vector<std::size_t> fparent_edge_;
  std::vector<std::size_t> fparent_;
  std::vector<std::vector<std::pair<std::size_t, int>>> dual_cycles_;

  // Path in the primal tree from vertex x to vertex y as a chain update.
  void add_tree_path(Chain& c, std::size_t x, std::size_t y, std::int64_t k) const;
};

struct HomologyData {
  Origami origami;
  CycleBasis basis;
  IntMatrix form;  // Omega(i, j) = algebraic intersection of cycle i with cycle j

  std::size_t rank() const { return basis.rank(); }
};

HomologyData homology_basis(Origami const& o);
// Omega on the cycle basis, computed by pairing primal cycles against dual
// cycles and converting the dual cycles back into the primal basis.
IntMatrix intersection_form(CycleBasis const& basis);

// Chain-level map h_s -> h_{f(s)}, v_s -> v_{f(s)} on homology coordinates.
IntMatrix pushforward(CoveringMap const& c, CycleBasis const& source, CycleBasis const& target);

struct SplitSubspaces {
  IntMatrix h0;   // columns: basis of ker p_*
  IntMatrix hst;  // columns: basis of the Omega-orthogonal complement of h0
  std::optional<IntMatrix> lifted;  // ker q_* meets the orthogonal of ker p'_*
};

// `to_torus` must start at hd's origami. With `second`, the lifted subspace
// is ker(to_torus_*) intersected with the Omega-orthogonal complement of
// ker(second_*). Throws RankUnexpected if the ranks are not 2 for Hst or if
// Omega degenerates on a piece.
SplitSubspaces split_subspaces(HomologyData const& hd, CoveringMap const& to_torus,
                               CoveringMap const* second = nullptr);

// Restriction of m to the invariant subspace spanned by the columns of k:
// the matrix r with m k = k r. Empty if k is not invariant.
std::optional<IntMatrix> restrict_to(IntMatrix const& m, IntMatrix const& k);

// Transport of chains and lower-left corners along one generator, from o to
// apply_generator(o, l). Square labels are kept, so the image edges live on
// the image origami.
Chain letter_chain_map(Origami const& o, SL2Letter l, Chain const& c);
// corner[s] = square of the image whose lower-left corner is the image of the
// lower-left corner of square s.
std::vector<Point> letter_corner_map(Origami const& o, SL2Letter l);
// Relabelling s -> r(s) of edges.
Chain relabel_chain(Permutation const& r, Chain const& c);

struct AffineAction {
  SL2Word word;              // empty for translations
  bool translation = false;
  Permutation relabel;       // identification of the final image with the surface
  SL2Matrix derivative;
  IntMatrix matrix;          // column j: image of basis cycle j
  std::vector<std::size_t> vertex_map;  // vertex id -> image vertex id
  std::string label;         // "T", "S", "t3", ...
};

// Affine map with derivative word_to_matrix(word). The word must stabilise
// the class of the surface. The identification of the image with the surface
// is `witness` when given (checked to intertwine), else find_isomorphism.
// Throws Error when the witness fails or the word does not stabilise.
AffineAction affine_action(HomologyData const& hd, SL2Word const& word,
                           std::optional<Permutation> witness = std::nullopt);
AffineAction translation_action(HomologyData const& hd, Permutation const& t);

// All permutations commuting with sigma_a and sigma_b, in ascending order of
// the image of square 0.
std::vector<Permutation> translation_group(Origami const& o);
std::vector<AffineAction> translation_automorphisms(HomologyData const& hd);

// Evidence that affine self-maps of c.source descend along c. A translation
// covering of degree d sends a cone point of angle 2 pi L > 2 pi d to a cone
// point, hence to a grid vertex, so it maps squares to squares. If every
// square covering is t o c for a translation t of the target, then for an
// affine f of the source and an affine g0 of the target with the same
// derivative, g0^-1 o c o f is such a covering, and c o f = g o c.
struct DescentCertificate {
  std::size_t degree = 0;
  std::size_t max_cone_multiplicity = 0;  // largest vertex cycle of the source
  std::size_t square_coverings = 0;
  std::size_t target_translations = 0;
  bool all_factor = false;                // every square covering is t o c

  bool grid_forced() const { return max_cone_multiplicity > degree; }
  bool holds() const { return grid_forced() && all_factor; }
  std::string to_json() const;
};
DescentCertificate descent_certificate(CoveringMap const& c);

// M^T Omega M == Omega.
bool is_symplectic(IntMatrix const& m, IntMatrix const& omega);
// Chain-map law on every edge generator of o for the letter: the boundary of
// the image of e equals the image of the boundary of e.
bool letter_commutes_with_boundary(Origami const& o, SL2Letter l);

enum class ClosurePredicate { PlusMinusIdentity, IffTrivial };

struct ClosureState {
  SL2Matrix derivative;               // reduced mod N
  std::vector<std::size_t> marked;    // permutation of marked-point indices
  IntMatrix matrix;                   // restricted action
  std::string word;                   // product of generator labels

  bool trivial_marking() const;
};

struct ClosureResult {
  std::int64_t level = 1;
  std::vector<std::size_t> marked_vertices;
  std::vector<std::string> marked_names;
  std::vector<ClosureState> states;
  ClosurePredicate predicate = ClosurePredicate::PlusMinusIdentity;
  bool holds = false;
  std::optional<std::string> counterexample;

  std::size_t group_size() const { return states.size(); }
  std::string to_json() const;
};

// Breadth-first closure of (derivative mod N, marked permutation, matrix
// restricted to the columns of `subspace`) under the generators. The
// marked set must be preserved by every generator. Throws CapExceeded.
ClosureResult monodromy_closure(std::vector<AffineAction> const& generators, std::int64_t N,
                                std::vector<std::size_t> const& marked_vertices,
                                IntMatrix const& subspace, ClosurePredicate predicate,
                                std::size_t cap = default_cap());

// Generators for a surface whose Veech group is all of SL(2, Z): the lifts of
// T and S plus all translations.
std::vector<AffineAction> sl2z_generators(HomologyData const& hd);

// Invariant isotropic line in the lifted subspace of H_1(X), X the 512-square
// surface over refine(EW, 4). The Veech group of X is handled through
// certificates instead of generators: the period certificate puts it in
// Gamma(4), the descent certificate makes every affine map of X descend along
// p, distinct p-profiles over the four zeros force the descended map to fix
// them, and the EW closure then gives +-I on H0(EW). Since p_* is injective on
// the lifted subspace, every affine map acts there by +-I. Independently, all
// translations and a sample of explicit Veech elements are checked directly.
struct IsotropicWitnessOptions {
  std::size_t orbit_cap = 20000;    // forms explored for stabilizer loops
  std::size_t action_checks = 48;   // explicit words whose action is computed
};

struct IsotropicWitness {
  struct Check {
    std::string label;  // word, or "t<i>" for a translation
    int sign = 0;       // +1 or -1 when the restriction is +-I, 0 otherwise
  };

  std::size_t lifted_rank = 0;
  bool nondegenerate = false;
  PeriodCertificate congruence;
  DescentCertificate descent;
  bool zeros_distinguished = false;  // p-profiles at the four zeros differ
  bool base_closure = false;         // EW closure at level 4 on H0 holds
  std::size_t orbit_forms = 0;
  bool orbit_complete = false;
  std::size_t loops_found = 0;
  bool loops_congruent = false;      // every loop and cusp parabolic is I mod 4
  bool minus_identity = false;       // -I in the Veech group
  std::vector<Check> checks;
  std::vector<std::int64_t> vector;  // witness in cycle-basis coordinates
  std::int64_t self_pairing = 0;
  std::optional<std::string> failure;

  bool certified() const;
  bool holds() const;
  std::string to_json() const;
};

IsotropicWitness isotropic_witness_X(IsotropicWitnessOptions const& options = {});

}  // namespace origami
