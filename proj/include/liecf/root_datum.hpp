#pragma once

#include <optional>
#include <set>
#include <vector>

#include "liecf/types.hpp"

namespace liecf {

// Combinatorial data of one simple root system in Bourbaki ordering.
//
// Conventions used throughout the library:
//  * weights are integer vectors in fundamental-weight coordinates,
//  * roots are integer vectors in simple-root coordinates,
//  * cartan(i,j) = <alpha_j, alpha_i^vee>, so column j holds the fundamental
//    coordinates of alpha_j and a simple reflection acts by
//    s_i(w) = w - w_i * column_i.
class RootDatum {
 public:
  explicit RootDatum(SimpleType type);

  const SimpleType& type() const { return type_; }
  int rank() const { return rank_; }
  const std::vector<std::vector<int>>& cartan() const { return cartan_; }
  // Positive roots in simple-root coordinates, closed under the reflection
  // generation procedure; simple roots come first.
  const std::vector<std::vector<int>>& positive_roots() const { return positive_roots_; }
  const Weight& rho() const { return rho_; }
  // Half squared lengths (alpha_i,alpha_i)/2, normalised so short roots get 1.
  const std::vector<int>& symmetrizers() const { return symmetrizers_; }

  // Fundamental coordinates of a root given in simple-root coordinates.
  Weight root_to_weight(const std::vector<int>& root) const;
  bool is_root(const std::vector<int>& root) const;
  std::vector<int> highest_root() const { return positive_roots_.back(); }

  // (beta,beta)/2 for a root, in the symmetrizer normalisation.
  int root_half_norm(const std::vector<int>& root) const;
  // <w, beta^vee> for a weight w (fundamental coords) and a root beta.
  int pair_with_coroot(const Weight& w, const std::vector<int>& root) const;

  // Scaled inner product on the weight lattice: ip(x,y) = det(C) * (x,y)
  // with the symmetrizer normalisation.  Exact integers.
  long long weight_inner(const Weight& x, const Weight& y) const;

  // det(C) * <w, rho^vee>; strictly increasing along the dominance order.
  long long coroot_height(const Weight& w) const;

  // Whether lambda - mu is a non-negative integer combination of simple
  // roots (the dominance order on a fixed root-lattice coset).
  bool dominates(const Weight& lambda, const Weight& mu) const;

  long long cartan_det() const { return det_; }

  // Cached shared instances.
  static const RootDatum& get(SimpleType type);

 private:
  SimpleType type_;
  int rank_;
  std::vector<std::vector<int>> cartan_;
  std::vector<int> symmetrizers_;
  std::vector<std::vector<int>> positive_roots_;
  std::set<std::vector<int>> root_set_;  // all roots, both signs
  Weight rho_;
  std::vector<std::vector<long long>> cartan_adjugate_;  // det * C^{-1}
  long long det_ = 1;
};

RootDatum build_root_datum(SimpleType type);

bool is_dominant(const RootDatum& datum, const Weight& w);
Weight to_dominant(const RootDatum& datum, const Weight& w);
std::set<Weight> weyl_orbit(const RootDatum& datum, const Weight& w);

// Product-group helpers; weights are concatenations over the components.
bool is_dominant(const GroupShape& g, const Weight& w);
Weight to_dominant(const GroupShape& g, const Weight& w);
long long coroot_height(const GroupShape& g, const Weight& w);
Weight dual_weight(const GroupShape& g, const Weight& w);  // -w0(w)

// A diagram automorphism (or the special isogeny at p = 2/3) acting on
// fundamental-weight coordinates.
struct DiagramAut {
  enum class Kind { Permutation, SpecialIsogeny };
  SimpleType source;
  SimpleType target;
  Kind kind;
  // For permutations: lambda_i of the source maps to lambda_{perm[i]} of the
  // target (0-based).
  std::vector<int> perm;

  static DiagramAut identity(SimpleType t);
  // The unique nontrivial graph automorphism where one exists (A_n n>1,
  // D_n swapping the fork, E6).  For D4 use triality()/fork_swap().
  static DiagramAut duality(SimpleType t);
  static DiagramAut triality(SimpleType d4);        // tau: l1 -> l3 -> l4 -> l1
  static DiagramAut fork_swap(SimpleType d);        // iota: swap the two fork nodes
  // Special isogeny B_n -> C_n (or C_n -> B_n); takes lambda_1 to 2*lambda_1.
  // Only legal in characteristic 2; for B2/C2 the target is expressed in the
  // source's own labels.  p = 3 admits the G2 self-isogeny.
  static DiagramAut special_isogeny(SimpleType t, int p);

  Weight apply(const Weight& w) const;
  bool is_identity() const;
};

Weight apply_diagram_aut(const DiagramAut& aut, const Weight& w);

// One Borel-de Siebenthal subsystem component: its type and its simple roots
// expressed in the ambient simple-root coordinates, in Bourbaki order.
struct SubsystemComponent {
  SimpleType type;
  std::vector<std::vector<int>> base;
};

// Classify a set of pairwise-compatible ambient roots as a product of simple
// systems, returning each component's type with its base in Bourbaki order.
std::vector<SubsystemComponent> classify_base(const RootDatum& ambient,
                                              const std::vector<std::vector<int>>& base);

// Delete one node of the extended Dynkin diagram (0..rank-1 for a simple
// root, rank for the added lowest-root node) and return the resulting
// full-rank subsystem, one entry per simple component.
std::vector<SubsystemComponent> borel_de_siebenthal(const RootDatum& datum, int deleted_node);

}  // namespace liecf
