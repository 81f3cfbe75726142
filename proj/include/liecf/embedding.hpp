#pragma once

#include <memory>
#include <variant>

#include "liecf/modular.hpp"

namespace liecf {

// Linear map on weight lattices sending source fundamental coordinates to
// subgroup fundamental coordinates.  Integral on the whole weight lattice,
// spin weights included, since fundamental coordinates are always integers.
struct WeightMapBody {
  std::vector<std::vector<long long>> matrix;  // target_rank x source_rank
};

// Restriction data given by where each source irreducible label lands, as a
// formal character of the subgroup, valid at one fixed characteristic.
// Labels with twisted Steinberg digits are derived from their restricted
// pieces, so only restricted labels need entries.
struct TransporterBody {
  int p = 0;
  std::map<Weight, FormalCharacter> entries;
};

class Embedding;

struct CompositeBody {
  std::vector<Embedding> chain;  // applied left to right (ambient first)
};

struct ProductBody {
  std::vector<Embedding> components;
};

// An embedding of a subgroup into an ambient semisimple group, able to carry
// characters and factor multisets from the ambient group to the subgroup.
class Embedding {
 public:
  using Body = std::variant<WeightMapBody, TransporterBody, CompositeBody, ProductBody>;

  Embedding(GroupShape source, GroupShape target, Body body);

  const GroupShape& source() const { return source_; }
  const GroupShape& target() const { return target_; }
  const Body& body() const { return *body_; }
  bool is_weight_map() const { return std::holds_alternative<WeightMapBody>(*body_); }

  Weight apply(const Weight& w) const;  // weight-map embeddings only

 private:
  GroupShape source_, target_;
  std::shared_ptr<const Body> body_;
};

Embedding identity_embedding(const GroupShape& g);

// Subsystem subgroup of one simple ambient group: the weight map pairs
// ambient weights against the coroots of the given base (Bourbaki-ordered
// components, concatenated).
Embedding subsystem_embedding(const RootDatum& ambient,
                              const std::vector<SubsystemComponent>& components, int p = 0);
Embedding subsystem_embedding(const RootDatum& ambient,
                              const std::vector<std::vector<int>>& base, int p = 0);

// Classical irreducible embedding X < G with G of classical type, defined by
// the character of the natural module restricted to X.  For B/C/D the weight
// multiset must be symmetric; representative signs are chosen to make the
// map integral on spin weights.  swap_halfspins flips the two half-spin
// classes for type D ambient groups.
Embedding classical_embedding(SimpleType ambient, const FormalCharacter& natural,
                              bool swap_halfspins = false, int p = 0);

// Per-factor endomorphism data for a diagonal subgroup of H^k.
struct DiagonalSpec {
  struct Leg {
    int twist = 0;
    DiagramAut aut;
  };
  std::vector<Leg> legs;
  int p = 0;
};

// Diagonal subgroup H -> H^k via (theta_1 F^{r_1}, ..., theta_k F^{r_k});
// restriction sends a weight (w_1..w_k) to sum p^{r_i} theta_i(w_i).
Embedding diagonal_embedding(const DiagonalSpec& spec, SimpleType factor);

// Projection of a product onto a sub-block of its components.
Embedding factor_projection(const GroupShape& product, size_t first, size_t count, int p = 0);

Embedding transporter_embedding(GroupShape source, GroupShape target, int p,
                                std::map<Weight, FormalCharacter> entries);

Embedding product_embedding(const std::vector<Embedding>& components, int p = 0);

// outer: ambient -> mid, inner: mid -> subgroup; result: ambient -> subgroup.
Embedding compose_embeddings(const Embedding& outer, const Embedding& inner);

FormalCharacter restrict_character(const FormalCharacter& a, const Embedding& e, int p,
                                   const ModularDB& db);
FactorMultiset restrict_factors(const FactorMultiset& f, const Embedding& e, int p,
                                const ModularDB& db);

// Lemma-style classical irreducibility predicate on a restricted natural
// character: the restriction splits into pairwise inequivalent self-dual
// irreducible summands (checked at characteristic p through the db).
bool classical_restriction_irreducible(const FormalCharacter& natural_restricted, int p,
                                       const ModularDB& db);

}  // namespace liecf
