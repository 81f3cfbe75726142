#pragma once

#include <iosfwd>
#include <map>
#include <optional>

#include "liecf/formal_character.hpp"

namespace liecf {

struct unknown_character_error : data_error {
  using data_error::data_error;
};
struct inconsistent_db_error : data_error {
  using data_error::data_error;
};

// Multiset of irreducible-module labels (dominant highest weights) with
// multiplicities; the "V1 / ... / Vk" lists of the dataset tables.
struct FactorMultiset {
  GroupShape group;
  std::map<Weight, long long> factors;

  FactorMultiset() = default;
  explicit FactorMultiset(GroupShape g) : group(std::move(g)) {}

  void add(const Weight& w, long long m);
  long long total_multiplicity() const;
  bool operator==(const FactorMultiset& o) const { return factors == o.factors; }
  std::string to_string() const;
};

// Database of characteristic-p Weyl-module composition factors, keyed by
// (simple type, p, dominant highest weight).  In permissive mode a missing
// entry means the Weyl module is taken to be irreducible; strict mode turns
// a miss into unknown_character_error.
class ModularDB {
 public:
  enum class Mode { Permissive, Strict };

  ModularDB() = default;

  Mode mode() const { return mode_; }
  void set_mode(Mode m) { mode_ = m; }

  void add_entry(SimpleType t, int p, const Weight& lambda,
                 const std::vector<std::pair<Weight, long long>>& factors);
  const std::vector<std::pair<Weight, long long>>* find(SimpleType t, int p,
                                                        const Weight& lambda) const;
  bool has(SimpleType t, int p, const Weight& lambda) const {
    return find(t, p, lambda) != nullptr;
  }
  size_t size() const { return entries_.size(); }

  // One entry per line: "TYPE RANK p LAMBDA : w^m, w^m, ...".  '#' starts a
  // comment.  The exact grammar is documented in docs/formats.md.
  static ModularDB parse(std::istream& in);
  static ModularDB load_file(const std::string& path);
  void merge(const ModularDB& other);

  // Structural invariants: every entry lists lambda itself with multiplicity
  // one and all other factors strictly below it in the dominance order.
  void validate() const;

  struct Key {
    char family;
    int rank;
    int p;
    Weight lambda;
    auto operator<=>(const Key&) const = default;
  };
  const std::map<Key, std::vector<std::pair<Weight, long long>>>& entries() const {
    return entries_;
  }

 private:
  std::map<Key, std::vector<std::pair<Weight, long long>>> entries_;
  Mode mode_ = Mode::Permissive;
};

// Frobenius twist: every weight scaled by p^r.
FormalCharacter frobenius_twist(const FormalCharacter& a, int r, int p);
Weight twist_weight(const Weight& w, int r, int p);

// Steinberg factorisation of a dominant weight: lambda = sum p^r * lambda_r
// with every lambda_r restricted and nonzero.  The zero weight factors as
// the empty list.
std::vector<std::pair<Weight, int>> steinberg_split(const Weight& lambda, int p);

bool is_restricted(const Weight& lambda, int p);

// Character of the irreducible module of highest weight lambda.  For p = 0
// this is the Weyl character; otherwise the Steinberg product of twisted
// restricted irreducible characters, each computed as the Weyl character
// minus the recursively expanded database factors.
FormalCharacter irr_char(const GroupShape& g, const Weight& lambda, int p, const ModularDB& db);
unsigned long long irr_dim(const GroupShape& g, const Weight& lambda, int p, const ModularDB& db);

// Greedy decomposition of a Weyl-invariant character into irreducible
// composition factors: peel the dominant weight of maximal coroot height
// (lexicographic tie-break) and subtract its irreducible character.
FactorMultiset decompose(const FormalCharacter& a, int p, const ModularDB& db);

// decompose(weyl_character(lambda)).
FactorMultiset weyl_factors(const GroupShape& g, const Weight& lambda, int p,
                            const ModularDB& db);

long long factor_dim(const FactorMultiset& f, int p, const ModularDB& db);

// Sum of mult * irr_char over the factors (the reconstruction identity's
// right-hand side).
FormalCharacter factor_character(const FactorMultiset& f, int p, const ModularDB& db);

}  // namespace liecf
