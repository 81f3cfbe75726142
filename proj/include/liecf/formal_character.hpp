#pragma once

#include <map>

#include "liecf/root_datum.hpp"
#include "liecf/types.hpp"

namespace liecf {

// A formal character: finite multiset of weights with positive integer
// multiplicities, Weyl-invariant for every value the library produces.
// The full weight multiset is stored (not just the dominant cone) because
// restriction along embeddings needs every weight.
class FormalCharacter {
 public:
  FormalCharacter() = default;
  explicit FormalCharacter(GroupShape g) : group_(std::move(g)) {}

  const GroupShape& group() const { return group_; }
  const std::map<Weight, long long>& weights() const { return mult_; }
  bool empty() const { return mult_.empty(); }

  long long dim() const;
  long long multiplicity(const Weight& w) const;
  void add(const Weight& w, long long m);

  // Multiplicities restricted to dominant weights.
  std::map<Weight, long long> dominant_part() const;

  bool operator==(const FormalCharacter& o) const {
    return group_ == o.group_ && mult_ == o.mult_;
  }

 private:
  GroupShape group_;
  std::map<Weight, long long> mult_;
};

// Character of the Weyl module W(lambda); multiplicities via Freudenthal's
// recursion, expanded to full Weyl orbits.  Products of components multiply.
FormalCharacter weyl_character(const GroupShape& g, const Weight& lambda);

// Weyl dimension formula, evaluated exactly via prime factorisation of the
// numerator and denominator products.  Throws input_error on non-dominant
// input and data_error on (absurdly large) overflow.
unsigned long long weyl_dim(const GroupShape& g, const Weight& lambda);

FormalCharacter tensor(const FormalCharacter& a, const FormalCharacter& b);
FormalCharacter alt_power(const FormalCharacter& a, int k);
FormalCharacter sym_power(const FormalCharacter& a, int k);
FormalCharacter dual(const FormalCharacter& a);
// Exact difference; throws data_error if b is not pointwise <= a.
FormalCharacter subtract(const FormalCharacter& a, const FormalCharacter& b);

FormalCharacter trivial_character(const GroupShape& g);

// External tensor product along concatenated components: a on g1, b on g2,
// result on g1 x g2.
FormalCharacter outer_tensor(const FormalCharacter& a, const FormalCharacter& b, int p = 0);

bool is_weyl_invariant(const FormalCharacter& a);

}  // namespace liecf
