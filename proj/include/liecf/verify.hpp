#pragma once

#include "liecf/atlas.hpp"

namespace liecf {

// Outcome of the irreducibility screen.  The screen is sound but not
// complete: Irreducible verdicts are certified by one of the listed
// criteria; PossiblyReducible lists the Levi subgroups that survive every
// necessary condition.  The screen never claims reducibility.
struct ScreenVerdict {
  enum class Kind { Irreducible, PossiblyReducible };
  enum class Reason { NoTrivials, DimensionBound, NoLeviMatch };
  Kind kind = Kind::PossiblyReducible;
  Reason reason = Reason::NoLeviMatch;
  std::vector<std::string> witnesses;  // Levi names admitting a factor cover

  bool irreducible() const { return kind == Kind::Irreducible; }
  std::string to_string() const;
};

// Necessary-condition screen for G-irreducibility of a rank >= 2 simple
// subgroup X with the given composition factors (adjoint module always;
// minimal module too when the group has one).  Conditions per Levi: trivial
// factor count, maximal factor dimension, and an exact-cover partition of
// X's factor dimensions into the Levi's factor blocks with dual blocks
// forced to carry dual factors.  B and C types are interchangeable at p = 2.
ScreenVerdict screen_irreducibility(SimpleType g, int p, SimpleType x_type,
                                    const FactorMultiset& adj_factors,
                                    const FactorMultiset* vmin_factors, const Atlas& atlas);

struct RowReport {
  int table = 0;
  std::string id;
  std::string descr;
  int p = 0;
  std::string twists;
  std::string module_key;
  bool checked = false;  // expected data available
  bool pass = true;
  std::string computed;
  std::string expected;
  std::string note;
};

struct VerifyOptions {
  std::vector<int> characteristics{0, 2, 3, 5, 7};
  std::vector<int> twist_base{1, 2, 3};
  std::vector<int> tables;  // empty: all tables of the group
  int jobs = 1;
};

// Recompute every classification/Levi table row of G via its embedding chain
// and diff against the expected factors.
std::vector<RowReport> verify_tables(SimpleType g, const VerifyOptions& opts, const Atlas& atlas);

struct DistinctnessReport {
  int p = 0;
  std::string twists;
  // pairs of row ids with identical adjoint factor multisets (after twist
  // normalisation and diagram-automorphism relabelling)
  std::vector<std::pair<std::string, std::string>> coincidences;
};

std::vector<DistinctnessReport> check_factor_distinctness(SimpleType g, const VerifyOptions& opts,
                                                          const Atlas& atlas);

struct ScreenRowReport {
  std::string id;
  int p = 0;
  std::string twists;
  ScreenVerdict verdict;
  bool restricted = false;  // all adjoint factors restricted at p
  std::string note;
};

// Run the screen over every classification row of G legal at each p.
std::vector<ScreenRowReport> screen_tables(SimpleType g, const VerifyOptions& opts,
                                           const Atlas& atlas);

// Factor multisets of one row at (p, twist assignment).
std::map<std::string, FactorMultiset> computed_row_factors(const ExpectedRow& row, int p,
                                                           const std::map<char, int>& twists,
                                                           const Atlas& atlas);

bool all_factors_restricted(const FactorMultiset& f, int p);

std::string render_reports_text(const std::vector<RowReport>& reports);
std::string render_reports_json(const std::vector<RowReport>& reports);

}  // namespace liecf
