#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace liecf {

// Errors thrown by the library. Input errors (bad ranks, malformed weight
// strings, illegal characteristic) are input_error; everything signalling an
// inconsistent dataset (negative multiplicity while peeling, dimension
// mismatch in a transporter) is data_error.
struct input_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct data_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Family : char { A = 'A', B = 'B', C = 'C', D = 'D', E = 'E', F = 'F', G = 'G' };

// One simple factor, e.g. E8 or B4.  Rank bounds per family are enforced at
// construction: E in {6,7,8}, F4, G2, D >= 3, B/C >= 2, A >= 1.
struct SimpleType {
  Family family;
  int rank;

  SimpleType(Family f, int r) : family(f), rank(r) { validate(); }
  void validate() const;
  std::string name() const;

  friend auto operator<=>(const SimpleType&, const SimpleType&) = default;
};

SimpleType parse_simple_type(const std::string& s);

// A semisimple group: ordered list of simple factors plus the field
// characteristic (0 encodes characteristic zero).
struct GroupShape {
  std::vector<SimpleType> components;
  int characteristic = 0;

  GroupShape() = default;
  GroupShape(std::vector<SimpleType> comps, int p = 0)
      : components(std::move(comps)), characteristic(p) {
    validate();
  }
  GroupShape(SimpleType t, int p = 0) : GroupShape(std::vector<SimpleType>{t}, p) {}

  void validate() const;
  int total_rank() const;
  bool operator==(const GroupShape& o) const { return components == o.components; }
  std::string name() const;
};

// Weights live in fundamental-weight integer coordinates, concatenated over
// the components of a GroupShape.  Roots are kept in simple-root coordinates.
using Weight = std::vector<int>;

bool is_prime(int p);

// Weight string I/O following the single-digit convention "a1 a2 ... al";
// coordinates >= 10 use a parenthesized comma list, components of a product
// are separated by commas: e.g. "10,01" or "(12,9)".
std::string weight_to_string(const Weight& w, const GroupShape& g);
std::string weight_to_string(const Weight& w);
Weight parse_weight(const std::string& s, const GroupShape& g);

std::string group_to_string(const GroupShape& g);
GroupShape parse_group(const std::string& s, int p = 0);

}  // namespace liecf
