#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sstream>

#include "doctest.h"
#include "liecf/modular.hpp"
#include "support/jantzen.hpp"

using namespace liecf;

namespace {

GroupShape G(const char* s, int p = 0) { return parse_group(s, p); }
Weight W(const char* s, const GroupShape& g) { return parse_weight(s, g); }

ModularDB small_db() {
  std::istringstream in(
      "A 2 3 11 : 11^1, 00^1\n"
      "A 2 2 30 : 30^1, 00^1\n"
      "A 2 2 03 : 03^1, 00^1\n"
      "G 2 7 20 : 20^1, 00^1\n"
      "E 6 3 010000 : 010000^1, 000000^1\n"
      "B 4 2 0100 : 0100^1, 1000^1, 0000^2\n"
      "B 4 2 1000 : 1000^1, 0000^1\n");
  return ModularDB::parse(in);
}

}  // namespace

TEST_CASE("frobenius twists") {
  GroupShape a2 = G("A2", 3);
  FormalCharacter c = weyl_character(a2, {1, 0});
  CHECK(frobenius_twist(c, 0, 3) == c);
  FormalCharacter t = frobenius_twist(c, 1, 3);
  CHECK(t.dim() == c.dim());
  CHECK(t.multiplicity({3, 0}) == 1);
  CHECK_THROWS_AS(frobenius_twist(c, 1, 0), input_error);
}

TEST_CASE("steinberg splitting") {
  CHECK(steinberg_split({1, 1}, 3) ==
        std::vector<std::pair<Weight, int>>{{{1, 1}, 0}});
  CHECK(steinberg_split({3, 0}, 3) == std::vector<std::pair<Weight, int>>{{{1, 0}, 1}});
  CHECK(steinberg_split({3, 1}, 2) ==
        std::vector<std::pair<Weight, int>>{{{1, 1}, 0}, {{1, 0}, 1}});
  CHECK(steinberg_split({0, 0}, 5).empty());
  CHECK_THROWS_AS(steinberg_split({1, 1}, 6), input_error);
}

TEST_CASE("irreducible characters through the database") {
  ModularDB db = small_db();
  db.validate();

  // p = 0: the Weyl character
  GroupShape a2 = G("A2");
  CHECK(irr_char(a2, {1, 1}, 0, db) == weyl_character(a2, {1, 1}));

  // A2, p = 3: the adjoint loses a trivial factor
  CHECK(irr_dim(G("A2", 3), {1, 1}, 3, db) == 7);
  // G2, p = 7: 27 - 1
  CHECK(irr_dim(G("G2", 7), {2, 0}, 7, db) == 26);
  // E6, p = 3: 78 - 1
  GroupShape e6 = G("E6", 3);
  CHECK(irr_dim(e6, W("010000", e6), 3, db) == 77);

  // permissive mode: missing entry means the Weyl module is irreducible
  CHECK(irr_dim(G("A2", 5), {1, 1}, 5, db) == 8);
  // strict mode: missing entry is an error
  db.set_mode(ModularDB::Mode::Strict);
  CHECK_THROWS_AS(irr_char(G("A2", 5), {1, 1}, 5, db), unknown_character_error);
  db.set_mode(ModularDB::Mode::Permissive);

  // twisted labels factor through steinberg pieces: dim V(3,0) at p=3 is 3
  CHECK(irr_dim(G("A2", 3), {3, 0}, 3, db) == 3);
  // and at p=2, (3,0) = (1,0) + 2*(1,0) gives dimension 9
  CHECK(irr_dim(G("A2", 2), {3, 0}, 2, db) == 9);
}

TEST_CASE("decompose and the reconstruction identity") {
  ModularDB db = small_db();
  GroupShape a2 = G("A2", 3);

  // fixed point
  FormalCharacter v = irr_char(a2, {1, 1}, 3, db);
  FactorMultiset fm = decompose(v, 3, db);
  CHECK(fm.factors == std::map<Weight, long long>{{{1, 1}, 1}});

  // 9 = 7 + 1 + 1
  FormalCharacter t = tensor(weyl_character(a2, {1, 0}), weyl_character(a2, {0, 1}));
  fm = decompose(t, 3, db);
  CHECK(fm.factors == std::map<Weight, long long>{{{1, 1}, 1}, {{0, 0}, 2}});
  // reconstruction identity
  CHECK(factor_character(fm, 3, db) == t);
  CHECK(factor_dim(fm, 3, db) == t.dim());

  // weyl_factors examples
  GroupShape e6 = G("E6", 3);
  FactorMultiset wf = weyl_factors(e6, W("010000", e6), 3, db);
  CHECK(wf.factors ==
        std::map<Weight, long long>{{W("010000", e6), 1}, {Weight(6, 0), 1}});

  GroupShape b4 = G("B4", 2);
  wf = weyl_factors(b4, W("0100", b4), 2, db);
  CHECK(wf.factors == std::map<Weight, long long>{
                          {W("0100", b4), 1}, {W("1000", b4), 1}, {Weight(4, 0), 2}});

  // p = 0 fixed point
  wf = weyl_factors(G("E6"), W("010000", G("E6")), 0, db);
  CHECK(wf.factors.size() == 1);

  // twist equivariance of decompose
  FactorMultiset tw = decompose(frobenius_twist(t, 1, 3), 3, db);
  CHECK(tw.factors == std::map<Weight, long long>{{{3, 3}, 1}, {{0, 0}, 2}});
}

TEST_CASE("inconsistent database is detected") {
  std::istringstream in("A 2 5 10 : 10^1, 00^1\n");  // W(10) has no zero weight
  ModularDB bad = ModularDB::parse(in);
  CHECK_THROWS_AS(irr_char(G("A2", 5), {1, 0}, 5, bad), inconsistent_db_error);
}

TEST_CASE("db validation rejects malformed entries") {
  {
    std::istringstream in("A 2 3 11 : 11^2, 00^1\n");
    ModularDB db = ModularDB::parse(in);
    CHECK_THROWS_AS(db.validate(), data_error);
  }
  {
    // factor not below the highest weight
    std::istringstream in("A 2 3 11 : 11^1, 22^1\n");
    ModularDB db = ModularDB::parse(in);
    CHECK_THROWS_AS(db.validate(), data_error);
  }
  {
    // non-prime characteristic
    std::istringstream in("A 2 4 11 : 11^1, 00^1\n");
    ModularDB db = ModularDB::parse(in);
    CHECK_THROWS_AS(db.validate(), data_error);
  }
}

TEST_CASE("jantzen oracle: irreducibility detection") {
  // A2 p=3 adjoint: reducible with exactly a trivial below
  testing::JantzenOracle a2(parse_simple_type("A2"), 3);
  auto f = a2.factors_of_weyl({1, 1});
  CHECK(f.exact);
  CHECK(f.factors == std::map<Weight, long long>{{{1, 1}, 1}, {{0, 0}, 1}});

  // A2 p=2: W(1,1) irreducible
  testing::JantzenOracle a2p2(parse_simple_type("A2"), 2);
  CHECK(a2p2.factors_of_weyl({1, 1}).factors.size() == 1);
  // A2 p=2: W(3,0) = 30/00
  auto f30 = a2p2.factors_of_weyl({3, 0});
  CHECK(f30.exact);
  CHECK(f30.factors == std::map<Weight, long long>{{{3, 0}, 1}, {{0, 0}, 1}});

  // A2 p=5: W(3,1) = 31/20
  testing::JantzenOracle a2p5(parse_simple_type("A2"), 5);
  auto f31 = a2p5.factors_of_weyl({3, 1});
  CHECK(f31.exact);
  CHECK(f31.factors == std::map<Weight, long long>{{{3, 1}, 1}, {{2, 0}, 1}});

  // G2 p=7: W(2,0) = 20/00
  testing::JantzenOracle g2(parse_simple_type("G2"), 7);
  auto g = g2.factors_of_weyl({2, 0});
  CHECK(g.exact);
  CHECK(g.factors == std::map<Weight, long long>{{{2, 0}, 1}, {{0, 0}, 1}});

  // F4 p=2: W(0001) is irreducible (the 26-dimensional module only loses a
  // trivial factor at p=3)
  testing::JantzenOracle f4p2(parse_simple_type("F4"), 2);
  CHECK(f4p2.factors_of_weyl({0, 0, 0, 1}).factors.size() == 1);
  testing::JantzenOracle f4p3(parse_simple_type("F4"), 3);
  auto ff = f4p3.factors_of_weyl({0, 0, 0, 1});
  CHECK(ff.factors == std::map<Weight, long long>{{{0, 0, 0, 1}, 1}, {{0, 0, 0, 0}, 1}});

  // B4 p=2, W(lambda2): support {lambda2, lambda1, 0} with the trivial twice
  ModularDB ref = small_db();
  testing::JantzenOracle b4(parse_simple_type("B4"), 2, &ref);
  auto b = b4.factors_of_weyl({0, 1, 0, 0});
  CHECK(b.factors == std::map<Weight, long long>{
                         {{0, 1, 0, 0}, 1}, {{1, 0, 0, 0}, 1}, {{0, 0, 0, 0}, 2}});
}
