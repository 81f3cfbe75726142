#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "liecf/root_datum.hpp"

using namespace liecf;

namespace {
SimpleType T(const char* s) { return parse_simple_type(s); }
}

TEST_CASE("cartan matrices and positive root counts") {
  const auto& a2 = RootDatum::get(T("A2"));
  CHECK(a2.cartan() == std::vector<std::vector<int>>{{2, -1}, {-1, 2}});
  CHECK(a2.positive_roots().size() == 3);

  CHECK(RootDatum::get(T("G2")).positive_roots().size() == 6);
  CHECK(RootDatum::get(T("F4")).positive_roots().size() == 24);
  CHECK(RootDatum::get(T("E6")).positive_roots().size() == 36);
  CHECK(RootDatum::get(T("E7")).positive_roots().size() == 63);
  CHECK(RootDatum::get(T("E8")).positive_roots().size() == 120);
  // adjoint dimension cross-check: 2 * 120 + 8 = 248
  CHECK(2 * RootDatum::get(T("E8")).positive_roots().size() + 8 == 248);

  for (int n = 1; n <= 8; ++n)
    CHECK(static_cast<int>(RootDatum::get(SimpleType(Family::A, n)).positive_roots().size()) ==
          n * (n + 1) / 2);
  for (int n = 2; n <= 8; ++n) {
    CHECK(static_cast<int>(RootDatum::get(SimpleType(Family::B, n)).positive_roots().size()) ==
          n * n);
    CHECK(static_cast<int>(RootDatum::get(SimpleType(Family::C, n)).positive_roots().size()) ==
          n * n);
  }
  for (int n = 3; n <= 8; ++n)
    CHECK(static_cast<int>(RootDatum::get(SimpleType(Family::D, n)).positive_roots().size()) ==
          n * (n - 1));
}

TEST_CASE("invalid ranks are rejected") {
  CHECK_THROWS_AS(SimpleType(Family::E, 5), input_error);
  CHECK_THROWS_AS(SimpleType(Family::F, 3), input_error);
  CHECK_THROWS_AS(SimpleType(Family::G, 3), input_error);
  CHECK_THROWS_AS(SimpleType(Family::D, 2), input_error);
  CHECK_THROWS_AS(SimpleType(Family::B, 1), input_error);
}

TEST_CASE("weyl orbits") {
  const auto& a2 = RootDatum::get(T("A2"));
  CHECK(weyl_orbit(a2, {1, 0}).size() == 3);
  CHECK(weyl_orbit(a2, {1, 1}).size() == 6);
  CHECK(weyl_orbit(a2, {0, 0}) == std::set<Weight>{{0, 0}});

  // every orbit contains exactly one dominant weight
  for (const auto& w : std::vector<Weight>{{1, 0}, {2, 1}, {-1, 3}}) {
    int dominant = 0;
    for (const auto& v : weyl_orbit(a2, w))
      if (is_dominant(a2, v)) ++dominant;
    CHECK(dominant == 1);
  }
}

TEST_CASE("to_dominant") {
  const auto& a2 = RootDatum::get(T("A2"));
  CHECK(to_dominant(a2, {2, 1}) == Weight{2, 1});
  CHECK(to_dominant(a2, {-1, 2}) == Weight{1, 1});
  CHECK(to_dominant(a2, {0, 0}) == Weight{0, 0});
  // result stays in the orbit
  auto orbit = weyl_orbit(a2, {-1, 2});
  CHECK(orbit.count(to_dominant(a2, {-1, 2})) == 1);
}

TEST_CASE("diagram automorphisms") {
  auto dual = DiagramAut::duality(T("A2"));
  CHECK(dual.apply({1, 0}) == Weight{0, 1});
  CHECK(dual.apply(dual.apply({2, 1})) == Weight{2, 1});

  // B3 -> C3 special isogeny takes lambda_1 to 2 lambda_1
  auto b3 = DiagramAut::special_isogeny(T("B3"), 2);
  CHECK(b3.apply({1, 0, 0}) == Weight{2, 0, 0});
  CHECK(b3.apply({0, 0, 1}) == Weight{0, 0, 1});
  CHECK_THROWS_AS(DiagramAut::special_isogeny(T("B3"), 3), input_error);
  CHECK_THROWS_AS(DiagramAut::special_isogeny(T("B3"), 0), input_error);

  // B2 in its own labels: applying twice is the Frobenius
  auto b2 = DiagramAut::special_isogeny(T("B2"), 2);
  CHECK(b2.apply({1, 0}) == Weight{0, 2});
  CHECK(b2.apply(b2.apply({1, 0})) == Weight{2, 0});

  auto tau = DiagramAut::triality(T("D4"));
  Weight w{1, 0, 0, 0};
  CHECK(tau.apply(w) == Weight{0, 0, 1, 0});
  CHECK(tau.apply(tau.apply(tau.apply(w))) == w);

  // graph automorphisms preserve orbit sizes
  const auto& d4 = RootDatum::get(T("D4"));
  for (const Weight& v : std::vector<Weight>{{1, 0, 0, 0}, {1, 1, 0, 0}, {0, 1, 0, 1}})
    CHECK(weyl_orbit(d4, v).size() == weyl_orbit(d4, tau.apply(v)).size());
}

TEST_CASE("borel-de siebenthal subsystems") {
  auto names = [](const std::vector<SubsystemComponent>& comps) {
    std::string out;
    for (const auto& c : comps) out += c.type.name();
    return out;
  };

  // A2 extended diagram: any deletion gives A1+A1 or A2 back
  const auto& a2 = RootDatum::get(T("A2"));
  for (int node = 0; node <= 2; ++node) {
    auto comps = borel_de_siebenthal(a2, node);
    std::string n = names(comps);
    CHECK((n == "A1A1" || n == "A2"));
  }

  const auto& e6 = RootDatum::get(T("E6"));
  bool found_a2cubed = false;
  for (int node = 0; node < 6; ++node)
    if (names(borel_de_siebenthal(e6, node)) == "A2A2A2") found_a2cubed = true;
  CHECK(found_a2cubed);

  const auto& e8 = RootDatum::get(T("E8"));
  std::set<std::string> e8subs;
  for (int node = 0; node < 8; ++node) e8subs.insert(names(borel_de_siebenthal(e8, node)));
  CHECK(e8subs.count("D8") == 1);
  CHECK(e8subs.count("A8") == 1);
  CHECK(e8subs.count("A2E6") == 1);
  CHECK(e8subs.count("A4A4") == 1);

  const auto& e7 = RootDatum::get(T("E7"));
  std::set<std::string> e7subs;
  for (int node = 0; node < 7; ++node) e7subs.insert(names(borel_de_siebenthal(e7, node)));
  CHECK(e7subs.count("A7") == 1);
  CHECK(e7subs.count("A2A5") == 1);

  const auto& f4 = RootDatum::get(T("F4"));
  std::set<std::string> f4subs;
  for (int node = 0; node < 4; ++node) f4subs.insert(names(borel_de_siebenthal(f4, node)));
  CHECK(f4subs.count("B4") == 1);
  CHECK(f4subs.count("A2A2") == 1);

  // all returned vectors are genuinely roots of the ambient system
  for (int node = 0; node < 8; ++node)
    for (const auto& comp : borel_de_siebenthal(e8, node))
      for (const auto& r : comp.base) CHECK(e8.is_root(r));

  CHECK_THROWS_AS(borel_de_siebenthal(e6, 7), input_error);
}

TEST_CASE("coroot pairing basics") {
  const auto& g2 = RootDatum::get(T("G2"));
  // highest short root is lambda_1, highest (long) root is lambda_2
  CHECK(g2.root_to_weight(g2.highest_root()) == Weight{0, 1});
  // dominance test
  CHECK(g2.dominates({0, 1}, {1, 0}));
  CHECK(!g2.dominates({1, 0}, {0, 1}));
}
