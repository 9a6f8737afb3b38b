#include <algorithm>
#include <complex>
#include <set>

#include "doctest.h"

#include "bqg/groups.hpp"

using namespace bqg;

namespace {

std::shared_ptr<const FiniteGroup> shared(std::string_view name) { return std::make_shared<const FiniteGroup>(preset(name)); }

bool has_pair(const std::vector<ExactFactorization>& fs, const Subgroup& a, const Subgroup& b) {
  return std::any_of(fs.begin(), fs.end(),
                     [&](const ExactFactorization& f) { return f.G1.members == a.members && f.G2.members == b.members; });
}

}  // namespace

TEST_CASE("load_group basics") {
  const FiniteGroup one = load_group(nlohmann::json{{"elements", {"e"}}, {"table", {{0}}}});
  CHECK(one.order() == 1);
  CHECK(one.is_abelian());

  nlohmann::json z4{{"name", "z4"}, {"elements", {"0", "1", "2", "3"}}, {"table", nlohmann::json::array()}};
  for (int i = 0; i < 4; ++i) {
    std::vector<int> row;
    for (int j = 0; j < 4; ++j) row.push_back((i + j) % 4);
    z4["table"].push_back(row);
  }
  const FiniteGroup g = load_group(z4);
  CHECK(g.inverses() == std::vector<int>{0, 3, 2, 1});
  CHECK(load_group(g.to_json()).order() == 4);
}

TEST_CASE("mutated tables are rejected with the failing triple") {
  nlohmann::json s3 = preset("sym3").to_json();
  // exchange a non-commuting pair of products
  const FiniteGroup ref = preset("sym3");
  int a = -1, b = -1;
  for (int i = 0; i < 6 && a < 0; ++i)
    for (int j = 0; j < 6; ++j)
      if (ref.mul(i, j) != ref.mul(j, i)) {
        a = i;
        b = j;
        break;
      }
  REQUIRE(a >= 0);
  s3["table"][a][b] = ref.mul(b, a);
  try {
    load_group(s3);
    FAIL("mutated table accepted");
  } catch (const GroupError& e) {
    CHECK(std::string(e.what()).find("associativity fails for triple") != std::string::npos);
  }

  nlohmann::json bad{{"elements", {"a", "b"}}, {"table", {{0, 1}, {1, 2}}}};
  CHECK_THROWS_AS(load_group(bad), GroupError);
  nlohmann::json dup{{"elements", {"a", "a"}}, {"table", {{0, 1}, {1, 0}}}};
  CHECK_THROWS_AS(load_group(dup), GroupError);
  CHECK_THROWS_AS(load_group(nlohmann::json{{"elements", {"a"}}}), GroupError);
}

TEST_CASE("presets") {
  CHECK(preset("sym3").order() == 6);
  CHECK(preset("sym4").order() == 24);
  CHECK_FALSE(preset("sym3").is_abelian());
  CHECK(preset("dihedral4").order() == 8);
  const FiniteGroup p = preset("z2xz3");
  CHECK(p.is_abelian());
  CHECK(p.order() == 6);
  CHECK(p.order_multiset() == preset("cyclic6").order_multiset());
  CHECK(p.order_multiset() != preset("sym3").order_multiset());
  CHECK_THROWS(preset("nonsense"));
}

TEST_CASE("permutation names compose right to left") {
  const FiniteGroup s3 = preset("sym3");
  const int a = *s3.find("(12)"), b = *s3.find("(23)");
  // (12)(23): 1 -> 1 -> 2, 2 -> 3 -> 3, 3 -> 2 -> 1
  CHECK(s3.element_name(s3.mul(a, b)) == "(123)");
  CHECK(s3.element_name(s3.identity()) == "()");
}

TEST_CASE("subgroup census") {
  CHECK(subgroups(shared("sym4")).size() == 30);
  CHECK(subgroups(shared("sym3")).size() == 6);
  CHECK(subgroups(shared("cyclic6")).size() == 4);
}

TEST_CASE("selectors") {
  const auto s4 = shared("sym4");
  const Subgroup c4 = select_subgroup(s4, "(1234)");
  CHECK(c4.order() == 4);
  CHECK(c4.is_abelian());
  CHECK_FALSE(c4.is_normal());
  const Subgroup st = select_subgroup(s4, "stab4");
  CHECK(st.order() == 6);
  CHECK_FALSE(st.is_normal());
  CHECK(select_subgroup(s4, "A4").order() == 12);
  CHECK(select_subgroup(s4, "A4").is_normal());
  CHECK(select_subgroup(s4, "(12);(34)").order() == 4);
  CHECK(select_subgroup(shared("z2xz3"), "factor1").order() == 2);
  CHECK(select_subgroup(shared("z2xz3"), "factor2").order() == 3);
  CHECK_THROWS_AS(select_subgroup(s4, "(15)"), GroupError);
}

TEST_CASE("exact factorizations") {
  const auto c6 = shared("cyclic6");
  const auto fs6 = exact_factorizations(c6, false);
  CHECK(has_pair(fs6, select_subgroup(c6, "2"), select_subgroup(c6, "3")));
  CHECK(has_pair(fs6, select_subgroup(c6, "trivial"), select_subgroup(c6, "whole")));
  CHECK(has_pair(fs6, select_subgroup(c6, "whole"), select_subgroup(c6, "trivial")));

  const auto s3 = shared("sym3");
  const auto fs3 = exact_factorizations(s3, false);
  CHECK(has_pair(fs3, select_subgroup(s3, "A3"), select_subgroup(s3, "(12)")));
  CHECK(has_pair(fs3, select_subgroup(s3, "(12)"), select_subgroup(s3, "A3")));
  for (const auto& f : fs3) CHECK_NOTHROW(validate_factorization(f));

  const auto s4 = shared("sym4");
  const auto fs4 = exact_factorizations(s4, true);
  CHECK(has_pair(fs4, select_subgroup(s4, "(1234)"), select_subgroup(s4, "stab4")));
  for (const auto& f : fs4) CHECK(f.G1.is_abelian());

  // every factor of an abelian group is normal
  for (const auto& f : exact_factorizations(shared("cyclic4"), false)) {
    CHECK(f.G1.is_normal());
    CHECK(f.G2.is_normal());
  }

  ExactFactorization bad{s4, select_subgroup(s4, "(1234)"), select_subgroup(s4, "A4")};
  CHECK_THROWS_AS(validate_factorization(bad), GroupError);
}

TEST_CASE("characters") {
  const CharacterGroup z2 = character_group(preset("cyclic2"));
  std::set<std::pair<double, double>> rows;
  for (int k = 0; k < 2; ++k) rows.insert({z2.table(k, 0).real(), z2.table(k, 1).real()});
  CHECK(rows == std::set<std::pair<double, double>>{{1.0, 1.0}, {1.0, -1.0}});

  const CharacterGroup z4 = character_group(preset("cyclic4"));
  // some character sends the generator 1 to i
  bool found = false;
  for (int k = 0; k < 4; ++k) found = found || std::abs(z4.table(k, 1) - std::complex<double>(0.0, 1.0)) < 1e-15;
  CHECK(found);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      std::complex<double> s = 0.0;
      for (int h = 0; h < 4; ++h) s += z4.table(a, h) * std::conj(z4.table(b, h));
      CHECK(std::abs(s - (a == b ? 4.0 : 0.0)) < 1e-14);
    }
  for (int k = 0; k < 4; ++k)
    for (int h = 0; h < 4; ++h)
      CHECK(std::abs(z4.table(z4.conjugate(k), h) - std::conj(z4.table(k, h))) < 1e-15);

  CHECK(character_defect(character_group(preset("z2xz3"))) < 1e-13);
  CHECK_THROWS(character_group(preset("dihedral4")));
}
