#include <catch2/catch_amalgamated.hpp>

#include "mrrk/catalogue.hpp"
#include "mrrk/order_conditions.hpp"

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

using namespace mrrk;

TEST_CASE("catalogue holds exactly the nine published methods") {
  const auto& cat = builtin_catalogue();
  std::vector<std::string> expected = {"SSPRK(2,2)",    "SSPRK(3,3)",    "Heun(3,3)",
                                       "RK(4,4)",       "Fehlberg(6,4)", "Fehlberg(6,5)",
                                       "DP(7,5)",       "ARK3(2)4L[2]SA", "ARK4(3)6L[2]SA"};
  REQUIRE(cat.size() == expected.size());
  for (const auto& name : expected) REQUIRE(cat.count(name) == 1);
}

TEST_CASE("SSPRK(2,2) matches the published coefficients") {
  const auto& s = find_embedded_set("SSPRK(2,2)");
  REQUIRE(s.A(0, 0) == 0.0);
  REQUIRE(s.A(1, 0) == 1.0);
  REQUIRE(s.weights[0][0] == 0.5);
  REQUIRE(s.weights[0][1] == 0.5);
  REQUIRE(s.weights[1][0] == Catch::Approx(1.0 / 3).margin(1e-16));
  REQUIRE(s.weights[1][1] == Catch::Approx(2.0 / 3).margin(1e-16));
  REQUIRE(s.orders == std::vector<int>{2, 1});
}

TEST_CASE("Heun(3,3) ships the summing-to-one third-order weights") {
  // the printed first weight row does not sum to one; the catalogue carries
  // the standard (1/4, 0, 3/4)
  const auto& s = find_embedded_set("Heun(3,3)");
  REQUIRE(s.weights[0][0] == 0.25);
  REQUIRE(s.weights[0][1] == 0.0);
  REQUIRE(s.weights[0][2] == 0.75);
  REQUIRE(verify_order(s.method(0), 4) == 3);
}

TEST_CASE("DP(7,5) leading weights and validated orders") {
  const auto& s = find_embedded_set("DP(7,5)");
  REQUIRE(s.weights[0][0] == Catch::Approx(35.0 / 384).margin(1e-17));
  REQUIRE(s.weights[0][2] == Catch::Approx(500.0 / 1113).margin(1e-16));
  REQUIRE(s.weights[0][3] == Catch::Approx(125.0 / 192).margin(1e-16));
  REQUIRE(s.weights[0][4] == Catch::Approx(-2187.0 / 6784).margin(1e-16));
  REQUIRE(s.weights[0][5] == Catch::Approx(11.0 / 84).margin(1e-16));
  REQUIRE(s.weights[0][6] == 0.0);
  REQUIRE(verify_order(s.method(0), 5) == 5);
  REQUIRE(verify_order(s.method(1), 5) == 4);
  // the published third weight vector satisfies the conditions only through
  // order 3 (all four order-4 residuals are ~1e-2); catalogued accordingly
  REQUIRE(verify_order(s.method(2), 5) == 3);
  REQUIRE(s.orders == std::vector<int>{5, 4, 3});
}

TEST_CASE("verify_order examples") {
  const auto& ssp22 = find_embedded_set("SSPRK(2,2)");
  REQUIRE(verify_order(ssp22.method(0), 5) == 2);
  // b2' c = 2/3 != 1/2 fails the order-2 condition
  REQUIRE(ssp22.weights[1].dot(ssp22.c) == Catch::Approx(2.0 / 3).margin(1e-15));
  REQUIRE(verify_order(ssp22.method(1), 5) == 1);
  const auto& rk44 = find_embedded_set("RK(4,4)");
  REQUIRE(verify_order(rk44.method(0), 5) == 4);
  REQUIRE(verify_order(rk44.method(1), 5) == 2);
}

TEST_CASE("rooted tree counts through order 5") {
  REQUIRE(rooted_trees_of_order(1).size() == 1);
  REQUIRE(rooted_trees_of_order(2).size() == 1);
  REQUIRE(rooted_trees_of_order(3).size() == 2);
  REQUIRE(rooted_trees_of_order(4).size() == 4);
  REQUIRE(rooted_trees_of_order(5).size() == 9);
}

TEST_CASE("check_embedded_set reports ranks and orders") {
  SECTION("SSPRK(3,3): three second-order weights are structurally dependent") {
    const auto& s = find_embedded_set("SSPRK(3,3)");
    auto v = check_embedded_set(s);
    // every order-2 weight vector for this (A, c) satisfies b1 = b2, so the
    // three-vector stack has rank exactly 2
    REQUIRE(v.weight_rank == 2);
    REQUIRE(v.verified_orders == std::vector<int>{3, 2, 2});
    REQUIRE(v.abscissae_residual <= 1e-14);
    REQUIRE(v.pass);  // rank matches the declared rank of the set
  }
  SECTION("duplicated weight rows are reported, not fatal") {
    auto s = find_embedded_set("SSPRK(2,2)");
    s.weights[1] = s.weights[0];
    s.orders[1] = 2;
    s.declared_rank = -1;
    auto v = check_embedded_set(s);
    REQUIRE(v.weight_rank == 1);
    REQUIRE_FALSE(v.pass);
    REQUIRE_FALSE(v.failures.empty());
  }
  SECTION("full Fehlberg family has orders (5,4,3,3)") {
    const auto& f65 = find_embedded_set("Fehlberg(6,5)");
    const auto& f64 = find_embedded_set("Fehlberg(6,4)");
    EmbeddedSet family = f65;
    family.weights.push_back(f64.weights[1]);
    family.weights.push_back(f64.weights[2]);
    family.orders = {5, 4, 3, 3};
    auto v = check_embedded_set(family);
    REQUIRE(v.verified_orders == std::vector<int>{5, 4, 3, 3});
    // four weights over the one-dimensional order-3 residual family stack up
    // rank-deficient, like the SSPRK(3,3) case
    REQUIRE(v.weight_rank >= 3);
  }
}

TEST_CASE("catalogue audit: abscissae, stated orders, weight ranks") {
  for (const auto& [name, method] : builtin_catalogue()) {
    if (std::holds_alternative<EmbeddedSet>(method)) {
      const auto& s = std::get<EmbeddedSet>(method);
      auto v = check_embedded_set(s);
      INFO(name);
      REQUIRE(v.abscissae_residual <= 1e-14);
      REQUIRE(v.pass);
      if (s.expected_rank() == s.count()) REQUIRE(v.sigma_min > 1e-10);
      for (int k = 0; k < s.count(); ++k) REQUIRE(v.verified_orders[k] >= s.orders[k]);
    } else {
      const auto& p = std::get<ArkPair>(method);
      INFO(name);
      REQUIRE(p.explicit_part().abscissae_residual() <= 1e-14);
      REQUIRE(p.implicit_part().abscissae_residual() <= 1e-14);
      for (const auto& w : p.weights) REQUIRE(std::abs(w.sum() - 1.0) <= 1e-14);
      // singly diagonally implicit: equal diagonal from stage 2 on
      for (int i = 1; i < p.stage_count(); ++i)
        REQUIRE(p.A_implicit(i, i) == Catch::Approx(p.esdirk_diagonal()).margin(1e-16));
      // both parts meet the stated order with the shared weights
      for (int k = 0; k < p.count(); ++k) {
        ButcherTableau te{p.name, p.A_explicit, p.weights[k], p.c, p.orders[k]};
        ButcherTableau ti{p.name, p.A_implicit, p.weights[k], p.c, p.orders[k]};
        REQUIRE(verify_order(te, 5) >= p.orders[k]);
        REQUIRE(verify_order(ti, 5) >= p.orders[k]);
      }
    }
  }
}

TEST_CASE("method files round-trip through the text format") {
  for (const auto& [name, method] : builtin_catalogue()) {
    std::ostringstream os;
    write_method(os, method);
    Method back = parse_method(os.str());
    if (std::holds_alternative<EmbeddedSet>(method)) {
      const auto& a = std::get<EmbeddedSet>(method);
      const auto& b = std::get<EmbeddedSet>(back);
      REQUIRE(a.A == b.A);
      REQUIRE(a.c == b.c);
      REQUIRE(a.weights.size() == b.weights.size());
      for (size_t k = 0; k < a.weights.size(); ++k) REQUIRE(a.weights[k] == b.weights[k]);
      REQUIRE(a.orders == b.orders);
      REQUIRE(a.expected_rank() == b.expected_rank());
    } else {
      const auto& a = std::get<ArkPair>(method);
      const auto& b = std::get<ArkPair>(back);
      REQUIRE(a.A_explicit == b.A_explicit);
      REQUIRE(a.A_implicit == b.A_implicit);
      REQUIRE(a.c == b.c);
      for (size_t k = 0; k < a.weights.size(); ++k) REQUIRE(a.weights[k] == b.weights[k]);
    }
  }
}

TEST_CASE("shipped coefficient files agree with the builtin catalogue") {
  std::map<std::string, std::string> files = {
      {"SSPRK(2,2)", "ssprk22.txt"},   {"SSPRK(3,3)", "ssprk33.txt"},
      {"Heun(3,3)", "heun33.txt"},     {"RK(4,4)", "rk44.txt"},
      {"Fehlberg(6,4)", "fehlberg64.txt"}, {"Fehlberg(6,5)", "fehlberg65.txt"},
      {"DP(7,5)", "dp75.txt"},         {"ARK3(2)4L[2]SA", "ark324l2sa.txt"},
      {"ARK4(3)6L[2]SA", "ark436l2sa.txt"}};
  for (const auto& [name, fname] : files) {
    std::ifstream in(std::string(MRRK_DATA_DIR) + "/tableaux/" + fname);
    REQUIRE(in.good());
    Method m = read_method(in);
    const Method& ref = builtin_catalogue().at(name);
    if (std::holds_alternative<EmbeddedSet>(ref)) {
      REQUIRE(std::get<EmbeddedSet>(m).A == std::get<EmbeddedSet>(ref).A);
      REQUIRE(std::get<EmbeddedSet>(m).weights == std::get<EmbeddedSet>(ref).weights);
    } else {
      REQUIRE(std::get<ArkPair>(m).A_explicit == std::get<ArkPair>(ref).A_explicit);
      REQUIRE(std::get<ArkPair>(m).A_implicit == std::get<ArkPair>(ref).A_implicit);
      REQUIRE(std::get<ArkPair>(m).weights == std::get<ArkPair>(ref).weights);
    }
  }
}

TEST_CASE("coefficient token parsing") {
  REQUIRE(parse_coefficient("1/2") == 0.5);
  REQUIRE(parse_coefficient("-2187/6784") == Catch::Approx(-2187.0 / 6784).margin(1e-18));
  REQUIRE(parse_coefficient("0.291485418878409") == 0.291485418878409);
  REQUIRE_THROWS(parse_coefficient("1/0"));
  REQUIRE_THROWS(parse_coefficient("abc"));
}
