#include <doctest.h>

#include "charvar/error.hpp"
#include "charvar/finite_field.hpp"
#include "charvar/oracle.hpp"
#include "support.hpp"

using namespace charvar;
using namespace charvar::testing;

TEST_SUITE("oracle") {
  TEST_CASE("field axioms") {
    for (unsigned q : {2u, 3u, 4u, 5u, 8u, 9u, 25u}) {
      CAPTURE(q);
      const FiniteField F = FiniteField::create(q);
      CHECK(F.q() == q);
      for (unsigned a = 0; a < q; ++a) {
        CHECK(F.add(a, F.neg(a)) == 0);
        if (a) {
          CHECK(F.mul(a, F.inv(a)) == 1);
          CHECK(F.exp(F.log(a)) == a);
          CHECK(F.pow(a, q - 1) == 1);
        }
        for (unsigned b = 0; b < q; ++b) {
          CHECK(F.mul(a, b) == F.mul(b, a));
          for (unsigned c = 0; c < q; c += 3) CHECK(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
        }
      }
      unsigned order = 1, x = F.generator();
      while (x != 1) {
        x = F.mul(x, F.generator());
        ++order;
      }
      CHECK(order == q - 1);
    }
    CHECK_THROWS_AS(FiniteField::create(6), Error);
  }

  TEST_CASE("expressions") {
    const FiniteField F = FiniteField::create(7);
    const std::map<std::string, unsigned> v{{"a", 3}, {"t", 2}};
    CHECK(evaluate_expression(F, "a*t + 1", v) == 0);
    CHECK(evaluate_expression(F, "1/a", v) == 5);
    CHECK(evaluate_expression(F, "a^-1 - 1/a", v) == 0);
    CHECK(evaluate_expression(F, "-(t+a)*(t+1)", v) == 6);
    CHECK_THROWS_AS(evaluate_expression(F, "1/(a-3)", v), Error);
    CHECK_THROWS_AS(evaluate_expression(F, "a*", v), Error);
  }

  TEST_CASE("matrices") {
    const FiniteField F = FiniteField::create(5);
    const FqMatrix a{1, 2, 3, 4};
    CHECK(fq_determinant(F, 2, a) == 3);  // 4 - 6 = -2
    CHECK(fq_multiply(F, 2, a, fq_inverse(F, 2, a)) == fq_identity(2));
    CHECK(fq_is_scalar(2, FqMatrix{3, 0, 0, 3}));
  }

  TEST_CASE("group models and classes") {
    const auto G = FiniteGroupModel::create(GroupKind::GL2, 5);
    CHECK(G.order() == 480);
    const auto P = FiniteGroupModel::create(GroupKind::PGL2, 5);
    CHECK(P.order() == 120);
    const auto U = unipotent_class(G);
    CHECK(U.size() == U.expected_size);
    CHECK(U.size() == 24);
    const auto S = semisimple_class(G, {2, 3});
    CHECK(S.size() == 30);
    CHECK(S.size() == S.expected_size);
    for (std::size_t i = 0; i < 20; ++i) CHECK(G.mul(i, G.inverse(i)) == G.identity());
  }

  TEST_CASE("brute force matches the formula") {
    for (const char* name : {"gl2_g1", "gl2_two_semisimple", "gl2_two_semisimple_special", "gl2_one_semisimple"}) {
      CAPTURE(name);
      const auto c = load(name);
      OracleOptions o;
      o.q = 5;
      o.seed = c.oracle.seed;
      const OracleResult r = run_oracle(c.spec, o);
      CHECK(r.faithful);
      CHECK(r.class_sizes_ok);
      CHECK(r.match);
      CHECK(Rational(r.brute.count) == r.formula);
    }
  }

  TEST_CASE("non-faithful explicit specialization is reported") {
    const auto c = load("gl2_g1");
    const FiniteField F = FiniteField::create(5);
    const auto s = check_specialization(c.spec, F, {{"a", 1}, {"b", 1}});
    CHECK(s.relations_hold);
    CHECK_FALSE(s.strongly_regular);
  }

  TEST_CASE("witnesses") {
    const auto c = load("gl2_two_semisimple_special");
    std::vector<std::vector<FqMatrix>> found;
    for (const auto& w : c.oracle.witnesses) {
      WitnessOptions o;
      o.q = 7;
      o.seed = c.oracle.seed;
      const WitnessResult r = verify_witness(c.spec, w, o);
      CHECK(r.ok);
      CHECK(r.relation_ok);
      found.push_back(r.values);
    }
    REQUIRE(found.size() == 2);
    const auto G = FiniteGroupModel::create(GroupKind::GL2, 7);
    CHECK_FALSE(simultaneously_conjugate(G, found[0], found[1]).has_value());
    CHECK(simultaneously_conjugate(G, found[0], found[0]).has_value());
  }

  TEST_CASE("PGL2 rigid witnesses are distinct") {
    const auto c = load("pgl2_rigid");
    std::vector<std::vector<FqMatrix>> found;
    for (const auto& w : c.oracle.witnesses) {
      WitnessOptions o;
      o.q = 11;
      o.seed = c.oracle.seed;
      const WitnessResult r = verify_witness(c.spec, w, o);
      CHECK(r.ok);
      found.push_back(r.values);
    }
    REQUIRE(found.size() == 2);
    const auto G = FiniteGroupModel::create(GroupKind::PGL2, 11);
    CHECK_FALSE(simultaneously_conjugate(G, found[0], found[1]).has_value());
  }

  TEST_CASE("oracle rejects unsupported input") {
    auto c = load("gl2_g1");
    OracleOptions o;
    o.q = 4;
    CHECK_THROWS_AS(run_oracle(c.spec, o), Error);
    CHECK_THROWS_AS(group_kind_from_label("SO(5)"), Error);
  }
}
