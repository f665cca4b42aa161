#include <doctest.h>

#include <algorithm>

#include "charvar/error.hpp"
#include "charvar/finite_field.hpp"
#include "charvar/oracle.hpp"
#include "charvar/rootdata.hpp"
#include "support.hpp"

using namespace charvar;
using charvar::testing::Q;
using charvar::testing::shifted;

namespace {

struct TypeCase {
  char family;
  std::size_t rank;
  std::size_t roots;
  long weyl;
};

const std::vector<TypeCase> kTypes = {
    {'A', 1, 2, 2},    {'A', 2, 6, 6},   {'A', 3, 12, 24},  {'A', 4, 20, 120}, {'B', 2, 8, 8},
    {'B', 3, 18, 48},  {'B', 4, 32, 384}, {'C', 3, 18, 48}, {'C', 4, 32, 384}, {'D', 4, 24, 192},
    {'G', 2, 12, 12},  {'F', 4, 48, 1152},
};

void check_axioms(const RootDatum& rd) {
  for (std::size_t i = 0; i < rd.size(); ++i) {
    CHECK(pairing(rd.root(i), rd.coroot(i)) == 2);
    // s_i permutes roots and coroots
    for (std::size_t j = 0; j < rd.size(); ++j) {
      const long long c = pairing(rd.root(j), rd.coroot(i));
      Vec r = rd.root(j);
      for (std::size_t k = 0; k < r.size(); ++k) r[k] -= c * rd.root(i)[k];
      CHECK(rd.root_index(r) >= 0);
      const long long d = pairing(rd.root(i), rd.coroot(j));
      Vec v = rd.coroot(j);
      for (std::size_t k = 0; k < v.size(); ++k) v[k] -= d * rd.coroot(i)[k];
      CHECK(rd.coroot_index(v) >= 0);
    }
    CHECK(rd.is_positive(i) != rd.is_positive(static_cast<std::size_t>(rd.negative(i))));
  }
  CHECK(rd.positive_count() * 2 == rd.size());
}

Integer brute_gl_order(unsigned n, unsigned q) {
  const FiniteField F = FiniteField::create(q);
  std::size_t total = 1;
  for (unsigned i = 0; i < n * n; ++i) total *= q;
  Integer count = 0;
  FqMatrix a(n * n);
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t c = code;
    for (auto& x : a) {
      x = static_cast<unsigned>(c % q);
      c /= q;
    }
    if (fq_determinant(F, n, a) != 0) ++count;
  }
  return count;
}

}  // namespace

TEST_SUITE("rootdata") {
  TEST_CASE("axioms and Weyl orders for irreducible types") {
    for (const auto& t : kTypes) {
      for (bool sc : {true, false}) {
        CAPTURE(t.family);
        CAPTURE(t.rank);
        CAPTURE(sc);
        const RootDatum rd = cartan_type(t.family, t.rank, sc);
        CHECK(rd.size() == t.roots);
        CHECK(rd.semisimple_rank() == t.rank);
        check_axioms(rd);
        CHECK(enumerate_weyl(rd).order() == static_cast<std::size_t>(t.weyl));
        CHECK(weyl_order_from_type(decompose(rd, rd.all(), Side::Roots)) == t.weyl);
        CHECK(poincare_polynomial(rd, rd.all()).evaluate(1) == t.weyl);
        CHECK(rd.dual().dual() == rd);
      }
    }
  }

  TEST_CASE("descriptors") {
    CHECK(build_root_datum("GL(3)").size() == 6);
    CHECK(build_root_datum("GL(3)").rank() == 3);
    CHECK(build_root_datum("T(4)").size() == 0);
    CHECK(build_root_datum("SO(5)").size() == 8);
    CHECK(build_root_datum("GL(2)xGL(1)").rank() == 3);
    CHECK_THROWS_AS(build_root_datum("XYZ(3)"), Error);
  }

  TEST_CASE("invalid data are rejected") {
    // pairing of a root with its coroot must be 2
    CHECK_THROWS_AS(RootDatum::create(1, {{1}, {-1}}, {{1}, {-1}}, "bad"), Error);
    CHECK_NOTHROW(RootDatum::create(1, {{2}, {-2}}, {{1}, {-1}}, "SL(2)"));
  }

  TEST_CASE("connected center and dual quotient") {
    CHECK(connected_center_check(general_linear(3)));
    CHECK(connected_center_check(build_root_datum("PGL(2)")));
    CHECK_FALSE(connected_center_check(build_root_datum("SL(2)")));
    CHECK(center_dual_quotient(build_root_datum("PGL(2)")).torsion_order == 2);
    CHECK(center_dual_quotient(general_linear(4)).torsion_order == 1);
  }

  TEST_CASE("admissible primes") {
    CHECK(admissible_primes(general_linear(3)).excluded == std::set<long long>{2, 3});
    CHECK(admissible_primes(cartan_type('G', 2, true)).excluded == std::set<long long>{2, 3});
    CHECK(admissible_primes(build_root_datum("E8")).excluded == std::set<long long>{2, 3, 5});
    CHECK(admissible_primes(general_linear(2)).admits(5));
  }

  TEST_CASE("order polynomials of GL_n match brute force") {
    for (unsigned n : {2u, 3u}) {
      const OrderPolynomials op = order_polynomials(general_linear(n));
      for (unsigned q : {2u, 3u}) {
        CAPTURE(n);
        CAPTURE(q);
        CHECK(op.G.evaluate(q) == Rational(brute_gl_order(n, q)));
      }
      CHECK(op.T == shifted(-1, n));
      CHECK(op.Z == shifted(-1, 1));
    }
    const OrderPolynomials g2 = order_polynomials(general_linear(2));
    CHECK(g2.B == Q() * shifted(-1, 2));
  }

  TEST_CASE("modulus") {
    for (std::size_t n = 1; n <= 4; ++n) CHECK(modulus(general_linear(n).dual()) == 1);
    CHECK(modulus(cartan_type('G', 2, true)) == 6);
    CHECK(modulus(cartan_type('C', 2, true)) == 2);
    for (std::size_t n = 1; n <= 4; ++n) CHECK(modulus(cartan_type('A', n, true)) == static_cast<long>(n + 1));
    CHECK(modulus(cartan_type('F', 4, true)) == 12);
  }
}
