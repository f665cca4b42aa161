#include <doctest.h>

#include "charvar/count.hpp"
#include "charvar/error.hpp"
#include "support.hpp"

using namespace charvar;
using namespace charvar::testing;

namespace {

Polynomial gl2_generic(int g) {
  return shifted(-1, 4 * g - 1) * qpow(2 * g - 1) * (shifted(1, 2 * g) - Polynomial(1));
}

// S_1 ... S_{n-2} with symbols, S_{n-1} their inverse product
ProblemSpec torus_spec(std::size_t d, int g, int n) {
  ProblemSpec s;
  s.rd = torus(d);
  s.g = g;
  s.n = n;
  s.m = n - 1;
  std::vector<std::string> symbols;
  for (int i = 0; i + 2 < n; ++i)
    for (std::size_t j = 0; j < d; ++j) symbols.push_back("x" + std::to_string(i) + "_" + std::to_string(j));
  s.eigenvalues = EigenvalueDatum::parse(symbols, {});
  const std::size_t t = symbols.size();
  std::vector<Word> last(d, Word(t, 0));
  for (int i = 0; i + 2 < n; ++i) {
    std::vector<Word> c(d, Word(t, 0));
    for (std::size_t j = 0; j < d; ++j) {
      c[j][static_cast<std::size_t>(i) * d + j] = 1;
      last[j][static_cast<std::size_t>(i) * d + j] = -1;
    }
    s.classes.emplace_back(c);
  }
  s.classes.emplace_back(last);
  return s;
}

// (1/|W|) sum_Psi |W(Psi)|^{1-m} P_Psi^e sum over all of W^m of alpha_{Psi, w.S}
RationalPoly naive_reduced(const ProblemSpec& s) {
  const WeylGroup W = enumerate_weyl(s.rd);
  const SubsystemPoset P = enumerate_closed_subsystems(s.rd);
  const auto e = static_cast<unsigned>(2 * s.g + s.n - 2);
  std::vector<std::size_t> idx(static_cast<std::size_t>(s.m), 0);
  std::vector<Polynomial> sums(P.size());
  while (true) {
    std::vector<SmallMatrix> ws;
    for (auto i : idx) ws.push_back(W.elements[i]);
    const auto S = weyl_translate(ws, s.classes);
    for (std::size_t k = 0; k < P.size(); ++k) sums[k] += alpha(P, k, s.eigenvalues, S);
    std::size_t j = 0;
    while (j < idx.size() && ++idx[j] == W.order()) idx[j++] = 0;
    if (j == idx.size()) break;
  }
  RationalPoly total;
  for (std::size_t k = 0; k < P.size(); ++k) {
    const auto& node = P.node(k);
    total += RationalPoly(Rational(1)) / RationalPoly(Rational(node.weyl_order)).pow(s.m - 1) *
             RationalPoly(node.poincare.pow(e) * sums[k]);
  }
  return total / RationalPoly(Rational(static_cast<long>(W.order())));
}

}  // namespace

TEST_SUITE("count") {
  TEST_CASE("orbit regrouping agrees with the naive sum") {
    for (const char* name : {"gl2_g1", "gl3_generic", "gl3_nongeneric", "gl2_two_semisimple_special", "gl3_0_4_2",
                             "gl3_0_4_3", "pgl2_rigid"}) {
      CAPTURE(name);
      const auto c = load(name);
      CHECK(reduced_sum(c.spec) == naive_reduced(c.spec));
    }
  }

  TEST_CASE("GL2 generic family") {
    const auto c = load("gl2_g1");
    for (int g : {1, 2}) CHECK(count_of(c, g, 2, 1) == gl2_generic(g));
  }

  TEST_CASE("GL3 generic and non-generic at g = 1") {
    const Polynomial pre = qpow(4) * shifted(-1, 4);
    const Polynomial A = (Q() * Q() + Q() + Polynomial(1)).pow(2) * shifted(1, 2);
    CHECK(count_of(load("gl3_generic"), 1, 2, 1) == pre * (A - Polynomial(3) * shifted(1, 2) + Polynomial(2)));
    CHECK(count_of(load("gl3_nongeneric"), 1, 2, 1) ==
          pre * (A + shifted(1, 2) * shifted(-4, 1) - shifted(-3, 1)));
  }

  TEST_CASE("rigid cases") {
    CHECK(count_of(load("gl2_two_semisimple"), 0, 3, 2) == Polynomial(1));
    CHECK(count_of(load("gl2_two_semisimple_special"), 0, 3, 2) == Polynomial(2));
    CHECK(count_of(load("gl2_one_semisimple"), 0, 3, 1) == Polynomial(1));
    const auto pgl = load("pgl2_rigid");
    const CountReport r = count_polynomial(pgl.spec);
    CHECK(r.polynomial == Polynomial(2));
    CHECK(r.expected_dimension == 0);
    CHECK(center_dual_quotient(pgl.spec.rd).torsion_order == 2);
  }

  TEST_CASE("torus") {
    for (std::size_t d : {1u, 2u, 3u})
      for (int g : {0, 1, 2})
        for (int n : {2, 3}) {
          CAPTURE(d);
          CAPTURE(g);
          CAPTURE(n);
          CHECK(count_polynomial(torus_spec(d, g, n)).polynomial == shifted(-1, 2 * g * static_cast<long>(d)));
        }
  }

  TEST_CASE("dimension formula") {
    const auto c = load("gl3_0_4_3");
    const CountReport r = count_polynomial(c.spec);
    CHECK(r.dimension == r.expected_dimension);
    CHECK(r.dimension == 8);
    CHECK(r.topology.euler == 114);
  }

  TEST_CASE("hypotheses") {
    auto c = load("gl2_g1");
    c.spec.m = 2;
    CHECK_THROWS_AS(count_polynomial(c.spec), Error);
    const auto sl2 = load("sl2");
    try {
      validate(sl2.spec);
      FAIL("expected a hypothesis error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Hypothesis);
      CHECK(e.code() == "E_CONNECTED_CENTER");
    }
    const Hypotheses h = validate(load("gl2_g1").spec);
    CHECK(h.dual_modulus == 1);
    CHECK(h.product_in_commutator);
  }

  TEST_CASE("empty when the product misses the commutator") {
    auto c = load("gl2_g1");
    c.spec.eigenvalues = EigenvalueDatum::parse({"a", "b"}, {});
    c.spec.classes = {parse_torus_element(c.spec.rd, c.spec.eigenvalues, "diag(a, b)")};
    c.spec.g = 0;
    c.spec.n = 2;
    const CountReport r = count_polynomial(c.spec);
    CHECK(r.empty);
    CHECK(r.polynomial.is_zero());
    CHECK_FALSE(validate(c.spec).product_in_commutator);
    CHECK(count_polynomial(load("gl2_obstructed").spec).empty);
  }
}
