#include <doctest.h>

#include "charvar/charsum.hpp"
#include "charvar/error.hpp"
#include "support.hpp"

using namespace charvar;
using charvar::testing::shifted;

namespace {

SymbolicTorusElement trivial(const RootDatum& rd, const EigenvalueDatum& eig) {
  return SymbolicTorusElement(rd.rank(), eig.symbol_count());
}

}  // namespace

TEST_SUITE("charsum") {
  TEST_CASE("eigenvalue words") {
    const auto eig = EigenvalueDatum::parse({"a", "b", "t"}, {"a*b = t^2"});
    CHECK(eig.parse_word("a*b*t^-2") == Word{1, 1, -2});
    CHECK(eig.group().is_identity(eig.parse_word("a*b*t^-2")));
    CHECK(eig.format_word({2, 0, -1}) == "a^2*t^-1");
    CHECK_THROWS_AS(EigenvalueDatum::parse({"a", "a"}, {}), Error);
    CHECK_THROWS_AS(eig.parse_word("a*z"), Error);
    const auto forced = EigenvalueDatum::parse({"a", "b"}, {"a = 1"});
    CHECK(forced.warnings().size() == 1);
  }

  TEST_CASE("character evaluation on PGL2") {
    const RootDatum rd = build_root_datum("PGL(2)");
    const auto eig = EigenvalueDatum::parse({"t"}, {});
    const Vec alpha_root = rd.root(static_cast<std::size_t>(rd.positive_indices()[0]));
    CHECK(evaluate_character(alpha_root, parse_torus_element(rd, eig, "coords(t)")) == Word{1});
    // alpha-check(t) has coordinate t^2
    CHECK(evaluate_character(alpha_root, parse_torus_element(rd, eig, "coords(t^2)")) == Word{2});
  }

  TEST_CASE("strong regularity") {
    const RootDatum rd = general_linear(2);
    const WeylGroup W = enumerate_weyl(rd);
    const auto eig = EigenvalueDatum::parse({"a", "b"}, {"a*b = 1"});
    CHECK(strongly_regular(rd, W, eig, parse_torus_element(rd, eig, "diag(a, b)")));
    CHECK_FALSE(strongly_regular(rd, W, eig, parse_torus_element(rd, eig, "diag(a, a)")));
    const auto sq = EigenvalueDatum::parse({"a"}, {"a^2 = 1"});
    // diag(a, a^-1) is W-fixed when a^2 = 1
    CHECK_FALSE(strongly_regular(rd, W, sq, parse_torus_element(rd, sq, "diag(a, a^-1)")));
  }

  TEST_CASE("pontryagin evaluation of Delta") {
    const RootDatum pgl = build_root_datum("PGL(2)");
    const auto eig = EigenvalueDatum::parse({"a", "b", "t"}, {"a*b = t^2"});
    const RootSet all = pgl.all();
    // X-check/<Phi-check> = Z/2: a coordinate passes iff it is a square
    CHECK(delta(pgl, all, eig, parse_torus_element(pgl, eig, "diag(a*b, 1)")) == Polynomial(2));
    CHECK(delta(pgl, all, eig, parse_torus_element(pgl, eig, "diag(a, 1)")).is_zero());
    CHECK(delta(pgl, pgl.none(), eig, trivial(pgl, eig)) == shifted(-1, 1));
    const RootDatum gl = general_linear(2);
    CHECK(delta(gl, gl.all(), eig, parse_torus_element(gl, eig, "diag(a, b)")).is_zero());
    CHECK(delta(gl, gl.all(), eig, parse_torus_element(gl, eig, "diag(a, a^-1)")) == shifted(-1, 1));
  }

  TEST_CASE("alpha at the identity for GL_n") {
    for (std::size_t n = 1; n <= 4; ++n) {
      const RootDatum rd = general_linear(n);
      const SubsystemPoset P = enumerate_closed_subsystems(rd);
      const EigenvalueDatum eig;
      Polynomial expected(1);
      for (std::size_t i = 1; i <= n; ++i) expected *= shifted(-static_cast<long>(i), 1);
      CAPTURE(n);
      CHECK(alpha(P, P.bottom(), eig, trivial(rd, eig)) == expected);
    }
  }

  TEST_CASE("alpha telescopes to Delta at the bottom") {
    const auto eig = EigenvalueDatum::parse({"a", "b", "c", "t"}, {"a*b*c = t^2"});
    for (const char* g : {"GL(3)", "SO(5)", "G2(sc)", "PGL(2)"}) {
      CAPTURE(g);
      const RootDatum rd = build_root_datum(g);
      const SubsystemPoset P = enumerate_closed_subsystems(rd);
      std::vector<SymbolicTorusElement> samples{trivial(rd, eig)};
      SymbolicTorusElement s(rd.rank(), eig.symbol_count());
      std::vector<Word> coords = s.coords();
      for (std::size_t j = 0; j < coords.size(); ++j) coords[j][j % 4] = static_cast<long long>(j + 1);
      samples.emplace_back(coords);
      for (const auto& S : samples) {
        Polynomial total;
        for (std::size_t i = 0; i < P.size(); ++i) total += alpha(P, i, eig, S);
        CHECK(total == delta(rd, P.node(P.bottom()).roots, eig, S));
      }
    }
  }

  TEST_CASE("Weyl translates") {
    const RootDatum rd = general_linear(2);
    const WeylGroup W = enumerate_weyl(rd);
    const auto eig = EigenvalueDatum::parse({"a", "b"}, {});
    const auto S = parse_torus_element(rd, eig, "diag(a, b)");
    std::vector<SymbolicTorusElement> seen;
    for (const auto& w : W.elements) seen.push_back(S.translated(w));
    CHECK(seen.size() == 2);
    CHECK(seen[0] != seen[1]);
    CHECK((seen[0] * seen[1]) == parse_torus_element(rd, eig, "diag(a*b, a*b)"));
  }
}
