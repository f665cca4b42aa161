// One PASS/FAIL line per acceptance criterion.
#include <chrono>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "charvar/charsum.hpp"
#include "charvar/count.hpp"
#include "charvar/error.hpp"
#include "charvar/oracle.hpp"
#include "charvar/subsystems.hpp"
#include "support.hpp"

using namespace charvar;
using namespace charvar::testing;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

Polynomial ipow(long base, long e) { return Polynomial(Rational(base)).pow(static_cast<unsigned>(e)); }
Polynomial geometric(unsigned top) {  // 1 + q + ... + q^top
  Polynomial p;
  for (unsigned i = 0; i <= top; ++i) p += qpow(i);
  return p;
}

void c1(Outcome& o) {
  const auto c = load("gl2_g1");
  for (int g : {1, 2, 3}) {
    const Polynomial want = shifted(-1, 4 * g - 1) * qpow(2 * g - 1) * (shifted(1, 2 * g) - Polynomial(1));
    o.require(count_of(c, g, 2, 1) == want, "g=" + std::to_string(g));
  }
  o.detail << "GL2 ab=1, g in {1,2,3}";
}

void c2(Outcome& o) {
  const auto gen = load("gl3_generic"), non = load("gl3_nongeneric");
  for (int g : {1, 2}) {
    const Polynomial pre = qpow(6 * g - 2) * shifted(-1, 6 * g - 2);
    const Polynomial A = geometric(2).pow(2 * g) * shifted(1, 2 * g);
    const Polynomial B = shifted(1, 2 * g);
    o.require(count_of(gen, g, 2, 1) == pre * (A - Polynomial(3) * B + Polynomial(2)), "generic g=" + std::to_string(g));
    o.require(count_of(non, g, 2, 1) == pre * (A + B * shifted(-4, 1) - shifted(-3, 1)),
              "non-generic g=" + std::to_string(g));
  }
  o.detail << "GL3 generic and ab=1, g in {1,2}";
}

void c3(Outcome& o) {
  const Polynomial a = count_of(load("gl2_two_semisimple"), 0, 3, 2);
  const Polynomial b = count_of(load("gl2_two_semisimple_special"), 0, 3, 2);
  const Polynomial c = count_of(load("gl2_one_semisimple"), 0, 3, 1);
  o.require(a == Polynomial(1), "generic");
  o.require(b == Polynomial(2), "non-generic");
  o.require(c == Polynomial(1), "one semisimple");
  o.detail << "counts " << a.to_string() << ", " << b.to_string() << ", " << c.to_string();
}

void c4(Outcome& o) {
  const auto c = load("pgl2_rigid");
  const CountReport r = count_polynomial(c.spec);
  const Integer tor = center_dual_quotient(c.spec.rd).torsion_order;
  o.require(r.polynomial == Polynomial(2), "count");
  o.require(r.expected_dimension == 0, "expected dimension");
  o.require(r.polynomial.leading() == Rational(tor), "leading coefficient vs torsion");
  o.detail << "count " << r.polynomial.to_string() << ", dim " << r.expected_dimension << ", Tor order " << tor;
}

struct RowWant {
  std::string label;
  std::size_t orbit;
  long torsion, rank, delta, alpha, weyl;
  Polynomial P;
};

void check_rows(Outcome& o, const std::string& name, const std::vector<TableRow>& rows, const std::vector<RowWant>& want) {
  o.require(rows.size() == want.size(), name + " row count");
  for (const auto& w : want) {
    auto it = std::find_if(rows.begin(), rows.end(), [&](const TableRow& r) { return r.label == w.label; });
    if (it == rows.end()) {
      o.require(false, name + " missing " + w.label);
      continue;
    }
    const std::string tag = name + " " + w.label;
    o.require(it->orbit_size == w.orbit, tag + " orbit");
    o.require(it->quotient.torsion_order == w.torsion, tag + " torsion");
    o.require(it->quotient.free_rank == static_cast<std::size_t>(w.rank), tag + " rank");
    o.require(it->delta == RationalPoly(w.delta), tag + " delta");
    o.require(it->alpha == RationalPoly(w.alpha), tag + " alpha");
    o.require(it->weyl_order == w.weyl, tag + " |W|");
    o.require(it->poincare == w.P, tag + " P");
  }
}

std::vector<std::size_t> orbit_nodes(const SubsystemPoset& P, const std::string& label) {
  auto o = P.orbit_by_label(label);
  return o ? P.orbits()[*o] : std::vector<std::size_t>{};
}

void c5(Outcome& o) {
  const Polynomial q1 = shifted(1, 1);
  const std::vector<std::array<int, 3>> gnm = {{1, 2, 1}, {0, 4, 2}, {0, 4, 3}};
  {
    const auto c = load("so5_override");
    const SubsystemPoset P = enumerate_closed_subsystems(c.spec.rd);
    o.require(P.size() == 7, "SO5 node count");
    const auto top = P.top(), bot = P.bottom();
    const auto AA = orbit_nodes(P, "A1xA1");
    const auto Ain = orbit_nodes(P, "A1[long]"), Aout = orbit_nodes(P, "A1[short]");
    o.require(AA.size() == 1 && Ain.size() == 2 && Aout.size() == 2, "SO5 orbits");
    if (AA.size() == 1) {
      const auto aa = AA[0];
      o.require(P.mobius(aa, top) == -1, "SO5 mu(A1xA1,C2)");
      o.require(P.mobius(bot, top) == 2, "SO5 mu(0,C2)");
      o.require(P.mobius(bot, aa) == 1, "SO5 mu(0,A1xA1)");
      for (auto a : Ain) {
        o.require(P.leq(a, aa), "SO5 A1[long] inside A1xA1");
        o.require(P.mobius(a, top) == 0, "SO5 mu(A1 in A1xA1,C2)");
        o.require(P.mobius(a, aa) == -1, "SO5 mu(A1,A1xA1)");
        o.require(P.mobius(bot, a) == -1, "SO5 mu(0,A1)");
      }
      for (auto a : Aout) {
        o.require(!P.leq(a, aa), "SO5 A1[short] outside A1xA1");
        o.require(P.mobius(a, top) == -1, "SO5 mu(A1,C2)");
        o.require(P.mobius(bot, a) == -1, "SO5 mu(0,A1)");
      }
    }
    check_rows(o, "SO5", diagnostic_table(c.spec),
               {{"C2", 1, 2, 0, 2, 2, 8, q1 * geometric(3)},
                {"A1xA1", 1, 4, 0, 4, 2, 4, q1 * q1},
                {"A1[long]", 2, 2, 1, 0, -4, 2, q1},
                {"A1[short]", 2, 1, 1, 0, -2, 2, q1},
                {"empty", 1, 1, 2, 0, 8, 1, Polynomial(1)}});
    for (auto [g, n, m] : gnm) {
      ProblemSpec s = c.spec;
      s.g = g, s.n = n, s.m = m;
      const int e = 2 * g + n - 2;
      const Polynomial want = Polynomial(2) * q1.pow(e) * geometric(3).pow(e) + ipow(2, m) * q1.pow(2 * e) -
                              Polynomial(3) * ipow(4, m) * q1.pow(e) + ipow(8, m);
      const RationalPoly z = RationalPoly(shifted(-1, 1)).pow(4 * g + 2 * n - 2 * m - 4) * RationalPoly(qpow(8 * g + 2 * n + 2 * m - 8));
      const CountReport r = count_polynomial(s);
      const std::string tag = "SO5 (" + std::to_string(g) + "," + std::to_string(n) + "," + std::to_string(m) + ")";
      o.require(r.reduced == RationalPoly(want), tag + " master formula");
      o.require(r.display_prefactor == z, tag + " prefactor");
      o.require(RationalPoly(r.polynomial) == RationalPoly(want) * z, tag + " count");
    }
  }
  {
    const auto c = load("g2_override");
    const SubsystemPoset P = enumerate_closed_subsystems(c.spec.rd);
    o.require(P.size() == 12, "G2 node count");
    const auto top = P.top(), bot = P.bottom();
    const auto A2 = orbit_nodes(P, "A2"), AA = orbit_nodes(P, "A1xA1");
    const auto Ain = orbit_nodes(P, "A1[long]"), Aout = orbit_nodes(P, "A1[short]");
    o.require(A2.size() == 1 && AA.size() == 3 && Ain.size() == 3 && Aout.size() == 3, "G2 orbits");
    if (A2.size() == 1) {
      const auto a2 = A2[0];
      o.require(P.mobius(bot, top) == 0, "G2 mu(0,G2)");
      o.require(P.mobius(bot, a2) == 2, "G2 mu(0,A2)");
      o.require(P.mobius(a2, top) == -1, "G2 mu(A2,G2)");
      for (auto x : AA) {
        o.require(P.mobius(bot, x) == 1, "G2 mu(0,A1xA1)");
        o.require(P.mobius(x, top) == -1, "G2 mu(A1xA1,G2)");
      }
      for (auto a : Ain) {
        o.require(P.leq(a, a2), "G2 A1[long] inside A2");
        o.require(P.mobius(a, top) == 1, "G2 mu(A1 in A2,G2)");
        o.require(P.mobius(a, a2) == -1, "G2 mu(A1,A2)");
      }
      for (auto a : Aout) {
        o.require(!P.leq(a, a2), "G2 A1[short] outside A2");
        o.require(P.mobius(a, top) == 0, "G2 mu(A1 not in A2,G2)");
      }
      for (auto a : Ain) o.require(P.mobius(bot, a) == -1, "G2 mu(0,A1)");
      for (auto a : Aout) o.require(P.mobius(bot, a) == -1, "G2 mu(0,A1)");
      for (auto x : AA)
        for (auto a : Ain)
          if (P.leq(a, x)) o.require(P.mobius(a, x) == -1, "G2 mu(A1,A1xA1)");
      for (auto x : AA)
        for (auto a : Aout)
          if (P.leq(a, x)) o.require(P.mobius(a, x) == -1, "G2 mu(A1,A1xA1)");
    }
    check_rows(o, "G2", diagnostic_table(c.spec),
               {{"G2", 1, 1, 0, 1, 1, 12, q1 * geometric(5)},
                {"A2", 1, 3, 0, 3, 2, 6, q1 * geometric(2)},
                {"A1xA1", 3, 2, 0, 2, 1, 4, q1 * q1},
                {"A1[long]", 3, 1, 1, 0, -4, 2, q1},
                {"A1[short]", 3, 1, 1, 0, -2, 2, q1},
                {"empty", 1, 1, 2, 0, 12, 1, Polynomial(1)}});
    for (auto [g, n, m] : gnm) {
      ProblemSpec s = c.spec;
      s.g = g, s.n = n, s.m = m;
      const int e = 2 * g + n - 2;
      const Polynomial want = q1.pow(e) * geometric(5).pow(e) + ipow(2, m) * q1.pow(e) * geometric(2).pow(e) +
                              ipow(3, m) * q1.pow(2 * e) - Polynomial(3) * ipow(6, m) * q1.pow(e) + ipow(12, m);
      const RationalPoly z = RationalPoly(shifted(-1, 1)).pow(4 * g + 2 * n - 2 * m - 4) * RationalPoly(qpow(12 * g + 4 * n + 2 * m - 12));
      const CountReport r = count_polynomial(s);
      const std::string tag = "G2 (" + std::to_string(g) + "," + std::to_string(n) + "," + std::to_string(m) + ")";
      o.require(r.reduced == RationalPoly(want), tag + " master formula");
      o.require(r.display_prefactor == z, tag + " prefactor");
      o.require(RationalPoly(r.polynomial) == RationalPoly(want) * z, tag + " count");
    }
  }
  o.detail << "SO5 and G2 posets, mu, tables, master formulas at 3 instances";
}

// every config that counts without a hypothesis error
std::vector<std::pair<std::string, cli::Config>> corpus() {
  std::vector<std::pair<std::string, cli::Config>> out;
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(CHARVAR_CONFIG_DIR))
    if (e.path().extension() == ".json") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  for (const auto& p : files) {
    try {
      auto c = cli::load_config(p.string());
      validate(c.spec);
      out.emplace_back(p.stem().string(), std::move(c));
    } catch (const Error&) {
    }
  }
  return out;
}

void c6(Outcome& o) {
  const std::vector<std::pair<std::string, long>> want = {
      {"gl2_0_4_3", 4}, {"gl3_0_4_3", 114}, {"gl2_0_4_2", 2}, {"gl3_0_4_2", 12}};
  for (const auto& [name, chi] : want) {
    const auto c = load(name);
    const Rational got = count_polynomial(c.spec).polynomial.evaluate(1);
    o.require(got == chi, name + " euler " + got.get_str());
    o.detail << name << "=" << got << " ";
  }
  std::size_t zero = 0;
  for (const auto& [name, c] : corpus()) {
    if (!(c.spec.g > 0 || c.spec.n > c.spec.m + 2)) continue;
    const CountReport r = count_polynomial(c.spec);
    if (r.empty) continue;
    o.require(r.polynomial.evaluate(1) == 0, name + " euler nonzero");
    ++zero;
  }
  for (int g : {2, 3}) o.require(count_of(load("gl2_g1"), g, 2, 1).evaluate(1) == 0, "gl2 g>1");
  o.detail << "and " << zero << " corpus cases with euler 0";
}

ProblemSpec torus_spec(std::size_t d, int g, int n) {
  ProblemSpec s;
  s.rd = torus(d);
  s.g = g, s.n = n, s.m = n - 1;
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

void c7(Outcome& o) {
  int cases = 0;
  for (std::size_t d = 1; d <= 4; ++d)
    for (int g = 0; g <= 3; ++g)
      for (int n = 2; n <= 4; ++n) {
        o.require(count_polynomial(torus_spec(d, g, n)).polynomial == shifted(-1, 2 * g * static_cast<long>(d)),
                  "T(" + std::to_string(d) + ") g=" + std::to_string(g) + " n=" + std::to_string(n));
        ++cases;
      }
  const auto c = load("torus");
  o.require(count_polynomial(c.spec).polynomial == shifted(-1, 2 * c.spec.g * 2), "torus config");
  o.detail << cases + 1 << " torus cases, d <= 4, g <= 3";
}

void c8(Outcome& o) {
  double worst = 0;
  int runs = 0;
  for (const char* name : {"gl2_two_semisimple", "gl2_two_semisimple_special", "gl2_one_semisimple", "gl2_g1"}) {
    const auto c = load(name);
    for (unsigned q : {5u, 7u}) {
      OracleOptions opt;
      opt.q = q;
      opt.seed = c.oracle.seed;
      const auto t0 = std::chrono::steady_clock::now();
      const OracleResult r = run_oracle(c.spec, opt);
      const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      worst = std::max(worst, s);
      const std::string tag = std::string(name) + " q=" + std::to_string(q);
      o.require(r.faithful, tag + " faithful");
      o.require(Rational(r.brute.count) == r.formula, tag + " brute " + r.brute.count.get_str() + " formula " +
                                                           r.formula.get_str());
      o.require(s < 120, tag + " time");
      ++runs;
    }
  }
  o.detail << runs << " runs, slowest " << worst << "s";
}

void root_axioms(Outcome& o, const RootDatum& rd) {
  for (std::size_t i = 0; i < rd.size(); ++i) {
    bool ok = pairing(rd.root(i), rd.coroot(i)) == 2;
    for (std::size_t j = 0; j < rd.size() && ok; ++j) {
      Vec r = rd.root(j), v = rd.coroot(j);
      const long long c = pairing(rd.root(j), rd.coroot(i)), d = pairing(rd.root(i), rd.coroot(j));
      for (std::size_t k = 0; k < r.size(); ++k) {
        r[k] -= c * rd.root(i)[k];
        v[k] -= d * rd.coroot(i)[k];
      }
      ok = rd.root_index(r) >= 0 && rd.coroot_index(v) >= 0;
    }
    o.require(ok, rd.label() + " axioms");
  }
}

void c9(Outcome& o) {
  const std::vector<std::pair<char, std::size_t>> types = {{'A', 1}, {'A', 2}, {'A', 3}, {'A', 4}, {'B', 2}, {'B', 3},
                                                           {'B', 4}, {'C', 3}, {'C', 4}, {'D', 4}, {'G', 2}, {'F', 4}};
  std::mt19937_64 rng(9);
  for (auto [f, r] : types) {
    const RootDatum rd = cartan_type(f, r, true);
    const std::string name = std::string(1, f) + std::to_string(r);
    root_axioms(o, rd);
    root_axioms(o, rd.dual());
    const SubsystemPoset P = enumerate_closed_subsystems(rd);
    std::bernoulli_distribution coin(0.15);
    for (int t = 0; t < 20; ++t) {
      RootSet a = rd.none(), b = rd.none();
      for (std::size_t i = 0; i < rd.size(); ++i) {
        if (coin(rng)) a.set(i);
        if (coin(rng)) b.set(i);
      }
      const RootSet ca = closure(rd, a), cab = closure(rd, a | b);
      o.require(a.subset_of(ca) && closure(rd, ca) == ca && ca.subset_of(cab) && is_closed_subsystem(rd, ca),
                name + " closure laws");
    }
    for (std::size_t i = 0; i < P.size(); ++i) {
      const auto& node = P.node(i);
      o.require(node.poincare.evaluate(1) == Rational(node.weyl_order), name + " P(1)");
      if (i != P.top()) o.require(rd.size() - node.roots.count() >= 2 * r, name + " rank inequality");
      for (std::size_t j : P.above(i)) {
        if (j == i) continue;
        long long s = 0;
        for (std::size_t k = 0; k < P.size(); ++k)
          if (P.leq(i, k) && P.leq(k, j)) s += P.mobius(i, k);
        o.require(s == 0, name + " Moebius recursion");
      }
    }
  }
  // SNF invariants on random integer matrices
  std::uniform_int_distribution<long> entry(-9, 9);
  for (int t = 0; t < 100; ++t) {
    IntMatrix M(3, 4);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 4; ++j) M(i, j) = entry(rng);
    const SmithDecomposition s = smith_normal_form(M);
    const auto d = s.diagonal();
    bool chain = true;
    for (std::size_t i = 0; i + 1 < d.size(); ++i)
      if (d[i + 1] != 0 && d[i + 1] % d[i] != 0) chain = false;
    o.require(s.U * M * s.V == s.D && chain, "SNF");
  }
  // alpha telescoping
  const auto eig = EigenvalueDatum::parse({"a", "b", "c"}, {"a*b*c = 1"});
  for (const char* g : {"GL(3)", "SO(5)", "G2(sc)", "PGL(2)", "GL(2)xGL(1)"}) {
    const RootDatum rd = build_root_datum(g);
    const SubsystemPoset P = enumerate_closed_subsystems(rd);
    std::vector<Word> coords(rd.rank(), eig.identity());
    for (std::size_t j = 0; j < coords.size(); ++j) coords[j][j % 3] = static_cast<long long>(j + 1);
    for (const auto& S : {SymbolicTorusElement(rd.rank(), 3), SymbolicTorusElement(coords)}) {
      Polynomial total;
      for (std::size_t i = 0; i < P.size(); ++i) total += alpha(P, i, eig, S);
      o.require(total == delta(rd, rd.none(), eig, S), std::string(g) + " alpha telescoping");
    }
  }
  for (std::size_t n = 1; n <= 4; ++n) {
    const RootDatum rd = general_linear(n);
    const SubsystemPoset P = enumerate_closed_subsystems(rd);
    Polynomial want(1);
    for (std::size_t i = 1; i <= n; ++i) want *= shifted(-static_cast<long>(i), 1);
    o.require(alpha(P, P.bottom(), EigenvalueDatum(), SymbolicTorusElement(n, 0)) == want, "alpha(0,1) GL" + std::to_string(n));
  }
  for (int n = 1; n <= 5; ++n) o.require(partition_mobius_check(n), "partition Moebius n=" + std::to_string(n));

  // modulus table for simply connected groups
  const std::vector<std::tuple<char, std::size_t, long>> table = {
      {'A', 1, 2}, {'A', 2, 3}, {'A', 3, 4}, {'A', 4, 5}, {'B', 2, 2}, {'B', 3, 2},
      {'B', 4, 2}, {'C', 3, 2}, {'C', 4, 2}, {'D', 4, 4}, {'G', 2, 6}};
  o.detail << "modulus";
  for (auto [f, r, want] : table) {
    const Integer got = modulus(cartan_type(f, r, true));
    o.detail << " " << f << r << "=" << got;
    o.require(got == want, std::string(1, f) + std::to_string(r) + " modulus " + got.get_str() + " vs table " +
                               std::to_string(want));
  }
}

void c10(Outcome& o) {
  std::size_t checked = 0, lead = 0;
  for (const auto& [name, c] : corpus()) {
    const CountReport r = count_polynomial(c.spec);
    if (r.empty || r.polynomial.is_zero()) continue;
    o.require(r.dimension == r.expected_dimension, name + " degree " + std::to_string(r.dimension) + " vs " +
                                                       std::to_string(r.expected_dimension));
    ++checked;
    if (c.spec.g > 0 || c.spec.n > 3) {
      o.require(r.polynomial.leading() == Rational(center_dual_quotient(c.spec.rd).torsion_order), name + " leading");
      ++lead;
    }
  }
  o.detail << checked << " corpus cases, " << lead << " leading coefficients";
}

}  // namespace

// --expect-fail N: criterion N is a known, documented failure. The exit code
// is 0 only when the failing set is exactly the expected set.
int main(int argc, char** argv) {
  std::set<std::size_t> expected;
  for (int i = 1; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--expect-fail") expected.insert(std::stoul(argv[++i]));
  const std::vector<std::function<void(Outcome&)>> criteria = {c1, c2, c3, c4, c5, c6, c7, c8, c9, c10};
  int failed = 0;
  std::set<std::size_t> failing;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      criteria[i](o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " [exception: " << e.what() << "]";
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << "criterion " << (i + 1) << ": " << (o.pass ? "PASS" : "FAIL") << "  " << o.detail.str() << "  ("
              << s << "s)" << std::endl;
    if (!o.pass) {
      ++failed;
      failing.insert(i + 1);
    }
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size() << " criteria pass"
            << std::endl;
  if (!expected.empty()) {
    std::cout << "expected failures:";
    for (auto e : expected) std::cout << " " << e;
    std::cout << (failing == expected ? " (matches)" : " (MISMATCH)") << std::endl;
    return failing == expected ? 0 : 1;
  }
  return failed ? 1 : 0;
}
