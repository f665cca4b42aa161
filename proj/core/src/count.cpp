#include "charvar/count.hpp"

#include <algorithm>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "charvar/error.hpp"

namespace charvar {

namespace {

struct ElementHash {
  std::size_t operator()(const SymbolicTorusElement& s) const noexcept {
    std::size_t h = 0;
    VecHash vh;
    for (const auto& w : s.coords()) h = h * 0x9e3779b97f4a7c15ULL ^ vh(w);
    return h;
  }
};

Integer ipow(const Integer& b, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

void check_shape(const ProblemSpec& spec) {
  if (spec.g < 0) throw Error(ErrorKind::Validation, "E_SPEC", "genus must be >= 0");
  if (spec.m < 1)
    throw Error(ErrorKind::Hypothesis, "E_REGULAR_MONODROMY", "at least one strongly regular class required (m >= 1)",
                "regular monodromy");
  if (spec.n <= spec.m)
    throw Error(ErrorKind::Hypothesis, "E_REGULAR_MONODROMY",
                "at least one regular unipotent class required (n > m)", "regular monodromy");
  if (!spec.classes.empty() && spec.classes.size() != static_cast<std::size_t>(spec.m))
    throw Error(ErrorKind::Validation, "E_SPEC",
                "expected " + std::to_string(spec.m) + " semisimple classes, got " + std::to_string(spec.classes.size()));
  for (const auto& c : spec.classes) {
    if (c.rank() != spec.rd.rank())
      throw Error(ErrorKind::Validation, "E_SPEC", "class rank differs from the rank of the torus");
    for (const auto& w : c.coords())
      if (w.size() != spec.eigenvalues.symbol_count())
        throw Error(ErrorKind::Validation, "E_SPEC", "class word length differs from the symbol count");
  }
}

struct Assembly {
  SubsystemPoset poset;
  WeylGroup W;
  std::vector<Integer> N;  // per node: #{w in W^m : Psi-test passes on w.S}
  std::vector<bool> orbit_uniform;
  std::vector<bool> orbit_overridden;
  bool empty = false;
  std::vector<std::string> warnings;
};

std::vector<Integer> first_fixed_counts(const ProblemSpec& spec, const Assembly& a,
                                        const std::vector<std::size_t>& nodes) {
  const auto& A = spec.eigenvalues.group();
  // distinct products S_1 (w_2.S_2) ... (w_m.S_m) with multiplicities
  std::unordered_map<SymbolicTorusElement, Integer, ElementHash> cur{{spec.classes[0].canonical(A), Integer(1)}};
  for (std::size_t i = 1; i < spec.classes.size(); ++i) {
    std::vector<SymbolicTorusElement> translates;
    for (const auto& w : a.W.elements) translates.push_back(spec.classes[i].translated(w));
    if (cur.size() * translates.size() > spec.tuple_budget)
      throw Error(ErrorKind::ResourceLimit, "E_TUPLE_BUDGET",
                  "W^m enumeration exceeds budget of " + std::to_string(spec.tuple_budget) + " products");
    std::unordered_map<SymbolicTorusElement, Integer, ElementHash> next;
    for (const auto& [y, mult] : cur)
      for (const auto& t : translates) next[(y * t).canonical(A)] += mult;
    cur = std::move(next);
  }
  std::vector<std::pair<SymbolicTorusElement, Integer>> items(cur.begin(), cur.end());

  std::vector<Integer> out(nodes.size());
  const unsigned threads = std::max(1u, std::min<unsigned>(spec.threads, static_cast<unsigned>(nodes.size())));
  auto work = [&](unsigned tid) {
    for (std::size_t k = tid; k < nodes.size(); k += threads) {
      const auto& q = a.poset.node(nodes[k]).quotient;
      Integer s = 0;
      for (const auto& [y, mult] : items)
        if (in_commutator(q, spec.eigenvalues, y)) s += mult;
      out[k] = s;
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
    for (auto& t : pool) t.join();
  }
  return out;
}

Assembly assemble(const ProblemSpec& spec) {
  check_shape(spec);
  Assembly a;
  a.poset = enumerate_closed_subsystems(spec.rd, spec.poset);
  a.W = enumerate_weyl(spec.rd, spec.poset.weyl_bound);
  const auto& P = a.poset;
  const std::size_t orbits = P.orbits().size();
  a.orbit_overridden.assign(orbits, false);
  a.orbit_uniform.assign(orbits, true);
  for (const auto& [label, value] : spec.overrides) {
    auto o = P.orbit_by_label(label);
    if (!o) {
      std::string known;
      for (const auto& l : P.orbit_labels()) known += (known.empty() ? "" : ", ") + l;
      throw Error(ErrorKind::Validation, "E_OVERRIDE", "unknown orbit label '" + label + "' (known: " + known + ")");
    }
    a.orbit_overridden[*o] = true;
  }
  const bool all_overridden = std::all_of(a.orbit_overridden.begin(), a.orbit_overridden.end(), [](bool b) { return b; });
  if (spec.classes.empty() && !all_overridden)
    throw Error(ErrorKind::Validation, "E_SPEC", "classes are required unless every orbit is overridden");

  const Integer full = ipow(Integer(static_cast<unsigned long>(a.W.order())), static_cast<unsigned long>(spec.m));
  a.N.assign(P.size(), Integer(0));

  std::vector<Integer> computed(P.size(), Integer(0));
  if (!spec.classes.empty()) {
    std::vector<std::size_t> all(P.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    auto n1 = first_fixed_counts(spec, a, all);
    for (std::size_t o = 0; o < orbits; ++o) {
      const auto& members = P.orbits()[o];
      Integer s = 0;
      for (auto i : members) s += n1[i];
      Integer per = s * Integer(static_cast<unsigned long>(a.W.order())) / Integer(static_cast<unsigned long>(members.size()));
      for (auto i : members) computed[i] = per;
    }
  }
  for (std::size_t o = 0; o < orbits; ++o) {
    const auto& members = P.orbits()[o];
    const std::string& label = P.orbit_labels()[o];
    if (a.orbit_overridden[o]) {
      const Integer v = spec.overrides.at(label) ? full : Integer(0);
      for (auto i : members) a.N[i] = v;
      if (!spec.classes.empty() && computed[members.front()] != v)
        a.warnings.push_back("override for " + label + " disagrees with the computed outcome (" +
                             computed[members.front()].get_str() + " of " + full.get_str() + " translates pass)");
    } else {
      for (auto i : members) a.N[i] = computed[i];
    }
    const Integer& v = a.N[members.front()];
    a.orbit_uniform[o] = v == 0 || v == full;
    if (!spec.classes.empty()) {
      const Integer& c = computed[members.front()];
      if (c != 0 && c != full)
        a.warnings.push_back("membership for " + label + " is not uniform over W^m translates (" + c.get_str() +
                             " of " + full.get_str() + ")");
    }
  }
  a.empty = a.N[P.top()] == 0;
  return a;
}

// sum_{y >= x} mu(x,y) N(y) Delta(y)
Polynomial inner_sum(const Assembly& a, std::size_t x) {
  Polynomial s;
  for (std::size_t y : a.poset.above(x)) {
    long long mu = a.poset.mobius(x, y);
    if (mu == 0 || a.N[y] == 0) continue;
    s += Polynomial(Rational(a.N[y] * static_cast<long>(mu))) * delta_value(a.poset.node(y).quotient);
  }
  return s;
}

RationalPoly reduced_from(const ProblemSpec& spec, const Assembly& a) {
  const int e = 2 * spec.g + spec.n - 2;
  RationalPoly total;
  for (const auto& orbit : a.poset.orbits()) {
    const auto x = orbit.front();
    const auto& node = a.poset.node(x);
    Polynomial term = inner_sum(a, x) * node.poincare.pow(static_cast<unsigned>(e));
    Rational scale(Integer(static_cast<unsigned long>(orbit.size())),
                   ipow(node.weyl_order, static_cast<unsigned long>(spec.m - 1)));
    scale.canonicalize();
    total += RationalPoly(term * Polynomial(scale));
  }
  return total / RationalPoly(Rational(static_cast<long>(a.W.order())));
}

std::vector<TableRow> table_from(const ProblemSpec& spec, const Assembly& a) {
  const Integer full = ipow(Integer(static_cast<unsigned long>(a.W.order())), static_cast<unsigned long>(spec.m));
  std::vector<TableRow> rows;
  for (std::size_t o = 0; o < a.poset.orbits().size(); ++o) {
    const auto& orbit = a.poset.orbits()[o];
    const auto x = orbit.front();
    const auto& node = a.poset.node(x);
    TableRow r;
    r.label = a.poset.orbit_labels()[o];
    r.orbit_size = orbit.size();
    r.root_count = node.roots.count();
    r.quotient = node.quotient.invariants;
    Rational frac(a.N[x], full);
    frac.canonicalize();
    r.delta = RationalPoly(Polynomial(frac) * delta_value(node.quotient));
    r.alpha = RationalPoly(inner_sum(a, x) * Polynomial(Rational(Integer(1), full)));
    r.weyl_order = node.weyl_order;
    r.poincare = node.poincare;
    r.uniform = a.orbit_uniform[o];
    r.overridden = a.orbit_overridden[o];
    std::ostringstream rep;
    rep << "{";
    bool first = true;
    for (int i : node.roots.indices()) {
      if (!spec.rd.is_positive(static_cast<std::size_t>(i))) continue;
      rep << (first ? "" : ", ") << "(";
      const auto& v = spec.rd.coroot(static_cast<std::size_t>(i));
      for (std::size_t k = 0; k < v.size(); ++k) rep << (k ? "," : "") << v[k];
      rep << ")";
      first = false;
    }
    rep << "}";
    r.representative = rep.str();
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace

Hypotheses validate(const ProblemSpec& spec) {
  check_shape(spec);
  Hypotheses h;
  const auto zq = quotient_invariants(spec.rd.rank(), spec.rd.roots());
  h.center_quotient = zq.to_string();
  h.connected_center = zq.torsion.empty();
  if (!h.connected_center)
    throw Error(ErrorKind::Hypothesis, "E_CONNECTED_CENTER",
                "connected center required: X/<Phi> = " + h.center_quotient + " has torsion", "connected center");
  const auto adm = admissible_primes(spec.rd);
  h.excluded_primes.assign(adm.excluded.begin(), adm.excluded.end());
  h.dual_modulus = 1;
  auto P = enumerate_closed_subsystems(spec.rd, spec.poset);
  for (const auto& node : P.nodes())
    mpz_lcm(h.dual_modulus.get_mpz_t(), h.dual_modulus.get_mpz_t(), node.quotient.invariants.exponent().get_mpz_t());
  h.regime = "q = 1 mod " + h.dual_modulus.get_str() + ", characteristic not in {";
  for (std::size_t i = 0; i < h.excluded_primes.size(); ++i) h.regime += (i ? ", " : "") + std::to_string(h.excluded_primes[i]);
  h.regime += "}";

  h.classes_given = !spec.classes.empty();
  if (!h.classes_given) {
    h.notes.push_back("classes not given: strong regularity and the product condition were not checked");
    return h;
  }
  const auto W = enumerate_weyl(spec.rd, spec.poset.weyl_bound);
  for (std::size_t i = 0; i < spec.classes.size(); ++i)
    if (!strongly_regular(spec.rd, W, spec.eigenvalues, spec.classes[i]))
      throw Error(ErrorKind::Hypothesis, "E_NOT_STRONGLY_REGULAR",
                  "class S_" + std::to_string(i + 1) + " is not strongly regular (a root is trivial on it or a Weyl element fixes it)",
                  "strongly regular semisimple classes");
  SymbolicTorusElement prod = spec.classes[0];
  for (std::size_t i = 1; i < spec.classes.size(); ++i) prod = prod * spec.classes[i];
  h.product_in_commutator = in_commutator(spec.rd, spec.rd.all(), spec.eigenvalues, prod);
  if (!h.product_in_commutator) h.notes.push_back("S_1...S_m is not in the derived subgroup: the variety is empty");
  for (const auto& w : spec.eigenvalues.warnings()) h.notes.push_back(w);
  return h;
}

RationalPoly prefactor(const ProblemSpec& spec) {
  const auto d = static_cast<long>(spec.rd.rank());
  const auto r = static_cast<long>(spec.rd.semisimple_rank());
  const long z = d - r;
  const RationalPoly qm1(Polynomial::binomial_power(-1, 1));
  const RationalPoly q(Polynomial::q());
  RationalPoly zq = qm1.pow(z) * q.pow(r);
  return qm1.pow(z) * qm1.pow(-static_cast<long>(spec.m) * d) * zq.pow(spec.m - spec.n);
}

RationalPoly display_prefactor(const ProblemSpec& spec) {
  const auto d = static_cast<unsigned>(spec.rd.rank());
  Polynomial B = Polynomial::monomial(Rational(1), spec.rd.positive_count()) * Polynomial::binomial_power(-1, d);
  return prefactor(spec) * RationalPoly(B).pow(2 * spec.g + spec.n - 2);
}

long long expected_dimension(const ProblemSpec& spec) {
  const auto d = static_cast<long long>(spec.rd.rank());
  const auto r = static_cast<long long>(spec.rd.semisimple_rank());
  const auto roots = static_cast<long long>(spec.rd.size());
  return 2LL * spec.g * (d + roots) - 2 * (r + roots) + static_cast<long long>(spec.n) * roots;
}

RationalPoly reduced_sum(const ProblemSpec& spec) {
  Assembly a = assemble(spec);
  return reduced_from(spec, a);
}

std::vector<TableRow> diagnostic_table(const ProblemSpec& spec) {
  Assembly a = assemble(spec);
  return table_from(spec, a);
}

TopologyReport topology(const CountReport& report, const ProblemSpec& spec) {
  TopologyReport t;
  const Polynomial& p = report.polynomial;
  t.components = p.leading();
  t.euler = p.evaluate(Rational(1));
  t.expected_components = center_dual_quotient(spec.rd).torsion_order;
  if (report.empty || p.is_zero()) return t;
  const bool noncommutative = spec.rd.size() > 0;
  if (spec.g > 0 || spec.n > 3) {
    t.components_checked = true;
    t.components_ok = t.components == Rational(t.expected_components);
  }
  if (noncommutative && (spec.g > 0 || spec.n > spec.m + 2)) {
    t.euler_checked = true;
    t.euler_ok = t.euler == 0;
  }
  t.ord_q_minus_1 = p.multiplicity(Rational(1));
  const auto d = static_cast<long long>(spec.rd.rank());
  const auto z = d - static_cast<long long>(spec.rd.semisimple_rank());
  t.ord_bound = (2LL * spec.g + spec.n - spec.m - 2) * d - (static_cast<long long>(spec.n) - spec.m - 2) * z;
  if (noncommutative && (spec.g > 0 || spec.n - spec.m > 2)) {
    t.ord_checked = true;
    t.ord_ok = t.ord_q_minus_1 >= t.ord_bound;
  }
  return t;
}

CountReport count_polynomial(const ProblemSpec& spec) {
  CountReport rep;
  rep.hypotheses = validate(spec);
  Assembly a = assemble(spec);
  rep.warnings = a.warnings;
  rep.prefactor = prefactor(spec);
  rep.display_prefactor = display_prefactor(spec);
  rep.table = table_from(spec, a);
  rep.expected_dimension = expected_dimension(spec);
  if (a.empty || !rep.hypotheses.product_in_commutator) {
    rep.empty = true;
    rep.reduced = RationalPoly();
    rep.factored = factor(rep.polynomial);
    rep.topology = topology(rep, spec);
    return rep;
  }
  rep.reduced = reduced_from(spec, a);
  RationalPoly total = rep.display_prefactor * rep.reduced;
  rep.polynomial = total.as_polynomial();
  if (!rep.polynomial.has_integer_coefficients())
    throw Error(ErrorKind::InternalConsistency, "E_NOT_INTEGRAL",
                "count has non-integer coefficients: " + rep.polynomial.to_string());
  rep.factored = factor(rep.polynomial);
  rep.dimension = rep.polynomial.degree();
  if (rep.polynomial.is_zero()) {
    rep.empty = true;
  } else {
    rep.dimension_ok = rep.dimension == rep.expected_dimension;
    if (!rep.dimension_ok)
      rep.warnings.push_back("degree " + std::to_string(rep.dimension) + " differs from the expected dimension " +
                             std::to_string(rep.expected_dimension));
  }
  rep.topology = topology(rep, spec);
  if (!rep.topology.components_ok) rep.warnings.push_back("leading coefficient differs from |Tor(X^v/<Phi^v>)|");
  if (!rep.topology.euler_ok) rep.warnings.push_back("Euler characteristic is not 0");
  if (!rep.topology.ord_ok) rep.warnings.push_back("order of vanishing at q = 1 is below the bound");
  return rep;
}

}  // namespace charvar
