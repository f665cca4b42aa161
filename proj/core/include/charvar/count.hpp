#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "charvar/charsum.hpp"
#include "charvar/polynomial.hpp"
#include "charvar/rootdata.hpp"
#include "charvar/subsystems.hpp"

namespace charvar {

struct ProblemSpec {
  RootDatum rd;
  int g = 0;
  int n = 0;  // punctures
  int m = 0;  // strongly regular semisimple classes; the other n - m are regular unipotent
  std::vector<SymbolicTorusElement> classes;
  EigenvalueDatum eigenvalues;
  std::map<std::string, bool> overrides;  // keyed by orbit label
  unsigned threads = 1;
  std::size_t tuple_budget = 50'000'000;  // distinct W^m translates examined
  PosetOptions poset;
};

struct Hypotheses {
  bool connected_center = true;
  std::string center_quotient;  // X / <Phi>
  std::vector<long long> excluded_primes;
  Integer dual_modulus = 1;  // d(G-check)
  std::string regime;
  bool classes_given = false;
  bool product_in_commutator = true;
  std::vector<std::string> notes;
};

struct TableRow {
  std::string label;
  std::size_t orbit_size = 0;
  std::size_t root_count = 0;
  QuotientInvariants quotient;
  RationalPoly delta;  // averaged over W^m translates
  RationalPoly alpha;
  Integer weyl_order;
  Polynomial poincare;
  bool uniform = true;
  bool overridden = false;
  std::string representative;  // explicit coroot list
};

struct TopologyReport {
  Rational components;
  Integer expected_components;
  bool components_checked = false;
  bool components_ok = true;
  Rational euler;
  bool euler_checked = false;
  bool euler_ok = true;
  int ord_q_minus_1 = 0;
  long long ord_bound = 0;
  bool ord_checked = false;
  bool ord_ok = true;
};

struct CountReport {
  Polynomial polynomial;
  Factorization factored;
  bool empty = false;
  int dimension = -1;
  long long expected_dimension = 0;
  bool dimension_ok = true;
  RationalPoly prefactor;          // frak z
  RationalPoly display_prefactor;  // frak z * |B|^{2g+n-2}
  RationalPoly reduced;            // polynomial / display_prefactor
  std::vector<TableRow> table;
  TopologyReport topology;
  Hypotheses hypotheses;
  std::vector<std::string> warnings;
};

// Checks the standing hypotheses; throws Error(Hypothesis) on violations.
Hypotheses validate(const ProblemSpec& spec);

RationalPoly prefactor(const ProblemSpec& spec);
RationalPoly display_prefactor(const ProblemSpec& spec);
long long expected_dimension(const ProblemSpec& spec);

// (1/|W|) sum_Psi |W(Psi)|^{1-m} P_Psi^{2g+n-2} sum_{w} alpha_{Psi, w.S}; no
// polynomiality is asserted here.
RationalPoly reduced_sum(const ProblemSpec& spec);
std::vector<TableRow> diagnostic_table(const ProblemSpec& spec);
CountReport count_polynomial(const ProblemSpec& spec);
TopologyReport topology(const CountReport& report, const ProblemSpec& spec);

}  // namespace charvar
