#include "report.hpp"

#include <sstream>

namespace charvar::cli {

namespace {

std::string str(const Rational& r) { return r.get_str(); }
std::string str(const Integer& r) { return r.get_str(); }

ordered_json rational_poly_json(const RationalPoly& p) {
  ordered_json j;
  j["text"] = p.to_string();
  j["numerator"] = polynomial_json(p.numerator());
  j["denominator"] = polynomial_json(p.denominator());
  return j;
}

std::string yes(bool b) { return b ? "yes" : "no"; }

}  // namespace

ordered_json polynomial_json(const Polynomial& p) {
  ordered_json j;
  j["text"] = p.to_string();
  j["degree"] = p.degree();
  ordered_json coeffs = ordered_json::array();
  for (const auto& c : p.coefficients()) coeffs.push_back(str(c));
  j["coefficients"] = coeffs;
  return j;
}

ordered_json header_json(const Config& c, const std::string& command) {
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = command;
  j["config"] = c.path;
  j["group"] = c.spec.rd.label();
  j["rank"] = c.spec.rd.rank();
  j["g"] = c.spec.g;
  j["n"] = c.spec.n;
  j["m"] = c.spec.m;
  j["classes"] = c.class_text;
  return j;
}

ordered_json table_json(const std::vector<TableRow>& rows) {
  ordered_json a = ordered_json::array();
  for (const auto& r : rows) {
    ordered_json j;
    j["label"] = r.label;
    j["orbit_size"] = r.orbit_size;
    j["roots"] = r.root_count;
    j["representative"] = r.representative;
    j["quotient"] = r.quotient.to_string();
    j["torsion"] = str(r.quotient.torsion_order);
    j["rank"] = r.quotient.free_rank;
    j["delta"] = r.delta.to_string();
    j["alpha"] = r.alpha.to_string();
    j["weyl_order"] = str(r.weyl_order);
    j["poincare"] = r.poincare.to_string();
    j["uniform"] = r.uniform;
    j["overridden"] = r.overridden;
    a.push_back(j);
  }
  return a;
}

ordered_json count_json(const Config& c, const CountReport& r) {
  ordered_json j = header_json(c, "count");
  j["polynomial"] = polynomial_json(r.polynomial);
  j["factored"] = r.factored.to_string();
  j["empty"] = r.empty;
  j["dimension"] = r.dimension;
  j["expected_dimension"] = r.expected_dimension;
  j["dimension_ok"] = r.dimension_ok;
  j["prefactor"] = rational_poly_json(r.prefactor);
  j["display_prefactor"] = rational_poly_json(r.display_prefactor);
  j["reduced"] = rational_poly_json(r.reduced);
  const auto& t = r.topology;
  ordered_json top;
  top["components"] = str(t.components);
  top["expected_components"] = str(t.expected_components);
  top["components_checked"] = t.components_checked;
  top["components_ok"] = t.components_ok;
  top["euler_characteristic"] = str(t.euler);
  top["euler_checked"] = t.euler_checked;
  top["euler_ok"] = t.euler_ok;
  top["ord_q_minus_1"] = t.ord_q_minus_1;
  top["ord_bound"] = t.ord_bound;
  top["ord_checked"] = t.ord_checked;
  top["ord_ok"] = t.ord_ok;
  j["topology"] = top;
  j["hypotheses"] = check_json(c, r.hypotheses, !r.empty)["hypotheses"];
  j["table"] = table_json(r.table);
  j["warnings"] = r.warnings;
  return j;
}

ordered_json poset_json(const Config& c, const SubsystemPoset& P) {
  ordered_json j = header_json(c, "poset");
  j["node_count"] = P.size();
  ordered_json nodes = ordered_json::array();
  for (std::size_t i = 0; i < P.size(); ++i) {
    const auto& n = P.node(i);
    ordered_json x;
    x["index"] = i;
    x["type"] = n.type;
    x["orbit"] = P.orbit_labels()[n.orbit];
    x["coroots"] = n.roots.indices();
    x["simple"] = n.simple;
    x["quotient"] = n.quotient.invariants.to_string();
    x["weyl_order"] = str(n.weyl_order);
    x["poincare"] = n.poincare.to_string();
    x["mobius_from_bottom"] = P.mobius(P.bottom(), i);
    x["mobius_to_top"] = P.mobius(i, P.top());
    nodes.push_back(x);
  }
  j["nodes"] = nodes;
  ordered_json orbits = ordered_json::array();
  for (std::size_t o = 0; o < P.orbits().size(); ++o) {
    ordered_json x;
    x["label"] = P.orbit_labels()[o];
    x["members"] = P.orbits()[o];
    orbits.push_back(x);
  }
  j["orbits"] = orbits;
  ordered_json mu = ordered_json::array();
  for (std::size_t a = 0; a < P.size(); ++a)
    for (std::size_t b = a; b < P.size(); ++b)
      if (P.leq(a, b) && P.mobius(a, b)) mu.push_back({a, b, P.mobius(a, b)});
  j["mobius"] = mu;
  return j;
}

ordered_json check_json(const Config& c, const Hypotheses& h, bool nonempty) {
  ordered_json j = header_json(c, "check");
  ordered_json x;
  x["connected_center"] = h.connected_center;
  x["center_quotient"] = h.center_quotient;
  x["excluded_primes"] = h.excluded_primes;
  x["dual_modulus"] = str(h.dual_modulus);
  x["regime"] = h.regime;
  x["classes_given"] = h.classes_given;
  x["product_in_commutator"] = h.product_in_commutator;
  x["nonempty"] = nonempty;
  x["notes"] = h.notes;
  j["hypotheses"] = x;
  return j;
}

ordered_json oracle_json(const Config& c, const OracleRun& run) {
  ordered_json j = header_json(c, "oracle");
  ordered_json counts = ordered_json::array();
  for (const auto& r : run.counts) {
    ordered_json x;
    x["group"] = to_string(r.kind);
    x["q"] = r.q;
    x["seed"] = r.seed;
    ordered_json spec = ordered_json::object();
    for (const auto& [k, v] : r.specialization) spec[k] = v;
    x["specialization"] = spec;
    x["faithful"] = r.faithful;
    x["class_sizes"] = r.class_sizes;
    x["expected_class_sizes"] = r.expected_class_sizes;
    x["class_sizes_ok"] = r.class_sizes_ok;
    x["solutions"] = str(r.brute.solutions);
    x["quotient_order"] = str(r.brute.quotient_order);
    x["brute_force"] = str(r.brute.count);
    x["formula"] = str(r.formula);
    x["match"] = r.match;
    counts.push_back(x);
  }
  j["counts"] = counts;
  ordered_json ws = ordered_json::array();
  for (const auto& w : run.witnesses) {
    ordered_json x;
    x["name"] = w.name;
    x["q"] = w.q;
    ordered_json spec = ordered_json::object();
    for (const auto& [k, v] : w.specialization) spec[k] = v;
    x["specialization"] = spec;
    x["matrices"] = w.values;
    x["relation_ok"] = w.relation_ok;
    x["class_ok"] = w.class_ok;
    x["ok"] = w.ok;
    x["attempts"] = w.attempts;
    ws.push_back(x);
  }
  j["witnesses"] = ws;
  ordered_json ps = ordered_json::array();
  for (const auto& p : run.pairs) ps.push_back({{"first", p.first}, {"second", p.second}, {"q", p.q}, {"conjugate", p.conjugate}});
  j["distinct"] = ps;
  return j;
}

ordered_json error_json(const std::string& code, const std::string& kind, const std::string& message,
                        const std::string& hypothesis) {
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["error"] = {{"code", code}, {"kind", kind}, {"message", message}, {"hypothesis", hypothesis}};
  return j;
}

std::string format_rows(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& r : rows)
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (width.size() <= i) width.push_back(0);
      width[i] = std::max(width[i], r[i].size());
    }
  std::ostringstream out;
  for (const auto& r : rows) {
    std::string line;
    for (std::size_t i = 0; i < r.size(); ++i) {
      line += r[i];
      if (i + 1 < r.size()) line += std::string(width[i] - r[i].size() + 2, ' ');
    }
    out << line << "\n";
  }
  return out.str();
}

std::string table_text(const std::vector<TableRow>& rows) {
  std::vector<std::vector<std::string>> t{{"Psi", "#", "Torsion", "Rank", "Delta", "alpha", "|W(Psi)|", "P_Psi"}};
  for (const auto& r : rows)
    t.push_back({r.label + (r.overridden ? "*" : "") + (r.uniform ? "" : "~"), std::to_string(r.orbit_size),
                 str(r.quotient.torsion_order), std::to_string(r.quotient.free_rank), r.delta.to_string(),
                 r.alpha.to_string(), str(r.weyl_order), r.poincare.to_string()});
  return format_rows(t);
}

std::string count_text(const Config& c, const CountReport& r) {
  std::ostringstream out;
  out << "group      " << c.spec.rd.label() << "  (g, n, m) = (" << c.spec.g << ", " << c.spec.n << ", " << c.spec.m << ")\n";
  out << "count      " << r.polynomial.to_string() << "\n";
  out << "factored   " << r.factored.to_string() << "\n";
  out << "prefactor  " << r.display_prefactor.to_string() << "\n";
  out << "reduced    " << r.reduced.to_string() << "\n";
  if (r.empty) {
    out << "variety is empty\n";
  } else {
    out << "dimension  " << r.dimension << " (expected " << r.expected_dimension << ", " << (r.dimension_ok ? "ok" : "MISMATCH") << ")\n";
    const auto& t = r.topology;
    out << "components " << str(t.components);
    if (t.components_checked) out << " (expected " << str(t.expected_components) << ", " << (t.components_ok ? "ok" : "MISMATCH") << ")";
    out << "\neuler      " << str(t.euler);
    if (t.euler_checked) out << " (" << (t.euler_ok ? "ok" : "MISMATCH") << ")";
    out << "\n";
    if (t.ord_checked)
      out << "ord(q-1)   " << t.ord_q_minus_1 << " >= " << t.ord_bound << " " << (t.ord_ok ? "ok" : "MISMATCH") << "\n";
  }
  for (const auto& w : r.warnings) out << "warning: " << w << "\n";
  return out.str();
}

std::string poset_text(const SubsystemPoset& P) {
  std::vector<std::vector<std::string>> t{{"#", "type", "orbit", "|Psi|", "X^/<Psi>", "|W(Psi)|", "mu(0,Psi)", "mu(Psi,1)"}};
  for (std::size_t i = 0; i < P.size(); ++i) {
    const auto& n = P.node(i);
    t.push_back({std::to_string(i), n.type, P.orbit_labels()[n.orbit], std::to_string(n.roots.count()),
                 n.quotient.invariants.to_string(), str(n.weyl_order), std::to_string(P.mobius(P.bottom(), i)),
                 std::to_string(P.mobius(i, P.top()))});
  }
  std::ostringstream out;
  out << P.size() << " closed subsystems, " << P.orbits().size() << " W-orbits\n" << format_rows(t);
  return out.str();
}

std::string check_text(const Hypotheses& h, bool nonempty) {
  std::ostringstream out;
  out << "connected center   " << yes(h.connected_center) << "  (X/<Phi> = " << h.center_quotient << ")\n";
  out << "excluded primes    ";
  for (std::size_t i = 0; i < h.excluded_primes.size(); ++i) out << (i ? ", " : "") << h.excluded_primes[i];
  out << "\nd(G dual)          " << str(h.dual_modulus) << "\n";
  out << "regime             " << h.regime << "\n";
  out << "product condition  " << yes(h.product_in_commutator) << "\n";
  out << "nonempty           " << yes(nonempty) << "\n";
  for (const auto& n : h.notes) out << "note: " << n << "\n";
  return out.str();
}

std::string oracle_text(const OracleRun& run) {
  std::ostringstream out;
  if (!run.counts.empty()) {
    std::vector<std::vector<std::string>> t{{"group", "q", "specialization", "faithful", "brute force", "formula", "verdict"}};
    for (const auto& r : run.counts) {
      std::string s;
      for (const auto& [k, v] : r.specialization) s += (s.empty() ? "" : ",") + k + "=" + std::to_string(v);
      t.push_back({to_string(r.kind), std::to_string(r.q), s.empty() ? "-" : s, yes(r.faithful), str(r.brute.count),
                   str(r.formula), r.match ? "match" : "MISMATCH"});
    }
    out << format_rows(t);
  }
  for (const auto& w : run.witnesses) {
    std::string s;
    for (const auto& [k, v] : w.specialization) s += (s.empty() ? "" : ",") + k + "=" + std::to_string(v);
    out << "witness " << w.name << " over F_" << w.q << " (" << s << "): relation " << (w.relation_ok ? "ok" : "FAILS")
        << ", classes";
    for (bool b : w.class_ok) out << " " << (b ? "ok" : "FAIL");
    out << " -> " << (w.ok ? "valid" : "INVALID") << "\n";
  }
  for (const auto& p : run.pairs)
    out << p.first << " and " << p.second << " over F_" << p.q << ": " << (p.conjugate ? "CONJUGATE" : "not conjugate") << "\n";
  return out.str();
}

}  // namespace charvar::cli
