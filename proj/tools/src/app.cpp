#include "app.hpp"

#include <fstream>
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "charvar/error.hpp"
#include "config.hpp"
#include "report.hpp"

namespace charvar::cli {

namespace {

struct Flags {
  std::string config;
  std::string json;
  bool table = false;
  std::vector<unsigned> q;
  unsigned threads = 0;
  double budget = 0;
  long long seed = -1;
};

void emit_json(const Flags& f, const ordered_json& j, std::ostream& out) {
  if (f.json.empty()) return;
  const std::string text = j.dump(2) + "\n";
  if (f.json == "-") {
    out << text;
    return;
  }
  std::ofstream file(f.json);
  if (!file) throw Error(ErrorKind::Usage, "E_IO", "cannot write '" + f.json + "'");
  file << text;
}

Config load(const Flags& f) {
  Config c = load_config(f.config);
  if (f.threads) c.spec.threads = f.threads;
  if (f.budget > 0) c.oracle.budget = f.budget;
  if (f.seed >= 0) c.oracle.seed = static_cast<std::uint64_t>(f.seed);
  if (!f.q.empty()) c.oracle.q = f.q;
  if (c.oracle.q.empty()) c.oracle.q = {5};
  return c;
}

int cmd_count(const Flags& f, std::ostream& out) {
  Config c = load(f);
  CountReport r = count_polynomial(c.spec);
  if (f.json != "-") {
    out << count_text(c, r);
    if (f.table) out << "\n" << table_text(r.table);
  }
  emit_json(f, count_json(c, r), out);
  return r.dimension_ok && r.topology.components_ok && r.topology.euler_ok && r.topology.ord_ok ? 0 : 4;
}

int cmd_table(const Flags& f, std::ostream& out) {
  Config c = load(f);
  auto rows = diagnostic_table(c.spec);
  if (f.json != "-") out << table_text(rows);
  ordered_json j = header_json(c, "table");
  j["table"] = table_json(rows);
  j["reduced"] = reduced_sum(c.spec).to_string();
  emit_json(f, j, out);
  return 0;
}

int cmd_poset(const Flags& f, std::ostream& out) {
  Config c = load(f);
  auto P = enumerate_closed_subsystems(c.spec.rd, c.spec.poset);
  if (f.json != "-") out << poset_text(P);
  emit_json(f, poset_json(c, P), out);
  return 0;
}

int cmd_check(const Flags& f, std::ostream& out) {
  Config c = load(f);
  Hypotheses h = validate(c.spec);
  const bool nonempty = h.product_in_commutator;
  if (f.json != "-") out << check_text(h, nonempty);
  emit_json(f, check_json(c, h, nonempty), out);
  return 0;
}

int cmd_oracle(const Flags& f, std::ostream& out) {
  Config c = load(f);
  OracleRun run;
  bool ok = true;
  for (unsigned q : c.oracle.q) {
    OracleOptions o;
    o.q = q;
    o.seed = c.oracle.seed;
    o.budget = c.oracle.budget;
    o.threads = c.spec.threads;
    o.specialization = c.oracle.specialization;
    run.counts.push_back(run_oracle(c.spec, o));
    ok = ok && run.counts.back().match && run.counts.back().class_sizes_ok;

    std::map<std::string, const WitnessResult*> by_name;
    const std::size_t first = run.witnesses.size();
    for (const auto& w : c.oracle.witnesses) {
      WitnessOptions wo;
      wo.q = q;
      wo.seed = c.oracle.seed;
      wo.specialization = c.oracle.specialization;
      run.witnesses.push_back(verify_witness(c.spec, w, wo));
      ok = ok && run.witnesses.back().ok;
    }
    for (std::size_t i = first; i < run.witnesses.size(); ++i) by_name[run.witnesses[i].name] = &run.witnesses[i];
    if (!c.oracle.distinct.empty()) {
      FiniteGroupModel G = FiniteGroupModel::create(group_kind_from_label(c.spec.rd.label()), q);
      for (const auto& [a, b] : c.oracle.distinct) {
        if (!by_name.count(a) || !by_name.count(b))
          throw Error(ErrorKind::Validation, "E_WITNESS", "unknown witness in distinct pair " + a + "/" + b);
        OracleRun::Pair p{a, b, q, simultaneously_conjugate(G, by_name[a]->values, by_name[b]->values).has_value()};
        ok = ok && !p.conjugate;
        run.pairs.push_back(p);
      }
    }
  }
  if (f.json != "-") out << oracle_text(run);
  emit_json(f, oracle_json(c, run), out);
  return ok ? 0 : 4;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"charvar: point counts of character varieties with regular monodromy"};
  app.require_subcommand(1);
  Flags f;
  auto add = [&](CLI::App* sub, bool oracle) {
    sub->add_option("--config", f.config, "JSON configuration")->required()->check(CLI::ExistingFile);
    sub->add_option("--json", f.json, "write the JSON report to PATH ('-' for stdout)");
    sub->add_option("--threads", f.threads, "worker threads");
    if (oracle) {
      sub->add_option("--q", f.q, "field size(s)");
      sub->add_option("--budget", f.budget, "brute-force step budget");
      sub->add_option("--seed", f.seed, "specialization seed");
    }
  };
  auto* count = app.add_subcommand("count", "compute the counting polynomial");
  add(count, false);
  count->add_flag("--table", f.table, "also print the per-subsystem table");
  auto* poset = app.add_subcommand("poset", "closed subsystems and Moebius function");
  add(poset, false);
  auto* table = app.add_subcommand("table", "per-subsystem diagnostic table");
  add(table, false);
  auto* oracle = app.add_subcommand("oracle", "brute-force cross-check over F_q");
  add(oracle, true);
  auto* check = app.add_subcommand("check", "validate hypotheses only");
  add(check, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "charvar: error[E_USAGE] usage: " << e.what() << "; hypothesis: none\n";
    return 1;
  }

  try {
    if (*count) return cmd_count(f, out);
    if (*poset) return cmd_poset(f, out);
    if (*table) return cmd_table(f, out);
    if (*oracle) return cmd_oracle(f, out);
    if (*check) return cmd_check(f, out);
  } catch (const Error& e) {
    const std::string hyp = e.hypothesis().empty() ? "none" : e.hypothesis();
    err << "charvar: error[" << e.code() << "] " << to_string(e.kind()) << ": " << e.what() << "; hypothesis: " << hyp
        << "\n";
    try {
      emit_json(f, error_json(e.code(), to_string(e.kind()), e.what(), hyp), out);
    } catch (const Error&) {
    }
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << "charvar: error[E_INTERNAL] " << e.what() << "; hypothesis: none\n";
    return 4;
  }
  return 1;
}

}  // namespace charvar::cli
