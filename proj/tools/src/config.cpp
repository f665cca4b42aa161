#include "config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "charvar/error.hpp"

namespace charvar::cli {

using nlohmann::json;

namespace {

[[noreturn]] void field_error(const std::string& path, const std::string& field, const std::string& what) {
  throw Error(ErrorKind::Parse, "E_CONFIG", path + ": field '" + field + "': " + what);
}

void line_col(const std::string& text, std::size_t byte, std::size_t& line, std::size_t& col) {
  line = 1;
  col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
}

long long get_int(const json& j, const std::string& path, const std::string& field) {
  if (!j.is_number_integer()) field_error(path, field, "expected an integer");
  return j.get<long long>();
}

std::string get_string(const json& j, const std::string& path, const std::string& field) {
  if (!j.is_string()) field_error(path, field, "expected a string");
  return j.get<std::string>();
}

std::vector<Vec> get_matrix(const json& j, const std::string& path, const std::string& field) {
  if (!j.is_array()) field_error(path, field, "expected an array of integer rows");
  std::vector<Vec> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_array()) field_error(path, field + "[" + std::to_string(i) + "]", "expected an array");
    Vec v;
    for (std::size_t k = 0; k < j[i].size(); ++k)
      v.push_back(get_int(j[i][k], path, field + "[" + std::to_string(i) + "][" + std::to_string(k) + "]"));
    out.push_back(std::move(v));
  }
  return out;
}

RootDatum parse_group(const json& j, const std::string& path, std::string& label) {
  if (j.is_string()) {
    label = j.get<std::string>();
    return build_root_datum(label);
  }
  if (!j.is_object()) field_error(path, "group", "expected a descriptor string or an explicit datum object");
  for (const char* k : {"rank", "roots", "coroots"})
    if (!j.contains(k)) field_error(path, std::string("group.") + k, "missing");
  long long d = get_int(j["rank"], path, "group.rank");
  if (d < 0) field_error(path, "group.rank", "must be nonnegative");
  label = j.contains("label") ? get_string(j["label"], path, "group.label") : std::string("explicit");
  auto roots = get_matrix(j["roots"], path, "group.roots");
  auto coroots = get_matrix(j["coroots"], path, "group.coroots");
  std::optional<std::vector<bool>> positive;
  if (j.contains("positive")) {
    const auto& p = j["positive"];
    if (!p.is_array()) field_error(path, "group.positive", "expected an array of root indices");
    std::vector<bool> flags(roots.size(), false);
    for (std::size_t i = 0; i < p.size(); ++i) {
      long long k = get_int(p[i], path, "group.positive[" + std::to_string(i) + "]");
      if (k < 0 || static_cast<std::size_t>(k) >= roots.size()) field_error(path, "group.positive", "index out of range");
      flags[static_cast<std::size_t>(k)] = true;
    }
    positive = flags;
  }
  RootDatum rd = RootDatum::create(static_cast<std::size_t>(d), roots, coroots, label, positive);
  if (j.contains("diagonal")) rd.set_diagonal_map([&] {
      auto rows = get_matrix(j["diagonal"], path, "group.diagonal");
      SmallMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
      for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < rows[r].size(); ++c) m(r, c) = rows[r][c];
      return m;
    }());
  return rd;
}

std::map<std::string, long long> parse_values(const json& j, const std::string& path, const std::string& field) {
  if (!j.is_object()) field_error(path, field, "expected an object symbol -> integer");
  std::map<std::string, long long> out;
  for (auto it = j.begin(); it != j.end(); ++it) out[it.key()] = get_int(it.value(), path, field + "." + it.key());
  return out;
}

WitnessSpec parse_witness(const json& j, const std::string& path, const std::string& field) {
  if (!j.is_object()) field_error(path, field, "expected an object");
  WitnessSpec w;
  w.name = j.contains("name") ? get_string(j["name"], path, field + ".name") : field;
  if (!j.contains("matrices") || !j["matrices"].is_array()) field_error(path, field + ".matrices", "expected an array");
  const auto& ms = j["matrices"];
  for (std::size_t i = 0; i < ms.size(); ++i) {
    const std::string f = field + ".matrices[" + std::to_string(i) + "]";
    if (!ms[i].is_array()) field_error(path, f, "expected rows");
    std::vector<std::vector<std::string>> m;
    for (std::size_t r = 0; r < ms[i].size(); ++r) {
      if (!ms[i][r].is_array()) field_error(path, f, "expected rows");
      std::vector<std::string> row;
      for (const auto& e : ms[i][r]) {
        if (e.is_string())
          row.push_back(e.get<std::string>());
        else if (e.is_number_integer())
          row.push_back(std::to_string(e.get<long long>()));
        else
          field_error(path, f, "entries must be strings or integers");
      }
      m.push_back(std::move(row));
    }
    w.matrices.push_back(std::move(m));
  }
  return w;
}

}  // namespace

Config parse_config(const std::string& text, const std::string& path) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line, col;
    line_col(text, e.byte ? e.byte - 1 : 0, line, col);
    throw Error(ErrorKind::Parse, "E_JSON",
                path + ":" + std::to_string(line) + ":" + std::to_string(col) + ": malformed JSON");
  }
  if (!j.is_object()) throw Error(ErrorKind::Parse, "E_CONFIG", path + ": top level must be an object");

  static const std::vector<std::string> known = {"schema_version", "group", "g", "n", "m", "eigenvalues", "classes",
                                                 "overrides", "oracle", "poset", "threads", "tuple_budget", "comment"};
  for (auto it = j.begin(); it != j.end(); ++it)
    if (std::find(known.begin(), known.end(), it.key()) == known.end()) field_error(path, it.key(), "unknown field");

  Config c;
  c.path = path;
  if (!j.contains("schema_version")) field_error(path, "schema_version", "missing");
  if (get_int(j["schema_version"], path, "schema_version") != kSchemaVersion)
    field_error(path, "schema_version", "unsupported version (expected " + std::to_string(kSchemaVersion) + ")");
  if (!j.contains("group")) field_error(path, "group", "missing");
  auto& s = c.spec;
  s.rd = parse_group(j["group"], path, c.group);
  for (const char* k : {"g", "n", "m"})
    if (!j.contains(k)) field_error(path, k, "missing");
  s.g = static_cast<int>(get_int(j["g"], path, "g"));
  s.n = static_cast<int>(get_int(j["n"], path, "n"));
  s.m = static_cast<int>(get_int(j["m"], path, "m"));
  if (s.g < 0) field_error(path, "g", "must be nonnegative");
  if (s.n < 0) field_error(path, "n", "must be nonnegative");
  if (s.m < 0 || s.m > s.n) field_error(path, "m", "must lie in [0, n]");

  std::vector<std::string> symbols, relations;
  if (j.contains("eigenvalues")) {
    const auto& e = j["eigenvalues"];
    if (!e.is_object()) field_error(path, "eigenvalues", "expected an object");
    if (e.contains("symbols")) {
      if (!e["symbols"].is_array()) field_error(path, "eigenvalues.symbols", "expected an array");
      for (std::size_t i = 0; i < e["symbols"].size(); ++i)
        symbols.push_back(get_string(e["symbols"][i], path, "eigenvalues.symbols[" + std::to_string(i) + "]"));
    }
    if (e.contains("relations")) {
      if (!e["relations"].is_array()) field_error(path, "eigenvalues.relations", "expected an array");
      for (std::size_t i = 0; i < e["relations"].size(); ++i)
        relations.push_back(get_string(e["relations"][i], path, "eigenvalues.relations[" + std::to_string(i) + "]"));
    }
  }
  try {
    s.eigenvalues = EigenvalueDatum::parse(symbols, relations);
  } catch (const Error& e) {
    throw Error(e.kind(), e.code(), path + ": field 'eigenvalues': " + e.what(), e.hypothesis());
  }

  if (j.contains("classes")) {
    if (!j["classes"].is_array()) field_error(path, "classes", "expected an array of torus elements");
    for (std::size_t i = 0; i < j["classes"].size(); ++i) {
      const std::string f = "classes[" + std::to_string(i) + "]";
      c.class_text.push_back(get_string(j["classes"][i], path, f));
      try {
        s.classes.push_back(parse_torus_element(s.rd, s.eigenvalues, c.class_text.back()));
      } catch (const Error& e) {
        throw Error(e.kind(), e.code(), path + ": field '" + f + "': " + e.what(), e.hypothesis());
      }
    }
    if (s.classes.size() != static_cast<std::size_t>(s.m))
      field_error(path, "classes", "expected m = " + std::to_string(s.m) + " entries");
  }
  if (j.contains("overrides")) {
    const auto& o = j["overrides"];
    if (!o.is_object()) field_error(path, "overrides", "expected an object label -> bool");
    for (auto it = o.begin(); it != o.end(); ++it) {
      if (!it.value().is_boolean()) field_error(path, "overrides." + it.key(), "expected a boolean");
      s.overrides[it.key()] = it.value().get<bool>();
    }
  }
  if (j.contains("poset")) {
    const auto& p = j["poset"];
    if (!p.is_object()) field_error(path, "poset", "expected an object");
    if (p.contains("max_positive"))
      s.poset.max_positive = static_cast<std::size_t>(get_int(p["max_positive"], path, "poset.max_positive"));
    if (p.contains("max_nodes"))
      s.poset.max_nodes = static_cast<std::size_t>(get_int(p["max_nodes"], path, "poset.max_nodes"));
    if (p.contains("weyl_bound"))
      s.poset.weyl_bound = static_cast<std::size_t>(get_int(p["weyl_bound"], path, "poset.weyl_bound"));
  }
  if (j.contains("threads")) s.threads = static_cast<unsigned>(std::max<long long>(1, get_int(j["threads"], path, "threads")));
  if (j.contains("tuple_budget"))
    s.tuple_budget = static_cast<std::size_t>(get_int(j["tuple_budget"], path, "tuple_budget"));

  if (j.contains("oracle")) {
    const auto& o = j["oracle"];
    if (!o.is_object()) field_error(path, "oracle", "expected an object");
    if (o.contains("q")) {
      if (o["q"].is_array()) {
        for (std::size_t i = 0; i < o["q"].size(); ++i)
          c.oracle.q.push_back(static_cast<unsigned>(get_int(o["q"][i], path, "oracle.q[" + std::to_string(i) + "]")));
      } else {
        c.oracle.q.push_back(static_cast<unsigned>(get_int(o["q"], path, "oracle.q")));
      }
    }
    if (o.contains("seed")) c.oracle.seed = static_cast<std::uint64_t>(get_int(o["seed"], path, "oracle.seed"));
    if (o.contains("budget")) {
      if (!o["budget"].is_number()) field_error(path, "oracle.budget", "expected a number");
      c.oracle.budget = o["budget"].get<double>();
    }
    if (o.contains("specialization")) c.oracle.specialization = parse_values(o["specialization"], path, "oracle.specialization");
    if (o.contains("witnesses")) {
      if (!o["witnesses"].is_array()) field_error(path, "oracle.witnesses", "expected an array");
      for (std::size_t i = 0; i < o["witnesses"].size(); ++i)
        c.oracle.witnesses.push_back(parse_witness(o["witnesses"][i], path, "oracle.witnesses[" + std::to_string(i) + "]"));
    }
    if (o.contains("distinct")) {
      const auto& d = o["distinct"];
      if (!d.is_array()) field_error(path, "oracle.distinct", "expected an array of name pairs");
      for (std::size_t i = 0; i < d.size(); ++i) {
        const std::string f = "oracle.distinct[" + std::to_string(i) + "]";
        if (!d[i].is_array() || d[i].size() != 2) field_error(path, f, "expected a pair of witness names");
        c.oracle.distinct.emplace_back(get_string(d[i][0], path, f), get_string(d[i][1], path, f));
      }
    }
  }
  return c;
}

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Usage, "E_IO", "cannot read config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path);
}

}  // namespace charvar::cli
