#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>

#include "charvar/error.hpp"
#include "charvar/rootdata.hpp"

namespace charvar {

namespace {

Vec unit(std::size_t d, std::size_t i, long long s = 1) {
  Vec v(d, 0);
  v[i] = s;
  return v;
}

Vec combo(std::size_t d, std::size_t i, long long a, std::size_t j, long long b) {
  Vec v(d, 0);
  v[i] += a;
  v[j] += b;
  return v;
}

SmallMatrix identity_map(std::size_t d) { return SmallMatrix::identity(d); }

// Classical families in the standard e_i coordinates. kind: 'B' odd
// orthogonal, 'C' symplectic, 'D' even orthogonal.
RootDatum classical(char kind, std::size_t n, const std::string& label) {
  std::vector<Vec> roots, coroots;
  std::vector<bool> pos;
  auto push = [&](Vec r, Vec c, bool p) {
    roots.push_back(std::move(r));
    coroots.push_back(std::move(c));
    pos.push_back(p);
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (long long s : {1LL, -1LL}) {
        Vec v = combo(n, i, 1, j, -s);  // e_i - s e_j
        Vec w = v;
        for (auto& x : w) x = -x;
        push(v, v, true);
        push(w, w, false);
      }
  if (kind == 'B' || kind == 'C') {
    for (std::size_t i = 0; i < n; ++i)
      for (long long s : {1LL, -1LL}) {
        Vec shortv = unit(n, i, s), longv = unit(n, i, 2 * s);
        if (kind == 'B') {
          push(shortv, longv, s > 0);
        } else {
          push(longv, shortv, s > 0);
        }
      }
  }
  RootDatum rd = RootDatum::create(n, roots, coroots, label, pos);
  rd.set_diagonal_map(identity_map(n));
  return rd;
}

struct Dynkin {
  std::vector<int> len;  // squared lengths
  std::vector<std::pair<int, int>> edges;
};

Dynkin dynkin(char family, std::size_t r) {
  Dynkin g;
  const int n = static_cast<int>(r);
  g.len.assign(r, 2);
  auto chain = [&](int upto) {
    for (int i = 0; i + 1 < upto; ++i) g.edges.emplace_back(i, i + 1);
  };
  switch (family) {
    case 'A': chain(n); break;
    case 'B':
      chain(n);
      g.len[r - 1] = 1;
      break;
    case 'C':
      chain(n);
      g.len[r - 1] = 4;
      break;
    case 'D':
      chain(n - 1);
      g.edges.emplace_back(n - 3, n - 1);
      break;
    case 'E':
      // Bourbaki: 1-3-4-5-6-7-8 with 2 attached to 4
      g.edges = {{0, 2}, {2, 3}, {3, 4}, {1, 3}};
      for (int i = 4; i + 1 < n; ++i) g.edges.emplace_back(i, i + 1);
      break;
    case 'F':
      chain(4);
      g.len = {4, 4, 2, 2};
      break;
    case 'G':
      chain(2);
      g.len = {2, 6};
      break;
    default: break;
  }
  return g;
}

void check_rank(char family, std::size_t r) {
  bool ok = false;
  switch (family) {
    case 'A': ok = r >= 1; break;
    case 'B': ok = r >= 2; break;
    case 'C': ok = r >= 2; break;
    case 'D': ok = r >= 3; break;
    case 'E': ok = r >= 6 && r <= 8; break;
    case 'F': ok = r == 4; break;
    case 'G': ok = r == 2; break;
    default: break;
  }
  if (!ok)
    throw Error(ErrorKind::Validation, "E_DESCRIPTOR",
                std::string("unsupported Cartan type ") + family + std::to_string(r));
}

}  // namespace

RootDatum cartan_type(char family, std::size_t r, bool simply_connected) {
  check_rank(family, r);
  const Dynkin g = dynkin(family, r);
  // C[i][j] = <a_i, a_j^v> = 2 (a_i, a_j) / (a_j, a_j)
  std::vector<std::vector<long long>> B(r, std::vector<long long>(r, 0));
  for (std::size_t i = 0; i < r; ++i) B[i][i] = g.len[i];
  for (auto [i, j] : g.edges) {
    long long v = -std::max(g.len[static_cast<std::size_t>(i)], g.len[static_cast<std::size_t>(j)]) / 2;
    B[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = v;
    B[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = v;
  }
  auto form = [&](const Vec& a, const Vec& b) {
    long long s = 0;
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) s += a[i] * B[i][j] * b[j];
    return s;
  };

  // Positive roots in simple-root coordinates, grown by height.
  std::vector<Vec> positive;
  std::map<Vec, bool> seen;
  for (std::size_t i = 0; i < r; ++i) {
    positive.push_back(unit(r, i));
    seen[positive.back()] = true;
  }
  for (std::size_t k = 0; k < positive.size(); ++k) {
    for (std::size_t i = 0; i < r; ++i) {
      Vec beta = positive[k];
      // <beta, a_i^v> = 2 (beta, a_i) / (a_i, a_i)
      long long c = 2 * form(beta, unit(r, i)) / g.len[i];
      long long p = 0;
      Vec down = beta;
      for (;;) {
        down[i] -= 1;
        if (!seen.count(down)) break;
        ++p;
      }
      if (p - c > 0) {
        Vec up = beta;
        up[i] += 1;
        if (!seen.count(up)) {
          seen[up] = true;
          positive.push_back(up);
        }
      }
    }
  }

  std::vector<Vec> roots, coroots;
  std::vector<bool> pos;
  for (int sign : {1, -1})
    for (const Vec& c : positive) {
      Vec cc = c;
      for (auto& x : cc) x *= sign;
      const long long lb = form(cc, cc);
      Vec dcoef(r);  // simple coroot coordinates of the coroot
      for (std::size_t j = 0; j < r; ++j) dcoef[j] = cc[j] * g.len[j] / lb;
      Vec rx(r), cx(r);
      for (std::size_t i = 0; i < r; ++i) {
        if (simply_connected) {
          rx[i] = 2 * form(cc, unit(r, i)) / g.len[i];
          cx[i] = dcoef[i];
        } else {
          rx[i] = cc[i];
          long long s = 0;
          for (std::size_t j = 0; j < r; ++j) s += dcoef[j] * 2 * B[i][j] / g.len[j];
          cx[i] = s;
        }
      }
      roots.push_back(rx);
      coroots.push_back(cx);
      pos.push_back(sign > 0);
    }
  std::string label = std::string(1, family) + std::to_string(r) + (simply_connected ? "(sc)" : "(ad)");
  return RootDatum::create(r, roots, coroots, label, pos);
}

RootDatum torus(std::size_t d) {
  RootDatum rd = RootDatum::create(d, {}, {}, "T(" + std::to_string(d) + ")");
  rd.set_diagonal_map(identity_map(d));
  return rd;
}

RootDatum general_linear(std::size_t n) {
  std::vector<Vec> roots;
  std::vector<bool> pos;
  for (int sign : {1, -1})
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        roots.push_back(combo(n, i, sign, j, -sign));
        pos.push_back(sign > 0);
      }
  RootDatum rd = RootDatum::create(n, roots, roots, "GL(" + std::to_string(n) + ")", pos);
  rd.set_diagonal_map(identity_map(n));
  return rd;
}

RootDatum product(const RootDatum& a, const RootDatum& b) {
  const std::size_t d = a.rank() + b.rank();
  std::vector<Vec> roots, coroots;
  std::vector<bool> pos;
  for (std::size_t i = 0; i < a.size(); ++i) {
    Vec r(d, 0), c(d, 0);
    std::copy(a.root(i).begin(), a.root(i).end(), r.begin());
    std::copy(a.coroot(i).begin(), a.coroot(i).end(), c.begin());
    roots.push_back(r);
    coroots.push_back(c);
    pos.push_back(a.is_positive(i));
  }
  for (std::size_t i = 0; i < b.size(); ++i) {
    Vec r(d, 0), c(d, 0);
    std::copy(b.root(i).begin(), b.root(i).end(), r.begin() + static_cast<long>(a.rank()));
    std::copy(b.coroot(i).begin(), b.coroot(i).end(), c.begin() + static_cast<long>(a.rank()));
    roots.push_back(r);
    coroots.push_back(c);
    pos.push_back(b.is_positive(i));
  }
  RootDatum rd = RootDatum::create(d, roots, coroots, a.label() + "x" + b.label(), pos);
  if (a.diagonal_map() && b.diagonal_map()) {
    const auto& ma = *a.diagonal_map();
    const auto& mb = *b.diagonal_map();
    SmallMatrix m(d, ma.cols() + mb.cols());
    for (std::size_t i = 0; i < ma.rows(); ++i)
      for (std::size_t j = 0; j < ma.cols(); ++j) m(i, j) = ma(i, j);
    for (std::size_t i = 0; i < mb.rows(); ++i)
      for (std::size_t j = 0; j < mb.cols(); ++j) m(ma.rows() + i, ma.cols() + j) = mb(i, j);
    rd.set_diagonal_map(std::move(m));
  }
  return rd;
}

namespace {

std::string strip(std::string_view s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  return out;
}

[[noreturn]] void bad_descriptor(const std::string& d, const std::string& why) {
  throw Error(ErrorKind::Validation, "E_DESCRIPTOR", "cannot parse group descriptor '" + d + "': " + why);
}

std::size_t parse_count(const std::string& whole, const std::string& digits) {
  if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    bad_descriptor(whole, "expected a positive integer, got '" + digits + "'");
  std::size_t v = std::stoul(digits);
  if (v == 0) bad_descriptor(whole, "rank must be positive");
  return v;
}

RootDatum build_factor(const std::string& f) {
  const auto open = f.find('(');
  std::string head = f.substr(0, open);
  std::string arg;
  if (open != std::string::npos) {
    if (f.back() != ')') bad_descriptor(f, "missing ')'");
    arg = f.substr(open + 1, f.size() - open - 2);
  }
  std::string upper = head;
  std::transform(upper.begin(), upper.end(), upper.begin(), [](unsigned char c) { return std::toupper(c); });

  if (upper == "GL") return general_linear(parse_count(f, arg));
  if (upper == "T" || upper == "TORUS") return torus(parse_count(f, arg));
  if (upper == "SL" || upper == "PGL") {
    std::size_t n = parse_count(f, arg);
    if (n < 2) bad_descriptor(f, "needs n >= 2");
    const bool sc = upper == "SL";
    RootDatum rd = cartan_type('A', n - 1, sc);
    // diag(a_1..a_n): SL coords are partial sums, PGL coords are a_i / a_{i+1}
    SmallMatrix m(n - 1, n);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (sc) {
        for (std::size_t k = 0; k <= i; ++k) m(i, k) = 1;
      } else {
        m(i, i) = 1;
        m(i, i + 1) = -1;
      }
    }
    RootDatum out = RootDatum::create(rd.rank(), rd.roots(), rd.coroots(), upper + "(" + arg + ")",
                                      [&] {
                                        std::vector<bool> p;
                                        for (std::size_t i = 0; i < rd.size(); ++i) p.push_back(rd.is_positive(i));
                                        return p;
                                      }());
    out.set_diagonal_map(std::move(m));
    return out;
  }
  if (upper == "SP") {
    std::size_t m = parse_count(f, arg);
    if (m % 2 || m < 2) bad_descriptor(f, "Sp needs an even size");
    return classical('C', m / 2, "Sp(" + arg + ")");
  }
  if (upper == "SO") {
    std::size_t m = parse_count(f, arg);
    if (m < 2) bad_descriptor(f, "SO needs size >= 2");
    if (m % 2) return classical('B', m / 2, "SO(" + arg + ")");
    return classical('D', m / 2, "SO(" + arg + ")");
  }
  // Cartan types: "G2", "A3(sc)", "B2(ad)"
  if (head.size() >= 2 && std::string("ABCDEFG").find(upper[0]) != std::string::npos) {
    std::size_t r = parse_count(f, head.substr(1));
    bool sc = true;
    if (!arg.empty()) {
      std::string a = arg;
      std::transform(a.begin(), a.end(), a.begin(), [](unsigned char c) { return std::tolower(c); });
      if (a == "sc") {
        sc = true;
      } else if (a == "ad") {
        sc = false;
      } else {
        bad_descriptor(f, "form must be sc or ad");
      }
    }
    return cartan_type(upper[0], r, sc);
  }
  bad_descriptor(f, "unknown family '" + head + "'");
}

}  // namespace

RootDatum build_root_datum(std::string_view descriptor) {
  const std::string d = strip(descriptor);
  if (d.empty()) bad_descriptor(d, "empty");
  std::vector<std::string> factors;
  std::string cur;
  int depth = 0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    char c = d[i];
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (depth == 0 && (c == 'x' || c == '*')) {
      factors.push_back(cur);
      cur.clear();
      continue;
    }
    cur.push_back(c);
  }
  factors.push_back(cur);
  std::optional<RootDatum> acc;
  for (const auto& f : factors) {
    if (f.empty()) bad_descriptor(d, "empty factor");
    RootDatum r = build_factor(f);
    acc = acc ? product(*acc, r) : r;
  }
  if (factors.size() > 1) {
    RootDatum out = *acc;
    return out;
  }
  return *acc;
}

}  // namespace charvar
