#include "charvar/subsystems.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>

#include "charvar/error.hpp"

namespace charvar {

RootSet closure(const RootDatum& rd, const RootSet& seed) {
  RootSet s = seed;
  std::vector<int> work = seed.indices();
  for (int i : seed.indices()) {
    auto n = static_cast<std::size_t>(rd.negative(static_cast<std::size_t>(i)));
    if (!s.test(n)) {
      s.set(n);
      work.push_back(static_cast<int>(n));
    }
  }
  std::vector<int> members = s.indices();
  while (!work.empty()) {
    int a = work.back();
    work.pop_back();
    for (std::size_t k = 0; k < members.size(); ++k) {
      int c = rd.coroot_sum(static_cast<std::size_t>(a), static_cast<std::size_t>(members[k]));
      if (c < 0 || s.test(static_cast<std::size_t>(c))) continue;
      for (int x : {c, rd.negative(static_cast<std::size_t>(c))}) {
        if (s.test(static_cast<std::size_t>(x))) continue;
        s.set(static_cast<std::size_t>(x));
        members.push_back(x);
        work.push_back(x);
      }
    }
  }
  return s;
}

std::vector<std::size_t> SubsystemPoset::above(std::size_t i) const {
  std::vector<std::size_t> out;
  for (std::size_t j = i; j < nodes_.size(); ++j)
    if (leq(i, j)) out.push_back(j);
  return out;
}

std::optional<std::size_t> SubsystemPoset::find(const RootSet& s) const {
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    if (nodes_[i].roots == s) return i;
  return std::nullopt;
}

std::optional<std::size_t> SubsystemPoset::orbit_by_label(const std::string& label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == label) return i;
  return std::nullopt;
}

namespace {

std::vector<Word> coroot_vectors(const RootDatum& rd, const RootSet& s) {
  std::vector<Word> v;
  for (int i : s.indices()) v.push_back(rd.coroot(static_cast<std::size_t>(i)));
  return v;
}

}  // namespace

SubsystemPoset enumerate_closed_subsystems(const RootDatum& rd, const PosetOptions& opts) {
  if (rd.positive_count() > opts.max_positive)
    throw Error(ErrorKind::ResourceLimit, "E_POSET_BOUND",
                "subsystem enumeration limited to " + std::to_string(opts.max_positive) +
                    " positive coroots, datum has " + std::to_string(rd.positive_count()));
  // BFS over closed sets: every closed set is reached by adjoining its
  // positive coroots one at a time and re-closing.
  std::vector<RootSet> found{rd.none()};
  std::unordered_map<RootSet, std::size_t, RootSetHash> seen{{rd.none(), 0}};
  for (std::size_t k = 0; k < found.size(); ++k) {
    for (int p : rd.positive_indices()) {
      if (found[k].test(static_cast<std::size_t>(p))) continue;
      RootSet seed = found[k];
      seed.set(static_cast<std::size_t>(p));
      RootSet c = closure(rd, seed);
      if (seen.count(c)) continue;
      if (found.size() >= opts.max_nodes)
        throw Error(ErrorKind::ResourceLimit, "E_POSET_BOUND",
                    "more than " + std::to_string(opts.max_nodes) + " closed subsystems");
      seen.emplace(c, found.size());
      found.push_back(std::move(c));
    }
  }
  std::sort(found.begin(), found.end(), [](const RootSet& a, const RootSet& b) {
    auto ca = a.count(), cb = b.count();
    if (ca != cb) return ca < cb;
    return a.indices() < b.indices();
  });

  SubsystemPoset P;
  const std::size_t n = found.size();
  const std::size_t words = (n + 63) / 64;
  P.up_.assign(n, std::vector<std::uint64_t>(words, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      if (found[i].subset_of(found[j])) P.up_[i][j >> 6] |= std::uint64_t{1} << (j & 63);

  // ambient long roots, for length profiles
  RootSet ambient_long(rd.size());
  for (const auto& comp : decompose(rd, rd.all(), Side::Coroots))
    for (int l : comp.long_members) ambient_long.set(static_cast<std::size_t>(l));

  P.nodes_.reserve(n);
  for (auto& s : found) {
    ClosedSubsystem node;
    node.roots = s;
    node.simple = simple_system(rd, s);
    node.quotient = lattice_quotient(rd.rank(), coroot_vectors(rd, s));
    node.poincare = poincare_polynomial(rd, s, opts.weyl_bound);
    node.weyl_order = node.poincare.evaluate(Rational(1)).get_num();
    node.type = type_name(decompose(rd, s, Side::Coroots));
    for (int i : s.indices())
      if (ambient_long.test(static_cast<std::size_t>(i))) ++node.long_count;
    P.nodes_.push_back(std::move(node));
  }

  // Moebius: mu(x,x)=1, mu(x,y) = -sum_{x<=z<y} mu(x,z), y in size order.
  P.mu_.assign(n * n, 0);
  for (std::size_t x = 0; x < n; ++x) {
    P.mu_[x * n + x] = 1;
    std::vector<std::size_t> ups;
    for (std::size_t y = x + 1; y < n; ++y)
      if (P.leq(x, y)) ups.push_back(y);
    for (std::size_t y : ups) {
      long long s = P.mu_[x * n + x];
      for (std::size_t z : ups) {
        if (z >= y) break;
        if (P.leq(z, y)) s += P.mu_[x * n + z];
      }
      P.mu_[x * n + y] = -s;
    }
  }

  // W-orbits via the simple reflections.
  std::unordered_map<RootSet, std::size_t, RootSetHash> where;
  for (std::size_t i = 0; i < n; ++i) where.emplace(P.nodes_[i].roots, i);
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> root_of = [&](std::size_t x) {
    return parent[x] == x ? x : parent[x] = root_of(parent[x]);
  };
  for (std::size_t i = 0; i < n; ++i)
    for (int g : rd.simple_indices()) {
      auto it = where.find(P.nodes_[i].roots.permuted(rd.reflection(static_cast<std::size_t>(g))));
      if (it == where.end())
        throw Error(ErrorKind::InternalConsistency, "E_POSET", "closed subsystems not stable under W");
      parent[root_of(i)] = root_of(it->second);
    }
  std::map<std::size_t, std::size_t> orbit_of_root;
  // orbits listed from the top down, like the tables
  for (std::size_t i = n; i-- > 0;) {
    std::size_t r = root_of(i);
    auto [it, fresh] = orbit_of_root.emplace(r, P.orbits_.size());
    if (fresh) P.orbits_.emplace_back();
    P.orbits_[it->second].push_back(i);
    P.nodes_[i].orbit = it->second;
  }
  for (auto& o : P.orbits_) std::sort(o.begin(), o.end());

  // Labels: type, then length profile, then quotient, then a counter.
  const std::size_t k = P.orbits_.size();
  std::vector<std::string> base(k), with_len(k), with_quot(k);
  for (std::size_t o = 0; o < k; ++o) {
    const auto& rep = P.nodes_[P.orbits_[o].front()];
    base[o] = rep.type;
    const std::size_t total = rep.roots.count();
    std::string prof;
    if (rep.long_count == total && total > 0) {
      prof = "long";
    } else if (rep.long_count == 0 && total > 0) {
      prof = "short";
    } else {
      prof = std::to_string(rep.long_count) + "long";
    }
    with_len[o] = ambient_long.empty() ? base[o] : base[o] + "[" + prof + "]";
    with_quot[o] = with_len[o] + "{" + rep.quotient.invariants.to_string() + "}";
  }
  auto collides = [&](const std::vector<std::string>& names, std::size_t o) {
    for (std::size_t p = 0; p < k; ++p)
      if (p != o && names[p] == names[o]) return true;
    return false;
  };
  P.labels_.resize(k);
  std::map<std::string, int> counter;
  for (std::size_t o = 0; o < k; ++o) {
    if (!collides(base, o)) {
      P.labels_[o] = base[o];
    } else if (!collides(with_len, o)) {
      P.labels_[o] = with_len[o];
    } else if (!collides(with_quot, o)) {
      P.labels_[o] = with_quot[o];
    } else {
      P.labels_[o] = with_quot[o] + "#" + std::to_string(++counter[with_quot[o]]);
    }
  }
  return P;
}

Integer modulus(const RootDatum& rd) {
  PosetOptions opts;
  opts.max_positive = std::max<std::size_t>(opts.max_positive, rd.positive_count());
  SubsystemPoset P = enumerate_closed_subsystems(rd.dual(), opts);
  Integer l = 1;
  for (const auto& node : P.nodes()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), node.quotient.invariants.exponent().get_mpz_t());
  return l;
}

bool partition_mobius_check(int n) {
  if (n < 1 || n > 6) return false;
  const RootDatum rd = general_linear(static_cast<std::size_t>(n));
  const SubsystemPoset P = enumerate_closed_subsystems(rd);

  auto partition_of = [&](const RootSet& s) {
    std::vector<int> block(static_cast<std::size_t>(n));
    std::iota(block.begin(), block.end(), 0);
    std::function<int(int)> f = [&](int x) { return block[static_cast<std::size_t>(x)] == x ? x : block[static_cast<std::size_t>(x)] = f(block[static_cast<std::size_t>(x)]); };
    for (int i : s.indices()) {
      const Vec& v = rd.coroot(static_cast<std::size_t>(i));
      int a = -1, b = -1;
      for (int k = 0; k < n; ++k) {
        if (v[static_cast<std::size_t>(k)] == 1) a = k;
        if (v[static_cast<std::size_t>(k)] == -1) b = k;
      }
      block[static_cast<std::size_t>(f(a))] = f(b);
    }
    std::vector<int> canon(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) canon[static_cast<std::size_t>(k)] = f(k);
    // relabel blocks by first occurrence
    std::map<int, int> rl;
    for (auto& c : canon) {
      auto it = rl.emplace(c, static_cast<int>(rl.size())).first;
      c = it->second;
    }
    return canon;
  };

  // Bell numbers
  std::vector<Integer> bell{1};
  {
    std::vector<Integer> row{1};
    for (int i = 1; i <= n; ++i) {
      std::vector<Integer> next{row.back()};
      for (auto& x : row) next.push_back(next.back() + x);
      row = next;
      bell.push_back(row.front());
    }
  }
  if (Integer(static_cast<unsigned long>(P.size())) != bell[static_cast<std::size_t>(n)]) return false;

  std::vector<std::vector<int>> parts;
  for (const auto& node : P.nodes()) parts.push_back(partition_of(node.roots));
  {
    auto sorted = parts;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  }
  // each node must be exactly the roots e_i - e_j with i ~ j
  for (std::size_t x = 0; x < P.size(); ++x) {
    std::size_t expect = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j && parts[x][static_cast<std::size_t>(i)] == parts[x][static_cast<std::size_t>(j)]) ++expect;
    if (expect != P.node(x).roots.count()) return false;
  }
  auto refines = [&](const std::vector<int>& a, const std::vector<int>& b) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (a[static_cast<std::size_t>(i)] == a[static_cast<std::size_t>(j)] &&
            b[static_cast<std::size_t>(i)] != b[static_cast<std::size_t>(j)])
          return false;
    return true;
  };
  for (std::size_t x = 0; x < P.size(); ++x)
    for (std::size_t y = 0; y < P.size(); ++y) {
      const bool comparable = refines(parts[x], parts[y]);
      if (comparable != P.leq(x, y)) return false;
      if (!comparable) continue;
      // t blocks of x, s blocks of y, t_i = blocks of x inside block i of y
      std::map<int, std::set<int>> inside;
      for (int k = 0; k < n; ++k)
        inside[parts[y][static_cast<std::size_t>(k)]].insert(parts[x][static_cast<std::size_t>(k)]);
      long long t = 0, s = static_cast<long long>(inside.size()), prod = 1;
      for (auto& [blk, sub] : inside) {
        t += static_cast<long long>(sub.size());
        for (long long f = 2; f < static_cast<long long>(sub.size()); ++f) prod *= f;
      }
      long long expected = ((t - s) % 2 ? -1 : 1) * prod;
      if (P.mobius(x, y) != expected) return false;
    }
  return true;
}

}  // namespace charvar
