#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

#include "charvar/error.hpp"
#include "charvar/rootdata.hpp"

namespace charvar {

namespace {

// <v_i, dual_j> on the chosen side.
long long cartan(const RootDatum& rd, Side side, std::size_t i, std::size_t j) {
  return side == Side::Roots ? pairing(rd.root(i), rd.coroot(j)) : pairing(rd.root(j), rd.coroot(i));
}

int sum_index(const RootDatum& rd, Side side, std::size_t i, std::size_t j) {
  return side == Side::Roots ? rd.root_sum(i, j) : rd.coroot_sum(i, j);
}

}  // namespace

std::string Component::name() const {
  return std::string(1, family) + std::to_string(rank);
}

std::vector<Component> decompose(const RootDatum& rd, const RootSet& set, Side side) {
  const std::vector<int> members = set.indices();
  std::map<int, int> parent;
  for (int m : members) parent[m] = m;
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (int a : members)
    for (int b : members)
      if (cartan(rd, side, static_cast<std::size_t>(a), static_cast<std::size_t>(b)) != 0)
        parent[find(a)] = find(b);

  std::map<int, std::vector<int>> groups;
  for (int m : members) groups[find(m)].push_back(m);

  std::vector<Component> out;
  for (auto& [root, elems] : groups) {
    Component c;
    c.members = elems;
    RootSet mine(rd.size());
    for (int e : elems) mine.set(static_cast<std::size_t>(e));
    // rank = number of indecomposable positive members
    for (int e : elems) {
      if (!rd.is_positive(static_cast<std::size_t>(e))) continue;
      bool dec = false;
      for (int a : elems)
        for (int b : elems)
          if (rd.is_positive(static_cast<std::size_t>(a)) && rd.is_positive(static_cast<std::size_t>(b)) &&
              sum_index(rd, side, static_cast<std::size_t>(a), static_cast<std::size_t>(b)) == e)
            dec = true;
      if (!dec) ++c.rank;
    }
    // relative squared lengths via |a|^2/|b|^2 = <a,b^v>/<b,a^v>
    std::map<int, Rational> len;
    len[elems.front()] = 1;
    std::vector<int> stack{elems.front()};
    while (!stack.empty()) {
      int a = stack.back();
      stack.pop_back();
      for (int b : elems) {
        if (len.count(b)) continue;
        long long ab = cartan(rd, side, static_cast<std::size_t>(a), static_cast<std::size_t>(b));
        long long ba = cartan(rd, side, static_cast<std::size_t>(b), static_cast<std::size_t>(a));
        if (ab == 0) continue;
        Rational ratio(static_cast<long>(ba), static_cast<long>(ab));
        ratio.canonicalize();
        len[b] = len[a] * ratio;  // |b|^2 = |a|^2 * <b,a^v>/<a,b^v>
        stack.push_back(b);
      }
    }
    Rational longest = 0;
    for (auto& [k, v] : len) longest = std::max(longest, v);
    std::size_t n_short = 0;
    bool two_lengths = false;
    for (auto& [k, v] : len) {
      if (v != longest) {
        ++n_short;
        two_lengths = true;
      }
    }
    if (two_lengths)
      for (auto& [k, v] : len)
        if (v == longest) c.long_members.push_back(k);

    const std::size_t r = c.rank, N = elems.size();
    if (!two_lengths) {
      if (N == r * (r + 1)) {
        c.family = 'A';
      } else if (r >= 4 && N == 2 * r * (r - 1)) {
        c.family = 'D';
      } else if ((r == 6 && N == 72) || (r == 7 && N == 126) || (r == 8 && N == 240)) {
        c.family = 'E';
      }
    } else {
      if (r == 2 && N == 12) {
        c.family = 'G';
      } else if (r == 4 && N == 48) {
        c.family = 'F';
      } else if (N == 2 * r * r) {
        if (r == 2) {
          c.family = 'C';
        } else if (n_short == 2 * r) {
          c.family = 'B';
        } else if (n_short == 2 * r * (r - 1)) {
          c.family = 'C';
        }
      }
    }
    if (c.family == '?')
      throw Error(ErrorKind::InternalConsistency, "E_CLASSIFY", "unrecognized irreducible component");
    out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end(), [](const Component& a, const Component& b) {
    if (a.rank != b.rank) return a.rank > b.rank;
    if (a.family != b.family) return a.family < b.family;
    return a.members < b.members;
  });
  return out;
}

std::string type_name(const std::vector<Component>& components) {
  if (components.empty()) return "empty";
  std::string s;
  for (const auto& c : components) {
    if (!s.empty()) s += "x";
    s += c.name();
  }
  return s;
}

Integer weyl_order_from_type(const std::vector<Component>& components) {
  Integer total = 1;
  for (const auto& c : components) {
    Integer fact = 1;
    for (std::size_t i = 2; i <= c.rank; ++i) fact *= static_cast<unsigned long>(i);
    Integer o;
    switch (c.family) {
      case 'A': o = fact * static_cast<unsigned long>(c.rank + 1); break;
      case 'B':
      case 'C': o = fact * (Integer(1) << static_cast<mp_bitcnt_t>(c.rank)); break;
      case 'D': o = fact * (Integer(1) << static_cast<mp_bitcnt_t>(c.rank - 1)); break;
      case 'G': o = 12; break;
      case 'F': o = 1152; break;
      case 'E': o = c.rank == 6 ? Integer(51840) : c.rank == 7 ? Integer(2903040) : Integer(696729600); break;
      default: o = 0;
    }
    total *= o;
  }
  return total;
}

}  // namespace charvar
