#include <unordered_map>

#include "charvar/error.hpp"
#include "charvar/rootdata.hpp"

namespace charvar {

namespace {

struct PermHash {
  std::size_t operator()(const std::vector<int>& p) const noexcept {
    std::size_t h = p.size();
    for (int x : p) h = h * 1000003ULL ^ static_cast<std::size_t>(x);
    return h;
  }
};

std::vector<int> compose(const std::vector<int>& s, const std::vector<int>& w) {
  // (s o w)(i) = s(w(i))
  std::vector<int> r(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) r[i] = s[static_cast<std::size_t>(w[i])];
  return r;
}

[[noreturn]] void bound_exceeded(std::size_t seen, std::size_t bound) {
  throw Error(ErrorKind::ResourceLimit, "E_WEYL_BOUND",
              "Weyl group enumeration exceeded bound " + std::to_string(bound) + " after " +
                  std::to_string(seen) + " elements");
}

}  // namespace

WeylGroup enumerate_weyl(const RootDatum& rd, std::size_t bound) {
  WeylGroup w;
  w.generators = rd.simple_indices();
  std::vector<int> id(rd.size());
  for (std::size_t i = 0; i < id.size(); ++i) id[i] = static_cast<int>(i);
  w.permutations.push_back(id);
  w.elements.push_back(SmallMatrix::identity(rd.rank()));
  std::unordered_map<std::vector<int>, std::size_t, PermHash> index{{id, 0}};
  std::vector<SmallMatrix> gens;
  for (int g : w.generators) gens.push_back(rd.reflection_matrix(static_cast<std::size_t>(g)));
  for (std::size_t k = 0; k < w.permutations.size(); ++k)
    for (std::size_t g = 0; g < w.generators.size(); ++g) {
      auto p = compose(rd.reflection(static_cast<std::size_t>(w.generators[g])), w.permutations[k]);
      if (index.count(p)) continue;
      if (w.permutations.size() >= bound) bound_exceeded(w.permutations.size(), bound);
      index.emplace(p, w.permutations.size());
      w.permutations.push_back(std::move(p));
      w.elements.push_back(gens[g] * w.elements[k]);
    }
  return w;
}

bool is_closed_subsystem(const RootDatum& rd, const RootSet& set) {
  for (int a : set.indices()) {
    if (!set.test(static_cast<std::size_t>(rd.negative(static_cast<std::size_t>(a))))) return false;
    for (int b : set.indices()) {
      int s = rd.coroot_sum(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
      if (s >= 0 && !set.test(static_cast<std::size_t>(s))) return false;
    }
  }
  return true;
}

std::vector<int> simple_system(const RootDatum& rd, const RootSet& set) {
  std::vector<int> out;
  const auto members = set.indices();
  for (int e : members) {
    if (!rd.is_positive(static_cast<std::size_t>(e))) continue;
    bool dec = false;
    for (int a : members) {
      if (!rd.is_positive(static_cast<std::size_t>(a)) || a == e) continue;
      // e - a in the set and positive?
      int neg = rd.negative(static_cast<std::size_t>(a));
      int d = rd.coroot_sum(static_cast<std::size_t>(e), static_cast<std::size_t>(neg));
      if (d >= 0 && set.test(static_cast<std::size_t>(d)) && rd.is_positive(static_cast<std::size_t>(d))) {
        dec = true;
        break;
      }
    }
    if (!dec) out.push_back(e);
  }
  return out;
}

Polynomial poincare_polynomial(const RootDatum& rd, const RootSet& subsystem, std::size_t bound) {
  if (!is_closed_subsystem(rd, subsystem))
    throw Error(ErrorKind::Validation, "E_NOT_CLOSED", "Poincare polynomial needs a closed symmetric subsystem");
  const auto simple = simple_system(rd, subsystem);
  std::vector<int> pos;
  for (int i : subsystem.indices())
    if (rd.is_positive(static_cast<std::size_t>(i))) pos.push_back(i);

  std::vector<int> id(rd.size());
  for (std::size_t i = 0; i < id.size(); ++i) id[i] = static_cast<int>(i);
  std::vector<std::vector<int>> elems{id};
  std::unordered_map<std::vector<int>, std::size_t, PermHash> index{{id, 0}};
  for (std::size_t k = 0; k < elems.size(); ++k)
    for (int g : simple) {
      auto p = compose(rd.reflection(static_cast<std::size_t>(g)), elems[k]);
      if (index.count(p)) continue;
      if (elems.size() >= bound) bound_exceeded(elems.size(), bound);
      index.emplace(p, elems.size());
      elems.push_back(std::move(p));
    }
  std::vector<Rational> coeff(pos.size() + 1, Rational(0));
  for (const auto& w : elems) {
    std::size_t len = 0;
    for (int b : pos)
      if (!rd.is_positive(static_cast<std::size_t>(w[static_cast<std::size_t>(b)]))) ++len;
    coeff[len] += 1;
  }
  return Polynomial(std::move(coeff));
}

}  // namespace charvar
